#include "uniclass/matcore.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace uniclass {

CMatrix identity(int d) { return CMatrix::Identity(d, d); }

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("max_abs_diff: shape mismatch");
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

double max_abs(const CMatrix& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().maxCoeff();
}

void check_bipartite(const BipartiteOperator& x) {
    if (x.shape.n < 1 || x.shape.k < 1)
        throw DimensionError("bipartite shape must have n,k >= 1");
    if (x.mat.rows() != x.shape.dim() || x.mat.cols() != x.shape.dim())
        throw DimensionError("bipartite operator is not nk x nk");
}

CMatrix partial_trace_B(const BipartiteOperator& x) {
    check_bipartite(x);
    const int n = x.shape.n, k = x.shape.k;
    CMatrix out = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int s = 0; s < k; ++s)
                out(i, j) += x.mat(i * k + s, j * k + s);
    return out;
}

CMatrix partial_trace_A(const BipartiteOperator& x) {
    check_bipartite(x);
    const int n = x.shape.n, k = x.shape.k;
    CMatrix out = CMatrix::Zero(k, k);
    for (int s = 0; s < k; ++s)
        for (int t = 0; t < k; ++t)
            for (int i = 0; i < n; ++i)
                out(s, t) += x.mat(i * k + s, i * k + t);
    return out;
}

BipartiteOperator partial_transpose_B(const BipartiteOperator& x) {
    check_bipartite(x);
    const int n = x.shape.n, k = x.shape.k;
    BipartiteOperator out{x.shape, CMatrix(n * k, n * k)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.mat.block(i * k, j * k, k, k) =
                x.mat.block(i * k, j * k, k, k).transpose();
    return out;
}

CMatrix flip(int n) {
    if (n < 1) throw DimensionError("flip: n >= 1 required");
    CMatrix f = CMatrix::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int s = 0; s < n; ++s)
            f(i * n + s, s * n + i) = 1.0;
    return f;
}

CMatrix swap_op(int n, int k) {
    if (n < 1 || k < 1) throw DimensionError("swap_op: n,k >= 1 required");
    CMatrix s = CMatrix::Zero(n * k, n * k);
    // row index (t,i) over C^k (x) C^n, column index (j,u) over C^n (x) C^k
    for (int j = 0; j < n; ++j)
        for (int u = 0; u < k; ++u)
            s(u * n + j, j * k + u) = 1.0;
    return s;
}

BipartiteOperator swap_factors(const BipartiteOperator& x) {
    check_bipartite(x);
    const CMatrix s = swap_op(x.shape.n, x.shape.k);
    return {{x.shape.k, x.shape.n}, s * x.mat * s.adjoint()};
}

bool is_unitary(const CMatrix& x, const Tolerances& tol) {
    if (x.rows() != x.cols()) throw DimensionError("is_unitary: square matrix required");
    const CMatrix id = identity(static_cast<int>(x.rows()));
    return max_abs_diff(x * x.adjoint(), id) <= tol.eq_tol &&
           max_abs_diff(x.adjoint() * x, id) <= tol.eq_tol;
}

bool is_psd(const CMatrix& x, const Tolerances& tol) {
    if (x.rows() != x.cols()) throw DimensionError("is_psd: square matrix required");
    if (max_abs_diff(x, x.adjoint()) > tol.eq_tol) return false;
    Eigen::SelfAdjointEigenSolver<CMatrix> es((x + x.adjoint()) / 2.0);
    return es.eigenvalues().minCoeff() >= -tol.eq_tol;
}

namespace {

// Single-linkage clustering of complex values with threshold spec_tol.
std::vector<std::vector<int>> cluster_values(const std::vector<Complex>& vals, double thresh) {
    const int m = static_cast<int>(vals.size());
    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (std::abs(vals[i] - vals[j]) <= thresh) parent[find(i)] = find(j);
    std::vector<std::vector<int>> groups;
    std::vector<int> root_to_group(m, -1);
    for (int i = 0; i < m; ++i) {
        int r = find(i);
        if (root_to_group[r] < 0) {
            root_to_group[r] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[root_to_group[r]].push_back(i);
    }
    return groups;
}

}  // namespace

std::vector<EigenCluster> spectral_decomp(const CMatrix& x, const Tolerances& tol) {
    if (x.rows() != x.cols()) throw DimensionError("spectral_decomp: square matrix required");
    const int d = static_cast<int>(x.rows());
    const double scale = std::max(1.0, max_abs(x));
    if (max_abs_diff(x * x.adjoint(), x.adjoint() * x) > tol.eq_tol * scale * scale)
        throw NotNormalError("spectral_decomp: input is not normal");

    CMatrix vectors;
    std::vector<Complex> eigvals(d);
    if (max_abs_diff(x, x.adjoint()) <= tol.eq_tol * scale) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es((x + x.adjoint()) / 2.0);
        vectors = es.eigenvectors();
        for (int i = 0; i < d; ++i) eigvals[i] = es.eigenvalues()(i);
    } else {
        // A normal matrix has a diagonal Schur form; the Schur vectors are
        // then a full orthonormal eigenbasis.
        Eigen::ComplexSchur<CMatrix> schur(x);
        vectors = schur.matrixU();
        for (int i = 0; i < d; ++i) eigvals[i] = schur.matrixT()(i, i);
    }

    auto groups = cluster_values(eigvals, tol.spec_tol);
    std::vector<EigenCluster> out;
    out.reserve(groups.size());
    for (const auto& g : groups) {
        Complex mean = 0.0;
        CMatrix proj = CMatrix::Zero(d, d);
        for (int idx : g) {
            mean += eigvals[idx];
            proj += vectors.col(idx) * vectors.col(idx).adjoint();
        }
        mean /= static_cast<double>(g.size());
        out.push_back({mean, proj});
    }
    std::sort(out.begin(), out.end(), [](const EigenCluster& a, const EigenCluster& b) {
        if (a.eigenvalue.real() != b.eigenvalue.real())
            return a.eigenvalue.real() < b.eigenvalue.real();
        return a.eigenvalue.imag() < b.eigenvalue.imag();
    });
    return out;
}

Eigen::VectorXd singular_values(const CMatrix& x) {
    Eigen::JacobiSVD<CMatrix> svd(x);
    return svd.singularValues();
}

int numeric_rank(const CMatrix& x, const Tolerances& tol) {
    if (x.size() == 0) return 0;
    Eigen::VectorXd sv = singular_values(x);
    const double smax = sv.size() ? sv(0) : 0.0;
    if (smax == 0.0) return 0;
    const double cutoff = tol.rank_tol_factor *
                          static_cast<double>(std::max(x.rows(), x.cols())) * smax *
                          std::numeric_limits<double>::epsilon();
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++r;
    return r;
}

int numeric_rank_real(const Eigen::MatrixXd& x, const Tolerances& tol) {
    return numeric_rank(x.cast<Complex>(), tol);
}

CMatrix realign(const BipartiteOperator& x) {
    check_bipartite(x);
    const int n = x.shape.n, k = x.shape.k;
    CMatrix r(n * n, k * k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int s = 0; s < k; ++s)
                for (int t = 0; t < k; ++t)
                    r(i * n + j, s * k + t) = x.mat(i * k + s, j * k + t);
    return r;
}

std::vector<SchmidtTerm> operator_schmidt(const BipartiteOperator& x) {
    const int n = x.shape.n, k = x.shape.k;
    const CMatrix r = realign(x);
    Eigen::JacobiSVD<CMatrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    std::vector<SchmidtTerm> out;
    for (Eigen::Index m = 0; m < sv.size(); ++m) {
        CMatrix a(n, n), b(k, k);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = svd.matrixU()(i * n + j, m);
        for (int s = 0; s < k; ++s)
            for (int t = 0; t < k; ++t) b(s, t) = std::conj(svd.matrixV()(s * k + t, m));
        out.push_back({sv(m), std::move(a), std::move(b)});
    }
    return out;
}

}  // namespace uniclass
