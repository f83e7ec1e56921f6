#include "uniclass/channels.hpp"

#include <cmath>

namespace uniclass {

DensityMatrix make_density(const CMatrix& mat, const Tolerances& tol) {
    if (mat.rows() != mat.cols()) throw DimensionError("density matrix must be square");
    if (!is_psd(mat, tol)) throw std::invalid_argument("density matrix must be PSD Hermitian");
    if (std::abs(mat.trace() - Complex(1.0)) > tol.eq_tol)
        throw std::invalid_argument("density matrix must have unit trace");
    return {static_cast<int>(mat.rows()), mat};
}

StinespringChannel make_channel(const BipartiteOperator& u, const DensityMatrix& beta,
                                const Tolerances& tol) {
    check_bipartite(u);
    if (!is_unitary(u.mat, tol))
        throw std::invalid_argument("Stinespring interaction must be unitary");
    if (beta.dim != u.shape.k)
        throw DimensionError("environment state dimension must equal k");
    return {u, beta};
}

CMatrix apply(const StinespringChannel& ch, const CMatrix& x) {
    const int n = ch.u.shape.n;
    if (x.rows() != n || x.cols() != n)
        throw DimensionError("apply: input must be n x n");
    const CMatrix inner = ch.u.mat * tensor(x, ch.beta.mat) * ch.u.mat.adjoint();
    return partial_trace_B({ch.u.shape, inner});
}

ChoiMatrix choi(const StinespringChannel& ch) {
    const int n = ch.u.shape.n;
    CMatrix c = CMatrix::Zero(n * n, n * n);
    CMatrix eij = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            eij(i, j) = 1.0;
            c.block(i * n, j * n, n, n) = uniclass::apply(ch, eij);
            eij(i, j) = 0.0;
        }
    return {n, c};
}

KrausFamily kraus_from_env_vector(const BipartiteOperator& u, const CVector& f,
                                  const CMatrix& basis, const Tolerances& tol) {
    check_bipartite(u);
    const int n = u.shape.n, k = u.shape.k;
    if (f.size() != k) throw DimensionError("env vector must live in C^k");
    if (std::abs(f.norm() - 1.0) > tol.eq_tol)
        throw std::invalid_argument("env vector must be a unit vector");
    if (basis.rows() != k || basis.cols() != k || !is_unitary(basis, tol))
        throw std::invalid_argument("basis columns must be orthonormal in C^k");

    // E_i[a][b] = sum_{s,t} conj(basis(s,i)) U[(a,s),(b,t)] f(t)
    KrausFamily fam;
    fam.ops.reserve(k);
    for (int i = 0; i < k; ++i) {
        CMatrix e = CMatrix::Zero(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int s = 0; s < k; ++s)
                    for (int t = 0; t < k; ++t)
                        e(a, b) += std::conj(basis(s, i)) * u.mat(a * k + s, b * k + t) * f(t);
        fam.ops.push_back(std::move(e));
    }
    return fam;
}

bool is_unital_for(const StinespringChannel& ch, const Tolerances& tol) {
    const int n = ch.u.shape.n;
    return max_abs_diff(uniclass::apply(ch, identity(n)), identity(n)) <= tol.eq_tol;
}

bool is_ppt_channel(const StinespringChannel& ch, const Tolerances& tol) {
    const ChoiMatrix c = choi(ch);
    const BipartiteOperator as_bip{{c.n, c.n}, c.mat};
    return is_psd(partial_transpose_B(as_bip).mat, tol);
}

Ternary is_eb_channel_qubit(const StinespringChannel& ch, const Tolerances& tol) {
    if (ch.u.shape.n != 2) return Ternary::Unknown;
    return is_ppt_channel(ch, tol) ? Ternary::Yes : Ternary::No;
}

std::vector<CMatrix> spanning_densities(int k) {
    std::vector<CMatrix> out;
    out.reserve(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i) {
        CMatrix e = CMatrix::Zero(k, k);
        e(i, i) = 1.0;
        out.push_back(e);
    }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            CMatrix re = CMatrix::Zero(k, k);
            re(i, i) = 0.5; re(j, j) = 0.5; re(i, j) = 0.5; re(j, i) = 0.5;
            out.push_back(re);
            CMatrix im = CMatrix::Zero(k, k);
            im(i, i) = 0.5; im(j, j) = 0.5;
            im(i, j) = Complex(0.0, -0.5); im(j, i) = Complex(0.0, 0.5);
            out.push_back(im);
        }
    return out;
}

}  // namespace uniclass
