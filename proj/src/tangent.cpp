#include "uniclass/tangent.hpp"

#include "uniclass/blocksvd.hpp"
#include "uniclass/generate.hpp"

#include <Eigen/SVD>

#include <vector>

namespace uniclass {

namespace {

// Rank-one refinement of the block SVD: U = sum_i U_i (x) e_i f_i* with k
// dyads. Throws NotBlockDiagonalError when U is not of this form.
std::vector<CMatrix> diagonal_blocks(const BipartiteOperator& u, const Tolerances& tol) {
    const int k = u.shape.k;
    const BlockSvdCheck chk = has_block_svd(u, tol);
    if (!chk.ok)
        throw NotBlockDiagonalError("dimension formula needs a block-diagonal point");
    const BlockSVD d = canonicalize(compute_block_svd(u, tol));
    std::vector<CMatrix> blocks;
    for (const auto& t : d.terms) {
        Eigen::JacobiSVD<CMatrix> svd(t.isom);
        for (Eigen::Index m = 0; m < svd.singularValues().size(); ++m)
            if (svd.singularValues()(m) > 0.5) blocks.push_back(t.coeff);
    }
    if (static_cast<int>(blocks.size()) != k)
        throw NotBlockDiagonalError("isometry ranks do not sum to k");
    for (const auto& b : blocks)
        if (!is_unitary(b, tol))
            throw NotBlockDiagonalError("non-unitary diagonal block");
    return blocks;
}

}  // namespace

long enveloping_dim_analytic(const BipartiteOperator& u, const Tolerances& tol) {
    check_bipartite(u);
    const auto blocks = diagonal_blocks(u, tol);
    const int k = u.shape.k;
    long dim = 0;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            const auto clusters = spectral_decomp(blocks[i] * blocks[j].adjoint(), tol);
            for (const auto& c : clusters) {
                const long d = std::lround(c.projector.trace().real());
                dim += d * d;
            }
        }
    return dim;
}

long enveloping_dim_numeric(const BipartiteOperator& u, const Tolerances& tol) {
    check_bipartite(u);
    const int d = u.shape.dim();
    const CMatrix g = partial_transpose_B(u).mat;
    const CMatrix id = identity(d);
    if (max_abs_diff(g * g.adjoint(), id) > tol.eq_tol)
        throw NotUnitalMemberError("numeric tangent dimension needs U^Gamma unitary");

    // Real Jacobian of A -> (UA* + AU*, G (A^Gamma)* + A^Gamma G*): rows are
    // Re/Im of both Hermitian-valued constraints, columns the 2 d^2 real
    // coordinates of A.
    const int ncols = 2 * d * d;
    Eigen::MatrixXd jac(4 * d * d, ncols);
    CMatrix a = CMatrix::Zero(d, d);
    const BipartiteShape shape = u.shape;
    int col = 0;
    for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q)
            for (int part = 0; part < 2; ++part, ++col) {
                a(p, q) = part == 0 ? Complex(1, 0) : Complex(0, 1);
                const CMatrix m1 = u.mat * a.adjoint() + a * u.mat.adjoint();
                const CMatrix ag = partial_transpose_B({shape, a}).mat;
                const CMatrix m2 = g * ag.adjoint() + ag * g.adjoint();
                a(p, q) = 0.0;
                int row = 0;
                for (int r = 0; r < d; ++r)
                    for (int c = 0; c < d; ++c) {
                        jac(row++, col) = m1(r, c).real();
                        jac(row++, col) = m1(r, c).imag();
                        jac(row++, col) = m2(r, c).real();
                        jac(row++, col) = m2(r, c).imag();
                    }
            }
    return ncols - numeric_rank_real(jac, tol);
}

VarietyDims variety_dim_formulas(int n, int k) {
    if (n < 1 || k < 1) throw DimensionError("variety_dim_formulas: n, k >= 1");
    VarietyDims v{};
    const long ln = n, lk = k;
    v.dim_U_block_diag_A = (n == 1) ? lk * lk : lk * (ln * ln + 2 * lk - 2);
    v.dim_intersection = (std::min(n, k) == 1)
                             ? (ln * lk) * (ln * lk)
                             : 2 * ln * ln + 2 * lk * lk + ln * lk - 2 * ln - 2 * lk;
    v.dim_M_block_diag_A = 2 * lk * (ln * ln + lk - 1);
    v.conjectured_dim_U_unital = lk * ln * ln + ln * lk * lk - ln * lk;
    return v;
}

long mblockdiag_dim_numeric(int n, int k, std::uint64_t seed) {
    if (n < 1 || k < 1) throw DimensionError("mblockdiag_dim_numeric: n, k >= 1");
    Rng rng(seed);
    std::vector<CMatrix> a(k);
    for (auto& m : a) m = rng.gaussian_matrix(n, n);
    const CMatrix e = haar_unitary(k, rng), f = haar_unitary(k, rng);

    // phi(A, E, F) = sum_i A_i (x) (E e_i)(F f_i)*; directional derivatives:
    //   dA_i (x) (E e_i)(F f_i)*,
    //   E direction X (anti-Hermitian): sum_i A_i (x) (E X e_i)(F f_i)*,
    //   F direction Y: sum_i A_i (x) (E e_i)(F Y f_i)*.
    const int d = n * k;
    const int nparams = 2 * k * n * n + 2 * (k * k);
    // anti-Hermitian tangents contribute k^2 real parameters per basis
    Eigen::MatrixXd jac(2 * d * d, nparams);
    int col = 0;
    auto emit = [&](const CMatrix& dphi) {
        int row = 0;
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                jac(row++, col) = dphi(r, c).real();
                jac(row++, col) = dphi(r, c).imag();
            }
        ++col;
    };
    auto dyad = [&](int i) -> CMatrix {
        return (e.col(i)) * (f.col(i)).adjoint();
    };

    for (int i = 0; i < k; ++i) {
        CMatrix da = CMatrix::Zero(n, n);
        const CMatrix dy = dyad(i);
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                for (int part = 0; part < 2; ++part) {
                    da(p, q) = part == 0 ? Complex(1, 0) : Complex(0, 1);
                    emit(tensor(da, dy));
                    da(p, q) = 0.0;
                }
    }

    // Anti-Hermitian basis of u(k): i E_pp; (E_pq - E_qp) and i(E_pq + E_qp).
    std::vector<CMatrix> anti;
    for (int p = 0; p < k; ++p) {
        CMatrix x = CMatrix::Zero(k, k);
        x(p, p) = Complex(0, 1);
        anti.push_back(x);
        for (int q = p + 1; q < k; ++q) {
            CMatrix y = CMatrix::Zero(k, k);
            y(p, q) = 1.0;
            y(q, p) = -1.0;
            anti.push_back(y);
            y(p, q) = Complex(0, 1);
            y(q, p) = Complex(0, 1);
            anti.push_back(y);
        }
    }
    for (const auto& x : anti) {
        CMatrix dphi = CMatrix::Zero(d, d);
        for (int i = 0; i < k; ++i)
            dphi += tensor(a[i], (e * x).col(i) * f.col(i).adjoint());
        emit(dphi);
    }
    for (const auto& y : anti) {
        CMatrix dphi = CMatrix::Zero(d, d);
        for (int i = 0; i < k; ++i)
            dphi += tensor(a[i], e.col(i) * (f * y).col(i).adjoint());
        emit(dphi);
    }
    return numeric_rank_real(jac, Tolerances{});
}

DimensionReport enveloping_dim_report(const BipartiteOperator& u, const Tolerances& tol) {
    DimensionReport rep{};
    rep.analytic = enveloping_dim_analytic(u, tol);
    rep.numeric = enveloping_dim_numeric(u, tol);
    rep.agree = rep.analytic == rep.numeric;
    return rep;
}

}  // namespace uniclass
