#include "uniclass/generate.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>

namespace uniclass {

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
}

CMatrix Rng::gaussian_matrix(int rows, int cols) {
    CMatrix g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = cgauss();
    return g;
}

CMatrix haar_unitary(int d, Rng& rng) {
    if (d < 1) throw DimensionError("haar_unitary: d >= 1 required");
    const CMatrix g = rng.gaussian_matrix(d, d);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) {
        const Complex rii = r(i, i);
        const double a = std::abs(rii);
        q.col(i) *= (a > 0) ? rii / a : Complex(1.0);
    }
    return q;
}

CMatrix haar_unitary(int d, std::uint64_t seed) {
    Rng rng(seed);
    return haar_unitary(d, rng);
}

CVector haar_unit_vector(int d, Rng& rng) {
    CVector v(d);
    for (int i = 0; i < d; ++i) v(i) = rng.cgauss();
    return v / v.norm();
}

BipartiteOperator product_unitary(int n, int k, std::uint64_t seed) {
    Rng rng(seed);
    const CMatrix v = haar_unitary(n, rng);
    const CMatrix w = haar_unitary(k, rng);
    return {{n, k}, tensor(v, w)};
}

BipartiteOperator block_diag_A(int n, int k, int p, std::uint64_t seed) {
    if (p < 1 || p > k) throw std::invalid_argument("block_diag_A: need 1 <= p <= k");
    Rng rng(seed);
    const Tolerances tol;

    std::vector<CMatrix> coeffs;
    while (static_cast<int>(coeffs.size()) < p) {
        CMatrix u = haar_unitary(n, rng);
        bool distinct = true;
        for (const auto& other : coeffs)
            if (std::abs((u * other.adjoint()).trace()) >= n - tol.spec_tol) {
                distinct = false;
                break;
            }
        if (distinct) coeffs.push_back(std::move(u));
    }
    const CMatrix e = haar_unitary(k, rng);
    const CMatrix f = haar_unitary(k, rng);

    // k supports distributed over the p groups, every group nonempty.
    CMatrix out = CMatrix::Zero(n * k, n * k);
    for (int i = 0; i < k; ++i) {
        const CMatrix dyad = e.col(i) * f.col(i).adjoint();
        out += tensor(coeffs[i % p], dyad);
    }
    return {{n, k}, out};
}

BipartiteOperator block_diag_B(int n, int k, int p, std::uint64_t seed) {
    const BipartiteOperator a_side = block_diag_A(k, n, p, seed);
    return swap_factors(a_side);
}

BipartiteOperator const_unitary(int n, int r, std::uint64_t seed) {
    if (n < 1 || r < 1) throw DimensionError("const_unitary: n, r >= 1 required");
    Rng rng(seed);
    const int k = n * r;
    const CMatrix v = haar_unitary(k, rng);
    const CMatrix w = haar_unitary(k, rng);
    const CMatrix mid = tensor(flip(n), identity(r));
    const CMatrix u = tensor(identity(n), v) * mid * tensor(identity(n), w);
    return {{n, k}, u};
}

CMatrix circulant_unitary(int d, std::uint64_t seed) {
    if (d < 1) throw DimensionError("circulant_unitary: d >= 1 required");
    Rng rng(seed);
    CMatrix fourier(d, d);
    const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const double ang = 2.0 * std::numbers::pi * static_cast<double>(i) * j / d;
            fourier(i, j) = Complex(std::cos(ang), std::sin(ang)) * inv_sqrt;
        }
    CVector phases(d);
    for (int i = 0; i < d; ++i) {
        const double ang = 2.0 * std::numbers::pi * rng.uniform();
        phases(i) = Complex(std::cos(ang), std::sin(ang));
    }
    return fourier * phases.asDiagonal() * fourier.adjoint();
}

BipartiteOperator both_block(int n, int k, std::uint64_t seed) {
    Rng rng(seed);
    const CMatrix e = haar_unitary(n, rng), f = haar_unitary(n, rng);
    const CMatrix g = haar_unitary(k, rng), h = haar_unitary(k, rng);
    CMatrix out = CMatrix::Zero(n * k, n * k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) {
            const double ang = 2.0 * std::numbers::pi * rng.uniform();
            const Complex lam(std::cos(ang), std::sin(ang));
            out += lam * tensor(CMatrix(e.col(i) * f.col(i).adjoint()),
                                CMatrix(g.col(j) * h.col(j).adjoint()));
        }
    return {{n, k}, out};
}

BipartiteOperator eb_example(int n, std::uint64_t seed) {
    const BipartiteOperator bd = block_diag_A(n, n, n, seed);
    return {{n, n}, bd.mat * flip(n)};
}

std::map<std::string, BipartiteOperator> paper_counterexamples() {
    std::map<std::string, BipartiteOperator> out;

    {
        // 4x2 block-diagonal (B side) unitary outside the mixed-unitary class.
        const double s = 1.0 / std::sqrt(2.0);
        const Complex i01(0.0, 1.0);
        CMatrix u = CMatrix::Zero(8, 8);
        u.block(0, 0, 2, 2) = identity(2);
        u.block(2, 2, 2, 2) << 0, 1, 1, 0;
        u.block(4, 4, 2, 2) << s, s, s, -s;
        u.block(6, 6, 2, 2) << s, s * i01, -s * i01, -s;
        out.emplace("mixed_4x2", BipartiteOperator{{4, 2}, u});
    }
    {
        // n = 3 operator that is B-block-diagonal but not A-block-diagonal.
        // Frozen non-commuting unitary pair (one-time Haar draw, committed
        // as literals so the fixture does not depend on the PRNG).
        CMatrix v(2, 2), w(2, 2);
        v << Complex(0.75289725506368743, 0.081643286186557432),
             Complex(-0.63036596258504884, -0.17064246350908516),
             Complex(0.26021266624048139, 0.59897367677239743),
             Complex(0.18991450420193121, 0.73311144033871822);
        w << Complex(0.54461551600938352, 0.80095235551302679),
             Complex(0.24544488980092857, 0.040324558157243229),
             Complex(-0.10228832143615685, 0.22672971401591885),
             Complex(-0.36555325362618452, -0.89694010660876533);
        CMatrix u = CMatrix::Zero(6, 6);
        u.block(0, 0, 2, 2) = identity(2);
        u.block(2, 2, 2, 2) = v;
        u.block(4, 4, 2, 2) = w;
        out.emplace("b_not_a_n3", BipartiteOperator{{3, 2}, u});
    }
    {
        // 4x4 matrix without a block SVD despite each X_a X_a* being normal.
        CMatrix x(4, 4);
        x << 1, 0, 0, 1,
             0, 2, 1, 0,
             0, 1, 1, 0,
             1, 0, 0, 1;
        out.emplace("no_block_svd_4x4", BipartiteOperator{{2, 2}, x.cast<Complex>()});
    }
    {
        out.emplace("eb_2x2", eb_example(2, 2024));
    }
    return out;
}

DensityMatrix random_density(int k, int rank, std::uint64_t seed) {
    if (rank < 1 || rank > k) throw std::invalid_argument("random_density: need 1 <= rank <= k");
    Rng rng(seed);
    const CMatrix g = rng.gaussian_matrix(k, rank);
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace();
    return {k, rho};
}

}  // namespace uniclass
