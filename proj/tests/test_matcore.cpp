#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "uniclass/generate.hpp"
#include "uniclass/matcore.hpp"

using namespace uniclass;

namespace {

// Quadruple-loop Kronecker oracle, independent of the library implementation.
CMatrix tensor_oracle(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            for (int s = 0; s < b.rows(); ++s)
                for (int t = 0; t < b.cols(); ++t)
                    out(i * b.rows() + s, j * b.cols() + t) = a(i, j) * b(s, t);
    return out;
}

}  // namespace

TEST_CASE("tensor matches the entrywise oracle") {
    Rng rng(1);
    const CMatrix a = rng.gaussian_matrix(3, 2), b = rng.gaussian_matrix(2, 4);
    CHECK(max_abs_diff(tensor(a, b), tensor_oracle(a, b)) == doctest::Approx(0.0));
}

TEST_CASE("partial traces against the index-sum oracle") {
    Rng rng(2);
    const int n = 3, k = 2;
    const BipartiteOperator x{{n, k}, rng.gaussian_matrix(n * k, n * k)};

    CMatrix trb = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int s = 0; s < k; ++s) trb(i, j) += x.mat(i * k + s, j * k + s);
    CHECK(max_abs_diff(partial_trace_B(x), trb) < 1e-14);

    CMatrix tra = CMatrix::Zero(k, k);
    for (int s = 0; s < k; ++s)
        for (int t = 0; t < k; ++t)
            for (int i = 0; i < n; ++i) tra(s, t) += x.mat(i * k + s, i * k + t);
    CHECK(max_abs_diff(partial_trace_A(x), tra) < 1e-14);

    CHECK(std::abs(partial_trace_B(x).trace() - x.mat.trace()) < 1e-12);
}

TEST_CASE("partial transpose is an involution and respects tensor products") {
    Rng rng(3);
    const CMatrix a = rng.gaussian_matrix(2, 2), b = rng.gaussian_matrix(3, 3);
    const BipartiteOperator x{{2, 3}, tensor(a, b)};
    const BipartiteOperator g = partial_transpose_B(x);
    CHECK(max_abs_diff(g.mat, tensor(a, b.transpose())) < 1e-14);
    CHECK(max_abs_diff(partial_transpose_B(g).mat, x.mat) == doctest::Approx(0.0));
}

TEST_CASE("flip swaps tensor factors and is the partial transpose of Omega") {
    const int n = 3;
    Rng rng(4);
    const CVector x = haar_unit_vector(n, rng), y = haar_unit_vector(n, rng);
    CVector xy(n * n), yx(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            xy(i * n + j) = x(i) * y(j);
            yx(i * n + j) = y(i) * x(j);
        }
    CHECK((flip(n) * xy - yx).norm() < 1e-14);

    // Omega = sum_{ij} e_ie_j* (x) e_ie_j*; its partial transpose is the flip.
    CMatrix omega = CMatrix::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) omega(i * n + i, j * n + j) = 1.0;
    CHECK(max_abs_diff(partial_transpose_B({{n, n}, omega}).mat, flip(n)) < 1e-14);
}

TEST_CASE("swap_op and swap_factors") {
    const int n = 2, k = 3;
    Rng rng(5);
    const CMatrix a = rng.gaussian_matrix(n, n), b = rng.gaussian_matrix(k, k);
    const CMatrix s = swap_op(n, k);
    CHECK(max_abs_diff(s * tensor(a, b) * s.adjoint(), tensor(b, a)) < 1e-13);
    const BipartiteOperator sw = swap_factors({{n, k}, tensor(a, b)});
    CHECK(sw.shape.n == k);
    CHECK(sw.shape.k == n);
    CHECK(max_abs_diff(sw.mat, tensor(b, a)) < 1e-13);
}

TEST_CASE("is_unitary and is_psd") {
    CHECK(is_unitary(haar_unitary(5, 17)));
    CHECK_FALSE(is_unitary(2.0 * haar_unitary(5, 17)));
    Rng rng(6);
    const CMatrix g = rng.gaussian_matrix(4, 4);
    CHECK(is_psd(g * g.adjoint()));
    CHECK_FALSE(is_psd(-(g * g.adjoint())));
}

TEST_CASE("spectral_decomp resolves a normal matrix") {
    // Unitary with a degenerate eigenvalue.
    CMatrix d = CMatrix::Zero(4, 4);
    d(0, 0) = 1.0;
    d(1, 1) = 1.0;
    d(2, 2) = Complex(0, 1);
    d(3, 3) = -1.0;
    const CMatrix q = haar_unitary(4, 21);
    const CMatrix x = q * d * q.adjoint();
    const auto clusters = spectral_decomp(x);
    CHECK(clusters.size() == 3);
    CMatrix sum = CMatrix::Zero(4, 4), recon = CMatrix::Zero(4, 4);
    for (const auto& c : clusters) {
        CHECK(max_abs_diff(c.projector * c.projector, c.projector) < 1e-10);
        sum += c.projector;
        recon += c.eigenvalue * c.projector;
    }
    CHECK(max_abs_diff(sum, identity(4)) < 1e-10);
    CHECK(max_abs_diff(recon, x) < 1e-8);
}

TEST_CASE("spectral_decomp rejects non-normal input") {
    CMatrix x(2, 2);
    x << 1, 1, 0, 1;
    CHECK_THROWS_AS(spectral_decomp(x), NotNormalError);
}

TEST_CASE("singular values and numeric rank against an eigenvalue oracle") {
    Rng rng(7);
    const CMatrix g = rng.gaussian_matrix(4, 3);
    const Eigen::VectorXd sv = singular_values(g);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(g.adjoint() * g);
    for (int i = 0; i < 3; ++i)
        CHECK(sv(i) == doctest::Approx(std::sqrt(es.eigenvalues()(2 - i))).epsilon(1e-10));

    const CMatrix lowrank = g.col(0) * g.col(1).adjoint();
    CHECK(numeric_rank(lowrank) == 1);
    CHECK(numeric_rank(g) == 3);
    CHECK(numeric_rank(CMatrix::Zero(3, 3)) == 0);
}

TEST_CASE("operator Schmidt decomposition reconstructs and detects products") {
    const int n = 2, k = 3;
    Rng rng(8);
    const BipartiteOperator x{{n, k}, rng.gaussian_matrix(n * k, n * k)};
    const auto terms = operator_schmidt(x);
    CMatrix recon = CMatrix::Zero(n * k, n * k);
    for (const auto& t : terms) recon += t.weight * tensor(t.a, t.b);
    CHECK(max_abs_diff(recon, x.mat) < 1e-10);
    for (size_t i = 1; i < terms.size(); ++i) {
        CHECK(terms[i].weight <= terms[i - 1].weight + 1e-12);
        // HS orthogonality across terms
        CHECK(std::abs((terms[0].a.adjoint() * terms[i].a).trace()) < 1e-10);
    }

    const auto prod = operator_schmidt(product_unitary(n, k, 11));
    CHECK(prod[0].weight == doctest::Approx(std::sqrt(double(n * k))).epsilon(1e-10));
    CHECK(prod[1].weight < 1e-10);
}

TEST_CASE("realignment index convention") {
    Rng rng(9);
    const int n = 2, k = 2;
    const BipartiteOperator x{{n, k}, rng.gaussian_matrix(n * k, n * k)};
    const CMatrix r = realign(x);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int s = 0; s < k; ++s)
                for (int t = 0; t < k; ++t)
                    CHECK(r(i * n + j, s * k + t) == x.mat(i * k + s, j * k + t));
}

TEST_CASE("check_bipartite rejects shape mismatches") {
    CHECK_THROWS_AS(check_bipartite({{2, 3}, CMatrix::Zero(5, 5)}), DimensionError);
}
