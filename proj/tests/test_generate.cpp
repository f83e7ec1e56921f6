#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "uniclass/blocksvd.hpp"
#include "uniclass/generate.hpp"

#include <cmath>

using namespace uniclass;

TEST_CASE("haar_unitary is unitary for 100 seeds at d = 6") {
    for (std::uint64_t seed = 0; seed < 100; ++seed)
        CHECK(is_unitary(haar_unitary(6, seed)));
}

TEST_CASE("haar_unitary at d = 1 is a unimodular scalar") {
    const CMatrix u = haar_unitary(1, 12);
    CHECK(std::abs(std::abs(u(0, 0)) - 1.0) < 1e-12);
}

TEST_CASE("Haar moment: E |tr U|^2 = 1 at d = 4") {
    // 2000 samples; |tr U|^2 has mean 1 and variance 1 under the Haar
    // measure, so a 3 sigma window is 1 +- 3/sqrt(2000).
    const int samples = 2000;
    Rng rng(2718);
    double acc = 0.0;
    for (int s = 0; s < samples; ++s)
        acc += std::norm(haar_unitary(4, rng).trace());
    const double mean = acc / samples;
    CHECK(std::abs(mean - 1.0) < 3.0 / std::sqrt(double(samples)));
}

TEST_CASE("generators are deterministic in the seed") {
    const auto a = block_diag_A(2, 3, 2, 77), b = block_diag_A(2, 3, 2, 77);
    CHECK(max_abs_diff(a.mat, b.mat) == doctest::Approx(0.0));
    CHECK(max_abs_diff(haar_unitary(4, 5), haar_unitary(4, 5)) == doctest::Approx(0.0));
}

TEST_CASE("product_unitary has operator Schmidt rank 1") {
    const auto u = product_unitary(2, 3, 9);
    CHECK(is_unitary(u.mat));
    const auto terms = operator_schmidt(u);
    CHECK(terms[0].weight == doctest::Approx(std::sqrt(6.0)).epsilon(1e-10));
    CHECK(terms[1].weight < 1e-10);
}

TEST_CASE("block_diag_A: unitary, block decomposable, p recovered terms") {
    for (int p = 1; p <= 3; ++p) {
        const auto u = block_diag_A(2, 3, p, 123 + p);
        CHECK(is_unitary(u.mat));
        CHECK(has_block_svd(u).ok);
        const auto d = compute_block_svd(u);
        CHECK(static_cast<int>(d.terms.size()) == p);
    }
    CHECK_THROWS(block_diag_A(2, 3, 0, 1));
    CHECK_THROWS(block_diag_A(2, 3, 4, 1));
}

TEST_CASE("block_diag_A enforces pairwise inequivalent coefficients") {
    const Tolerances tol;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto d = compute_block_svd(block_diag_A(2, 4, 2, seed));
        REQUIRE(d.terms.size() == 2);
        const CMatrix u0 = d.terms[0].coeff, u1 = d.terms[1].coeff;
        CHECK(std::abs((u0 * u1.adjoint()).trace()) < 2.0 - tol.spec_tol);
    }
}

TEST_CASE("block_diag_B is the factor swap of an A-side member") {
    const auto u = block_diag_B(3, 2, 2, 55);
    CHECK(u.shape.n == 3);
    CHECK(u.shape.k == 2);
    CHECK(is_unitary(u.mat));
    CHECK(has_block_svd(swap_factors(u)).ok);
}

TEST_CASE("const_unitary produces a state-independent channel") {
    const int n = 2, r = 2, k = n * r;
    const auto u = const_unitary(n, r, 8);
    CHECK(u.shape.k == k);
    CHECK(is_unitary(u.mat));
    const DensityMatrix beta = random_density(k, k, 9);
    const StinespringChannel ch = make_channel(u, beta);
    CMatrix first;
    Rng rng(10);
    for (int t = 0; t < 4; ++t) {
        const CMatrix g = rng.gaussian_matrix(n, n);
        CMatrix rho = g * g.adjoint();
        rho /= rho.trace();
        const CMatrix out = uniclass::apply(ch, rho);
        if (t == 0)
            first = out;
        else
            CHECK(max_abs_diff(out, first) < 1e-10);
    }
}

TEST_CASE("const_unitary at r = 1 is the flip times a product") {
    // Regenerate the same V, W draws and compare against F_n regrouping.
    const int n = 3;
    const std::uint64_t seed = 14;
    const auto u = const_unitary(n, 1, seed);
    Rng rng(seed);
    const CMatrix v = haar_unitary(n, rng), w = haar_unitary(n, rng);
    const CMatrix expected = tensor(identity(n), v) * flip(n) * tensor(identity(n), w);
    CHECK(max_abs_diff(u.mat, expected) < 1e-14);
    // F (I (x) V) F = V (x) I, so U = F (V (x) W) is flip times a product.
    CHECK(max_abs_diff(u.mat, flip(n) * tensor(v, w)) < 1e-12);
}

TEST_CASE("circulant_unitary is circulant and unitary") {
    for (int d : {4, 6}) {
        const CMatrix x = circulant_unitary(d, 33);
        CHECK(is_unitary(x));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                CHECK(std::abs(x(i, j) - x(0, ((j - i) % d + d) % d)) < 1e-12);
    }
}

TEST_CASE("both_block members decompose on both sides") {
    const auto u = both_block(2, 3, 21);
    CHECK(is_unitary(u.mat));
    CHECK(has_block_svd(u).ok);
    CHECK(has_block_svd(swap_factors(u)).ok);
}

TEST_CASE("named counterexamples have the advertised shapes") {
    auto all = paper_counterexamples();
    REQUIRE(all.count("mixed_4x2") == 1);
    REQUIRE(all.count("b_not_a_n3") == 1);
    REQUIRE(all.count("no_block_svd_4x4") == 1);

    const auto& m42 = all.at("mixed_4x2");
    CHECK(m42.shape.n == 4);
    CHECK(m42.shape.k == 2);
    CHECK(is_unitary(m42.mat));

    const auto& bna = all.at("b_not_a_n3");
    CHECK(bna.shape.n == 3);
    CHECK(bna.shape.k == 2);
    CHECK(is_unitary(bna.mat));

    const auto& nb = all.at("no_block_svd_4x4");
    CHECK(nb.shape.n == 2);
    CHECK(nb.shape.k == 2);
    CHECK_FALSE(has_block_svd(nb).ok);
}

TEST_CASE("eb_example is unitary") {
    const auto u = eb_example(2, 2024);
    CHECK(u.shape.n == 2);
    CHECK(u.shape.k == 2);
    CHECK(is_unitary(u.mat));
}

TEST_CASE("random_density: trace 1, PSD, requested rank") {
    for (int rank = 1; rank <= 3; ++rank) {
        const DensityMatrix rho = random_density(3, rank, 64 + rank);
        CHECK(std::abs(rho.mat.trace() - 1.0) < 1e-12);
        CHECK(is_psd(rho.mat));
        CHECK(numeric_rank(rho.mat) == rank);
    }
    CHECK_THROWS(random_density(3, 0, 1));
    CHECK_THROWS(random_density(3, 4, 1));
}
