#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "uniclass/channels.hpp"
#include "uniclass/classify.hpp"
#include "uniclass/generate.hpp"
#include "uniclass/json_io.hpp"

using namespace uniclass;

TEST_CASE("is_aut recovers the tensor factors") {
    const auto u = product_unitary(3, 2, 4);
    const Verdict v = is_aut(u);
    REQUIRE(v.value == Ternary::Yes);
    const CMatrix vv = cmatrix_from_json(v.witness.at("v"));
    const CMatrix ww = cmatrix_from_json(v.witness.at("w"));
    CHECK(is_unitary(vv));
    CHECK(is_unitary(ww));
    CHECK(max_abs_diff(tensor(vv, ww), u.mat) < 1e-9);
}

TEST_CASE("is_aut rejects entangling unitaries") {
    const BipartiteOperator u{{2, 2}, flip(2)};
    const Verdict v = is_aut(u);
    CHECK(v.value == Ternary::No);
    CHECK(v.witness.at("schmidt_rank").get<int>() > 1);
}

TEST_CASE("is_const accepts the constant construction and flags obstructions") {
    CHECK(is_const(const_unitary(2, 2, 3)).value == Ternary::Yes);
    const BipartiteOperator u{{2, 3}, haar_unitary(6, 5)};
    const Verdict v = is_const(u);
    CHECK(v.value == Ternary::No);
    CHECK(v.witness.at("reason") == "dimension obstruction");
}

TEST_CASE("is_unital_member iff unital for every environment state") {
    const Tolerances tol;
    int idx = 0;
    for (const BipartiteOperator& u :
         {block_diag_A(2, 3, 2, 6), product_unitary(2, 3, 7),
          BipartiteOperator{{2, 3}, haar_unitary(6, 8)},
          BipartiteOperator{{3, 2}, haar_unitary(6, 9)}}) {
        ++idx;
        CAPTURE(idx);
        bool behavioral = true;
        for (const auto& beta : spanning_densities(u.shape.k))
            behavioral =
                behavioral && is_unital_for(make_channel(u, make_density(beta)), tol);
        CHECK((is_unital_member(u).value == Ternary::Yes) == behavioral);
    }
}

TEST_CASE("block membership verdicts carry witnesses") {
    const Verdict yes_v = is_block_diag_A(block_diag_A(2, 3, 2, 11));
    REQUIRE(yes_v.value == Ternary::Yes);
    CHECK(yes_v.witness.at("block_svd").at("terms").size() == 2);

    const Verdict no_v = is_block_diag_A({{2, 3}, haar_unitary(6, 12)});
    REQUIRE(no_v.value == Ternary::No);
    CHECK(no_v.witness.at("commutator").at("norm").get<double>() > 1e-6);
}

TEST_CASE("B-side membership via the factor swap") {
    CHECK(is_block_diag_B(block_diag_B(3, 2, 2, 13)).value == Ternary::Yes);
    const auto bna = paper_counterexamples().at("b_not_a_n3");
    CHECK(is_block_diag_B(bna).value == Ternary::Yes);
    CHECK(is_block_diag_A(bna).value == Ternary::No);
}

TEST_CASE("decompose_AB recovers a rank-one double decomposition") {
    const auto u = both_block(2, 3, 14);
    const Verdict v = decompose_AB(u);
    REQUIRE(v.value == Ternary::Yes);
    const CMatrix lambda = cmatrix_from_json(v.witness.at("lambda"));
    REQUIRE(lambda.rows() == 2);
    REQUIRE(lambda.cols() == 3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(std::abs(lambda(i, j)) - 1.0) < 1e-8);
}

TEST_CASE("cppt holds for constant-channel unitaries and fails for products") {
    CHECK(is_cppt(const_unitary(2, 2, 15)).value == Ternary::Yes);
    CHECK(is_cppt(product_unitary(2, 2, 16)).value == Ternary::No);
}

TEST_CASE("cppt_projection_check golden projections") {
    const int n = 2, k = 2;
    const Tolerances tol;
    // the identity fails for n >= 2
    CHECK(cppt_projection_check(identity(n * k), {n, k}, tol).value == Ternary::No);
    // rank-one x (x) C^k factors pass
    Rng rng(17);
    const CVector x = haar_unit_vector(n, rng);
    const CMatrix q = identity(k);
    CHECK(cppt_projection_check(tensor(CMatrix(x * x.adjoint()), q), {n, k}, tol).value ==
          Ternary::Yes);
    // non-projections are rejected
    CHECK_THROWS_AS(cppt_projection_check(2.0 * identity(n * k), {n, k}, tol),
                    NotAProjectionError);
    CHECK_THROWS_AS(cppt_projection_check(identity(2), {n, k}, tol), DimensionError);
}

TEST_CASE("mixed_necessary certifies the diagonal counterexample") {
    const auto u = paper_counterexamples().at("mixed_4x2");
    CVector f(2);
    f << 1.0, 0.0;
    const Verdict v = mixed_necessary(u, f);
    CHECK(v.value == Ternary::No);
    CHECK_FALSE(v.heuristic);
    CHECK(v.witness.at("path") == "diagonal-grid");
    CHECK(v.witness.at("certified_upper_bound").get<double>() < 0.999);
}

TEST_CASE("mixed_necessary never rejects block-diagonal members") {
    Rng rng(18);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto u = block_diag_A(2, 2, 2, seed);
        const CVector f = haar_unit_vector(2, rng);
        CHECK(mixed_necessary(u, f).value != Ternary::No);
    }
}

TEST_CASE("mixed_necessary validates the environment vector") {
    const auto u = product_unitary(2, 2, 19);
    CVector f(2);
    f << 2.0, 0.0;
    CHECK_THROWS(mixed_necessary(u, f));
}

TEST_CASE("classify_all is consistent across provenances") {
    for (const BipartiteOperator& u :
         {product_unitary(2, 2, 20), block_diag_A(2, 3, 2, 21),
          const_unitary(2, 2, 22), BipartiteOperator{{2, 3}, haar_unitary(6, 23)},
          paper_counterexamples().at("mixed_4x2"),
          paper_counterexamples().at("b_not_a_n3")}) {
        const ClassReport rep = classify_all(u);
        CHECK(rep.verdicts.count("aut") == 1);
        CHECK(rep.verdicts.at("prob_lin").value == rep.verdicts.at("block_diag_A").value);
    }
}

TEST_CASE("classify_all rejects non-unitary input") {
    CHECK_THROWS_AS(classify_all({{2, 2}, 2.0 * identity(4)}), std::invalid_argument);
}

TEST_CASE("qubit collapse: mixed verdict equals unital at n = 2") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const BipartiteOperator u{{2, 3}, haar_unitary(6, seed)};
        const ClassReport rep = classify_all(u);
        CHECK(rep.verdicts.at("mixed_necessary").value ==
              rep.verdicts.at("unital").value);
    }
}

TEST_CASE("report JSON round trip") {
    const ClassReport rep = classify_all(product_unitary(2, 2, 30));
    const auto j = report_to_json(rep);
    CHECK(j.at("n") == 2);
    CHECK(j.at("k") == 2);
    CHECK(j.at("verdicts").at("aut").at("value") == "yes");
}
