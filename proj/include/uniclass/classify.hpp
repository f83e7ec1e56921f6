// classify.hpp — membership tests for the unitary classes, assembled into a
// ClassReport with machine-checkable witnesses.

#pragma once

#include "uniclass/blocksvd.hpp"
#include "uniclass/channels.hpp"
#include "uniclass/matcore.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>

namespace uniclass {

struct Verdict {
    Ternary value = Ternary::Unknown;
    bool heuristic = false;       // set on uncertified numeric No verdicts
    nlohmann::json witness;
};

struct ClassReport {
    BipartiteShape shape;
    std::map<std::string, Verdict> verdicts;
};

// Product test: operator Schmidt rank 1. Witness carries the recovered
// tensor factors (V, W), V's leading entry made real positive.
Verdict is_aut(const BipartiteOperator& u, const Tolerances& tol = {});

// Constant-channel test: dimension obstruction k % n != 0, otherwise the
// spanning-set behavioral test (exact by linearity).
Verdict is_const(const BipartiteOperator& u, const Tolerances& tol = {});

// U^Gamma unitary.
Verdict is_unital_member(const BipartiteOperator& u, const Tolerances& tol = {});

Verdict is_block_diag_A(const BipartiteOperator& u, const Tolerances& tol = {});
Verdict is_block_diag_B(const BipartiteOperator& u, const Tolerances& tol = {});

// Membership in both block classes, with the unimodular lambda matrix and
// the four rank-one bases as witness.
Verdict decompose_AB(const BipartiteOperator& u, const Tolerances& tol = {});

// (I_n (x) U^Gamma)(F_n (x) I_k)(I_n (x) U^Gamma)* >= 0.
Verdict is_cppt(const BipartiteOperator& u, const Tolerances& tol = {});

// (I_n (x) P)(F_n (x) I_k)(I_n (x) P) >= 0 for an orthogonal projection P.
Verdict cppt_projection_check(const CMatrix& p, const BipartiteShape& shape,
                              const Tolerances& tol = {});

// Necessary condition for mixed-unitary membership: the span of the Kraus
// family of L_{U, ff*} must contain a unitary. Returns No when the span is
// certified (or heuristically judged) to avoid the unitary group, Unknown
// otherwise.
Verdict mixed_necessary(const BipartiteOperator& u, const CVector& f,
                        const Tolerances& tol = {}, int budget = 8);

ClassReport classify_all(const BipartiteOperator& u, const Tolerances& tol = {},
                         int budget = 8);

std::string to_string(Ternary t);

}  // namespace uniclass
