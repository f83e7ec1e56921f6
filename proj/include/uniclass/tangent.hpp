// tangent.hpp — enveloping tangent space dimensions (analytic formula and a
// numeric first-order oracle) and closed-form variety dimensions.

#pragma once

#include "uniclass/matcore.hpp"

#include <cstdint>

namespace uniclass {

// D_U = sum_{i,j=1}^k sum over the spectral clusters of U_i U_j* of d^2,
// evaluated at a block-diagonal point U = sum_i U_i (x) e_i f_i*. Throws
// NotBlockDiagonalError when U does not admit such a form with k rank-one
// dyads.
long enveloping_dim_analytic(const BipartiteOperator& u, const Tolerances& tol = {});

// Real dimension of {A : U + eps A and (U + eps A)^Gamma unitary to first
// order}, i.e. the kernel of the linearized constraints
//   U A* + A U* = 0   and   U^Gamma (A^Gamma)* + A^Gamma (U^Gamma)* = 0,
// over the 2(nk)^2 real coordinates of A. Throws NotUnitalMemberError when
// U^Gamma is not unitary.
long enveloping_dim_numeric(const BipartiteOperator& u, const Tolerances& tol = {});

struct VarietyDims {
    long dim_U_block_diag_A;
    long dim_intersection;       // U^A_block-diag meets U^B_block-diag
    long dim_M_block_diag_A;
    long conjectured_dim_U_unital;
};

VarietyDims variety_dim_formulas(int n, int k);

// Local real dimension of {sum_i A_i (x) e_i f_i*} at a generic point,
// computed as the rank of the exact differential of the parametrization
// (A_1..A_k, E, F) -> sum_i A_i (x) (E e_i)(F f_i)*.
long mblockdiag_dim_numeric(int n, int k, std::uint64_t seed = 5);

struct DimensionReport {
    long analytic;
    long numeric;
    bool agree;
};

DimensionReport enveloping_dim_report(const BipartiteOperator& u,
                                      const Tolerances& tol = {});

}  // namespace uniclass
