// blocksvd.hpp — block singular value decompositions X = sum_i X_i (x) R_i
// with orthogonal partial isometries R_i: existence test, construction and
// canonical form.

#pragma once

#include "uniclass/matcore.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace uniclass {

struct BlockTerm {
    CMatrix coeff;  // n x n
    CMatrix isom;   // k x k partial isometry
};

struct BlockSVD {
    BipartiteShape shape;
    std::vector<BlockTerm> terms;
};

struct BlockBasisExpansion {
    std::vector<CMatrix> basis;   // n^2 HS-orthonormal matrices E_alpha in M_n
    std::vector<CMatrix> blocks;  // n^2 matrices X_alpha in M_k
};

// Witness of a violated commutation in one of the block-product families:
// [X_a X_b^*, X_c X_d^*] != 0 (or the starred family when star_side).
struct CommutatorWitness {
    int a, b, c, d;
    bool star_side;  // false: {X Y*} family, true: {X* Y} family
    double norm;     // max-norm of the commutator
};

struct BlockSvdCheck {
    bool ok;
    std::optional<CommutatorWitness> witness;
};

// X = sum_alpha E_alpha (x) X_alpha with X_alpha = [Tr (x) id](X (E_alpha* (x) I)).
// Default basis: matrix units e_i e_j*.
BlockBasisExpansion expand(const BipartiteOperator& x,
                           const std::vector<CMatrix>* basis = nullptr,
                           const Tolerances& tol = {});

// True iff both families {X_a X_b*} and {X_a* X_b} pairwise commute (which
// also covers normality of each member, since the families contain adjoints).
BlockSvdCheck has_block_svd(const BipartiteOperator& x, const Tolerances& tol = {});

// Finest common eigenprojector resolution of a commuting normal family.
std::vector<CMatrix> joint_diagonalize(const std::vector<CMatrix>& family,
                                       const Tolerances& tol = {},
                                       std::uint64_t seed = 7);

// Constructs the block SVD; throws NotBlockDiagonalError when has_block_svd
// fails and PairingAmbiguityError when the P/Q projector pairing is not
// unique. Terms whose coefficient is below tol in norm are dropped; terms
// with phase-equivalent coefficients are merged.
BlockSVD compute_block_svd(const BipartiteOperator& x, const Tolerances& tol = {},
                           std::uint64_t seed = 7);

// Gauge fixing: isometries rescaled to genuine partial isometries, each
// coefficient's largest-magnitude entry made real positive, terms sorted by
// descending HS norm of the coefficient and then entrywise.
BlockSVD canonicalize(const BlockSVD& d);

// sum_i coeff_i (x) isom_i
CMatrix reconstruct(const BlockSVD& d);

}  // namespace uniclass
