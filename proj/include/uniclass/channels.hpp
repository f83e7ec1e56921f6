// channels.hpp — Stinespring channels rho -> Tr_B(U (rho (x) beta) U*),
// their Choi matrices and Kraus families.

#pragma once

#include "uniclass/matcore.hpp"

#include <vector>

namespace uniclass {

enum class Ternary { No, Yes, Unknown };

struct DensityMatrix {
    int dim = 1;
    CMatrix mat;
};

// Validates Hermiticity, positivity and unit trace.
DensityMatrix make_density(const CMatrix& mat, const Tolerances& tol = {});

struct StinespringChannel {
    BipartiteOperator u;  // unitary on C^n (x) C^k
    DensityMatrix beta;   // environment state, dim k
};

StinespringChannel make_channel(const BipartiteOperator& u, const DensityMatrix& beta,
                                const Tolerances& tol = {});

struct KrausFamily {
    std::vector<CMatrix> ops;  // each n x n, sum E_i* E_i = I_n
};

struct ChoiMatrix {
    int n = 1;
    CMatrix mat;  // n^2 x n^2, input factor first
};

// Evaluates Tr_B(U (x (x) beta) U*).
CMatrix apply(const StinespringChannel& ch, const CMatrix& x);

// C_L = sum_{ij} e_i e_j* (x) L(e_i e_j*)  (= [id (x) L](Omega_n)).
ChoiMatrix choi(const StinespringChannel& ch);

// E_i = (I (x) e_i*) U (I (x) f); Kraus family of L_{U, ff*}.
KrausFamily kraus_from_env_vector(const BipartiteOperator& u, const CVector& f,
                                  const CMatrix& basis, const Tolerances& tol = {});

bool is_unital_for(const StinespringChannel& ch, const Tolerances& tol = {});

// Partial transpose of the Choi matrix (second n-factor) is PSD.
bool is_ppt_channel(const StinespringChannel& ch, const Tolerances& tol = {});

// For n = 2, PPT of the Choi matrix decides separability (C^2 (x) C^2);
// for n >= 3 the question is left open and we return Unknown.
Ternary is_eb_channel_qubit(const StinespringChannel& ch, const Tolerances& tol = {});

// k^2 density matrices spanning M_k(C): basis projectors plus real and
// imaginary superposition projectors mixed with the diagonal ones.
std::vector<CMatrix> spanning_densities(int k);

}  // namespace uniclass
