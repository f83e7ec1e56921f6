// matcore.hpp — dense complex matrices and bipartite structural primitives:
// Kronecker products, partial trace/transpose, flip, spectral and Schmidt
// decompositions. Everything else in the library is built on top of these.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace uniclass {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct BipartiteShape {
    int n = 1;  // dim of H_A
    int k = 1;  // dim of H_B
    int dim() const { return n * k; }
};

// A square matrix on C^n (x) C^k, stored densely.
struct BipartiteOperator {
    BipartiteShape shape;
    CMatrix mat;
};

struct Tolerances {
    double eq_tol = 1e-9;           // entrywise comparisons
    double spec_tol = 1e-7;         // eigenvalue clustering
    double rank_tol_factor = 100.0; // relative singular-value cutoff
};

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotNormalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotBlockDiagonalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PairingAmbiguityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotCommutingFamilyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotAProjectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotUnitalMemberError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InternalInconsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

CMatrix identity(int d);

// Kronecker product, (i,j)-block of the result is a(i,j)*b.
CMatrix tensor(const CMatrix& a, const CMatrix& b);

// max |a_ij - b_ij|
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double max_abs(const CMatrix& a);

void check_bipartite(const BipartiteOperator& x);

// Tr_B = id (x) Tr, returns an n x n matrix.
CMatrix partial_trace_B(const BipartiteOperator& x);
// Tr_A = Tr (x) id, returns a k x k matrix.
CMatrix partial_trace_A(const BipartiteOperator& x);

// id (x) t; transposes every k x k block in place.
BipartiteOperator partial_transpose_B(const BipartiteOperator& x);

// Flip F_n on C^n (x) C^n: F (x (x) y) = y (x) x.
CMatrix flip(int n);

// Swap C^n (x) C^k -> C^k (x) C^n. swap_op(n,k) * (x (x) y) = y (x) x.
CMatrix swap_op(int n, int k);

// Conjugate a bipartite operator by the factor swap, exchanging the roles
// of A and B: the result has shape (k, n).
BipartiteOperator swap_factors(const BipartiteOperator& x);

bool is_unitary(const CMatrix& x, const Tolerances& tol = {});
bool is_psd(const CMatrix& x, const Tolerances& tol = {});

struct EigenCluster {
    Complex eigenvalue;  // cluster mean
    CMatrix projector;   // orthogonal projector on the clustered eigenspace
};

// Spectral resolution of a normal matrix. Eigenvalues closer than spec_tol
// (single linkage) are merged into one cluster; clusters are sorted by
// (Re, Im) of the cluster mean.
std::vector<EigenCluster> spectral_decomp(const CMatrix& x, const Tolerances& tol = {});

// Nonincreasing singular values; length min(rows, cols).
Eigen::VectorXd singular_values(const CMatrix& x);

int numeric_rank(const CMatrix& x, const Tolerances& tol = {});
int numeric_rank_real(const Eigen::MatrixXd& x, const Tolerances& tol = {});

struct SchmidtTerm {
    double weight;
    CMatrix a;  // n x n, HS-orthonormal across terms
    CMatrix b;  // k x k, HS-orthonormal across terms
};

// Operator Schmidt decomposition x = sum_i w_i a_i (x) b_i via SVD of the
// realignment of x to an n^2 x k^2 matrix. Weights are nonincreasing; terms
// with weight below 1e-14 * w_max are kept (full list of min(n^2,k^2) terms).
std::vector<SchmidtTerm> operator_schmidt(const BipartiteOperator& x);

// Realignment R[(i,j),(s,t)] = x[(i,s),(j,t)], an n^2 x k^2 matrix.
CMatrix realign(const BipartiteOperator& x);

}  // namespace uniclass
