// generate.hpp — seeded constructors for every operator class, a catalog of
// named golden counterexample matrices, and random density matrices.
//
// PRNG: SplitMix64 (Steele/Lea/Flood 2014), with Gaussian samples via
// Box-Muller on its uniform stream. Fixtures keyed by a 64-bit seed are
// reproducible across platforms.

#pragma once

#include "uniclass/channels.hpp"
#include "uniclass/matcore.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace uniclass {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double gaussian();
    Complex cgauss() { return {gaussian(), gaussian()}; }

    CMatrix gaussian_matrix(int rows, int cols);

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// QR of a complex Ginibre sample with the R-diagonal phase correction.
CMatrix haar_unitary(int d, std::uint64_t seed);
CMatrix haar_unitary(int d, Rng& rng);
CVector haar_unit_vector(int d, Rng& rng);

BipartiteOperator product_unitary(int n, int k, std::uint64_t seed);

// sum over p groups of U_g (x) (sum_{i in group} e_i f_i*); the p Haar
// coefficients are resampled until pairwise inequivalent up to phase.
BipartiteOperator block_diag_A(int n, int k, int p, std::uint64_t seed);
BipartiteOperator block_diag_B(int n, int k, int p, std::uint64_t seed);

// (I_n (x) V)(F_n (x) I_r)(I_n (x) W) with Haar V, W in U_{nr}; shape (n, nr).
BipartiteOperator const_unitary(int n, int r, std::uint64_t seed);

// F_d diag(random phases) F_d* / d with the unnormalized Fourier matrix.
CMatrix circulant_unitary(int d, std::uint64_t seed);

// sum_{ij} lambda_ij e_i f_i* (x) g_j h_j*, member of both block classes.
BipartiteOperator both_block(int n, int k, std::uint64_t seed);

// Member of U^A_block-diag * F_n (entanglement breaking for n = k).
BipartiteOperator eb_example(int n, std::uint64_t seed);

/// Named verbatim example matrices: mixed_4x2, b_not_a_n3, no_block_svd_4x4.
std::map<std::string, BipartiteOperator> paper_counterexamples();

DensityMatrix random_density(int k, int rank, std::uint64_t seed);

}  // namespace uniclass
