#include "uniclass/blocksvd.hpp"
#include "uniclass/generate.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace uniclass {

namespace {

std::vector<CMatrix> matrix_units(int n) {
    std::vector<CMatrix> out;
    out.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            CMatrix e = CMatrix::Zero(n, n);
            e(i, j) = 1.0;
            out.push_back(e);
        }
    return out;
}

double family_scale(const std::vector<CMatrix>& fam) {
    double s = 1.0;
    for (const auto& m : fam) s = std::max(s, max_abs(m));
    return s;
}

}  // namespace

BlockBasisExpansion expand(const BipartiteOperator& x, const std::vector<CMatrix>* basis,
                           const Tolerances& tol) {
    check_bipartite(x);
    const int n = x.shape.n, k = x.shape.k;
    std::vector<CMatrix> es = basis ? *basis : matrix_units(n);
    if (static_cast<int>(es.size()) != n * n)
        throw std::invalid_argument("expand: basis must contain n^2 matrices");
    for (size_t a = 0; a < es.size(); ++a) {
        if (es[a].rows() != n || es[a].cols() != n)
            throw DimensionError("expand: basis elements must be n x n");
        for (size_t b = 0; b <= a; ++b) {
            const Complex ip = (es[a].adjoint() * es[b]).trace();
            const Complex want = (a == b) ? Complex(1.0) : Complex(0.0);
            if (std::abs(ip - want) > tol.eq_tol)
                throw std::invalid_argument("expand: basis is not HS-orthonormal");
        }
    }

    // X_alpha = [Tr (x) id](X (E_alpha* (x) I)) = sum_{ij} conj(E_alpha(i,j)) X_{ij}
    BlockBasisExpansion out;
    out.basis = es;
    out.blocks.reserve(es.size());
    for (const auto& e : es) {
        CMatrix blk = CMatrix::Zero(k, k);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (e(i, j) != Complex(0.0))
                    blk += std::conj(e(i, j)) * x.mat.block(i * k, j * k, k, k);
        out.blocks.push_back(std::move(blk));
    }
    return out;
}

BlockSvdCheck has_block_svd(const BipartiteOperator& x, const Tolerances& tol) {
    const BlockBasisExpansion exp = expand(x, nullptr, tol);
    const int m = static_cast<int>(exp.blocks.size());

    for (int star = 0; star < 2; ++star) {
        std::vector<CMatrix> prods(static_cast<size_t>(m) * m);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                prods[a * m + b] = star ? CMatrix(exp.blocks[a].adjoint() * exp.blocks[b])
                                        : CMatrix(exp.blocks[a] * exp.blocks[b].adjoint());
        const double s = family_scale(prods);
        const double thresh = tol.eq_tol * s * s;
        // Pairwise commutation covers normality too: the adjoint of X_a X_b*
        // is X_b X_a*, itself a member of the family.
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int c = a; c < m; ++c)
                    for (int d = (c == a ? b : 0); d < m; ++d) {
                        const CMatrix& m1 = prods[a * m + b];
                        const CMatrix& m2 = prods[c * m + d];
                        const double nrm = max_abs(m1 * m2 - m2 * m1);
                        if (nrm > thresh)
                            return {false, CommutatorWitness{a, b, c, d, star != 0, nrm}};
                    }
    }
    return {true, std::nullopt};
}

std::vector<CMatrix> joint_diagonalize(const std::vector<CMatrix>& family,
                                       const Tolerances& tol, std::uint64_t seed) {
    if (family.empty()) throw std::invalid_argument("joint_diagonalize: empty family");
    const int k = static_cast<int>(family[0].rows());
    for (const auto& m : family)
        if (m.rows() != k || m.cols() != k)
            throw DimensionError("joint_diagonalize: family members must share a size");

    const double scale = family_scale(family);

    // Seeded random Hermitian combination; its eigenspaces are invariant
    // under every member of a commuting normal family.
    Rng rng(seed);
    CMatrix h = CMatrix::Zero(k, k);
    const double norm = 1.0 / std::sqrt(static_cast<double>(family.size()));
    for (const auto& m : family) {
        const Complex c = rng.cgauss() * norm;
        h += c.real() * (m + m.adjoint());
        h += c.imag() * Complex(0, 1) * (m - m.adjoint());
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);

    // Initial split: single-linkage clusters of the eigenvalues of h.
    std::vector<CMatrix> subspaces;  // orthonormal column blocks
    {
        const Eigen::VectorXd ev = es.eigenvalues();
        const double thresh = tol.spec_tol * std::max(1.0, max_abs(h));
        int start = 0;
        for (int i = 1; i <= k; ++i) {
            if (i == k || ev(i) - ev(i - 1) > thresh) {
                subspaces.push_back(es.eigenvectors().middleCols(start, i - start));
                start = i;
            }
        }
    }

    // Refine until every family member is scalar on every subspace.
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& m : family) {
            std::vector<CMatrix> next;
            for (const auto& s : subspaces) {
                const CMatrix b = s.adjoint() * m * s;
                if (max_abs(m * s - s * b) > tol.eq_tol * scale * 10.0)
                    throw NotCommutingFamilyError(
                        "joint_diagonalize: subspace not invariant; family does not commute");
                Tolerances sub_tol = tol;
                std::vector<EigenCluster> clusters;
                try {
                    clusters = spectral_decomp(b, sub_tol);
                } catch (const NotNormalError&) {
                    throw NotCommutingFamilyError(
                        "joint_diagonalize: non-normal restriction; family is not normal");
                }
                if (clusters.size() == 1) {
                    next.push_back(s);
                    continue;
                }
                changed = true;
                for (const auto& cl : clusters) {
                    Eigen::SelfAdjointEigenSolver<CMatrix> pe(cl.projector);
                    CMatrix basis(s.cols(), 0);
                    for (Eigen::Index c = 0; c < pe.eigenvalues().size(); ++c)
                        if (pe.eigenvalues()(c) > 0.5) {
                            basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
                            basis.col(basis.cols() - 1) = pe.eigenvectors().col(c);
                        }
                    next.push_back(s * basis);
                }
            }
            subspaces = std::move(next);
        }
    }

    // Validate: every member must reconstruct from scalars on the resolution.
    for (const auto& m : family) {
        CMatrix recon = CMatrix::Zero(k, k);
        for (const auto& s : subspaces) {
            const Complex c = (s.adjoint() * m * s).trace() / static_cast<double>(s.cols());
            recon += c * (s * s.adjoint());
        }
        if (max_abs_diff(recon, m) > tol.eq_tol * scale * 100.0)
            throw NotCommutingFamilyError(
                "joint_diagonalize: family is not simultaneously diagonalizable");
    }

    // Deterministic order: lexicographic in the eigenvalue sequence.
    std::vector<std::vector<Complex>> fingerprints(subspaces.size());
    for (size_t i = 0; i < subspaces.size(); ++i)
        for (const auto& m : family)
            fingerprints[i].push_back((subspaces[i].adjoint() * m * subspaces[i]).trace() /
                                      static_cast<double>(subspaces[i].cols()));
    std::vector<int> order(subspaces.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        for (size_t f = 0; f < fingerprints[a].size(); ++f) {
            const Complex ca = fingerprints[a][f], cb = fingerprints[b][f];
            if (std::abs(ca - cb) <= tol.spec_tol) continue;
            if (std::abs(ca.real() - cb.real()) > tol.spec_tol) return ca.real() < cb.real();
            return ca.imag() < cb.imag();
        }
        return false;
    });

    std::vector<CMatrix> projectors;
    projectors.reserve(subspaces.size());
    for (int idx : order) projectors.push_back(subspaces[idx] * subspaces[idx].adjoint());
    return projectors;
}

BlockSVD compute_block_svd(const BipartiteOperator& x, const Tolerances& tol,
                           std::uint64_t seed) {
    const BlockSvdCheck chk = has_block_svd(x, tol);
    if (!chk.ok)
        throw NotBlockDiagonalError("compute_block_svd: input has no block SVD");

    const int n = x.shape.n, k = x.shape.k;
    const BlockBasisExpansion exp = expand(x, nullptr, tol);
    const int m = n * n;
    const double scale = std::max(1.0, max_abs(x.mat));

    std::vector<CMatrix> fam1, fam2;
    fam1.reserve(static_cast<size_t>(m) * m);
    fam2.reserve(static_cast<size_t>(m) * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            fam1.push_back(exp.blocks[a] * exp.blocks[b].adjoint());
            fam2.push_back(exp.blocks[a].adjoint() * exp.blocks[b]);
        }
    const std::vector<CMatrix> ps = joint_diagonalize(fam1, tol, seed);
    const std::vector<CMatrix> qs = joint_diagonalize(fam2, tol, seed + 1);

    // Pair final projectors P_i with initial projectors Q_j by the aggregate
    // weight of the compressed blocks P_i X_alpha Q_j.
    const double zero2 = std::pow(tol.eq_tol * scale * 100.0, 2);
    std::vector<int> match(ps.size(), -1);
    std::vector<bool> used(qs.size(), false);
    for (size_t i = 0; i < ps.size(); ++i) {
        double best = 0.0;
        int bestj = -1;
        for (size_t j = 0; j < qs.size(); ++j) {
            double sc = 0.0;
            for (int a = 0; a < m; ++a)
                sc += (ps[i] * exp.blocks[a] * qs[j]).squaredNorm();
            if (sc > best) { best = sc; bestj = static_cast<int>(j); }
        }
        if (best <= zero2) continue;  // kernel projector, no term here
        if (used[bestj])
            throw PairingAmbiguityError("compute_block_svd: projector pairing not unique");
        used[bestj] = true;
        match[i] = bestj;
    }

    BlockSVD out{{n, k}, {}};
    for (size_t i = 0; i < ps.size(); ++i) {
        if (match[i] < 0) continue;
        const CMatrix& q = qs[match[i]];
        // Within the pair, every block compresses to a multiple of a shared
        // partial isometry.
        int best_a = 0;
        double best_nrm = -1.0;
        std::vector<CMatrix> compressed(m);
        for (int a = 0; a < m; ++a) {
            compressed[a] = ps[i] * exp.blocks[a] * q;
            const double nrm = compressed[a].norm();
            if (nrm > best_nrm) { best_nrm = nrm; best_a = a; }
        }
        Eigen::JacobiSVD<CMatrix> svd(compressed[best_a]);
        const double smax = svd.singularValues()(0);
        if (smax <= tol.eq_tol * scale) continue;
        CMatrix isom = compressed[best_a] / smax;
        const CMatrix init = isom.adjoint() * isom;
        if (max_abs_diff(init * init, init) > tol.eq_tol * 1e3)
            throw PairingAmbiguityError("compute_block_svd: extracted block is not a partial isometry");
        const double rank = init.trace().real();

        CMatrix coeff = CMatrix::Zero(n, n);
        for (int a = 0; a < m; ++a) {
            const Complex lam = (isom.adjoint() * exp.blocks[a]).trace() / rank;
            coeff += lam * exp.basis[a];
        }
        if (coeff.norm() <= tol.eq_tol) continue;
        out.terms.push_back({std::move(coeff), std::move(isom)});
    }

    // Merge residual phase-equivalent coefficients (the joint resolution
    // normally fuses these already).
    for (size_t i = 0; i < out.terms.size(); ++i)
        for (size_t j = i + 1; j < out.terms.size();) {
            const Complex ip = (out.terms[i].coeff.adjoint() * out.terms[j].coeff).trace();
            const double ni = out.terms[i].coeff.norm(), nj = out.terms[j].coeff.norm();
            if (std::abs(ip) > 1e-12 &&
                max_abs_diff(out.terms[j].coeff, (ip / std::abs(ip)) * (nj / ni) * out.terms[i].coeff) <=
                    tol.eq_tol * 100.0 &&
                std::abs(ni - nj) <= tol.eq_tol * 100.0) {
                const Complex phase = ip / std::abs(ip);
                out.terms[i].isom += phase * out.terms[j].isom;
                out.terms.erase(out.terms.begin() + j);
            } else {
                ++j;
            }
        }

    if (max_abs_diff(reconstruct(out), x.mat) > 10.0 * tol.eq_tol * scale * 1e3)
        throw InternalInconsistencyError("compute_block_svd: reconstruction failed");
    return out;
}

CMatrix reconstruct(const BlockSVD& d) {
    CMatrix out = CMatrix::Zero(d.shape.dim(), d.shape.dim());
    for (const auto& t : d.terms) out += tensor(t.coeff, t.isom);
    return out;
}

namespace {

// -1 / 0 / +1 fuzzy comparison of complex entries by (Re, Im).
int fuzzy_cmp(Complex a, Complex b, double eps) {
    if (a.real() < b.real() - eps) return -1;
    if (a.real() > b.real() + eps) return 1;
    if (a.imag() < b.imag() - eps) return -1;
    if (a.imag() > b.imag() + eps) return 1;
    return 0;
}

}  // namespace

BlockSVD canonicalize(const BlockSVD& d) {
    BlockSVD out = d;
    for (auto& t : out.terms) {
        // Scale gauge: isometry becomes a genuine partial isometry.
        Eigen::JacobiSVD<CMatrix> svd(t.isom);
        const double s = svd.singularValues()(0);
        if (s > 0) { t.isom /= s; t.coeff *= s; }
        // Phase gauge: largest-magnitude coefficient entry real positive.
        Complex lead = 0.0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < t.coeff.rows(); ++i)
            for (Eigen::Index j = 0; j < t.coeff.cols(); ++j)
                if (std::abs(t.coeff(i, j)) > best + 1e-12) {
                    best = std::abs(t.coeff(i, j));
                    lead = t.coeff(i, j);
                }
        if (best > 0) {
            const Complex phase = lead / std::abs(lead);
            t.coeff /= phase;
            t.isom *= phase;
        }
    }
    const double eps = 1e-8;
    std::sort(out.terms.begin(), out.terms.end(), [&](const BlockTerm& a, const BlockTerm& b) {
        const double na = a.coeff.norm(), nb = b.coeff.norm();
        if (std::abs(na - nb) > eps) return na > nb;
        for (Eigen::Index i = 0; i < a.coeff.rows(); ++i)
            for (Eigen::Index j = 0; j < a.coeff.cols(); ++j) {
                const int c = fuzzy_cmp(a.coeff(i, j), b.coeff(i, j), eps);
                if (c != 0) return c < 0;
            }
        return false;
    });
    return out;
}

}  // namespace uniclass
