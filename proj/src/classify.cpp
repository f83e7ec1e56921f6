#include "uniclass/classify.hpp"

#include "uniclass/generate.hpp"
#include "uniclass/json_io.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace uniclass {

using nlohmann::json;

std::string to_string(Ternary t) {
    switch (t) {
        case Ternary::Yes: return "yes";
        case Ternary::No: return "no";
        default: return "unknown";
    }
}

namespace {

void require_unitary(const BipartiteOperator& u, const Tolerances& tol) {
    check_bipartite(u);
    if (!is_unitary(u.mat, tol))
        throw std::invalid_argument("classify: input operator is not unitary");
}

Verdict yes(json witness) { return {Ternary::Yes, false, std::move(witness)}; }
Verdict no(json witness) { return {Ternary::No, false, std::move(witness)}; }
Verdict unknown(json witness = json::object()) {
    return {Ternary::Unknown, false, std::move(witness)};
}

}  // namespace

Verdict is_aut(const BipartiteOperator& u, const Tolerances& tol) {
    require_unitary(u, tol);
    const int n = u.shape.n, k = u.shape.k;
    const auto schmidt = operator_schmidt(u);

    // The weights are the singular values of the realignment (n^2 x k^2).
    const double cutoff = tol.rank_tol_factor *
                          std::max(n * n, k * k) * schmidt[0].weight *
                          std::numeric_limits<double>::epsilon();
    int rank = 0;
    for (const auto& t : schmidt)
        if (t.weight > cutoff) ++rank;
    if (rank != 1) {
        return no({{"schmidt_rank", rank},
                   {"second_weight", schmidt.size() > 1 ? schmidt[1].weight : 0.0}});
    }

    CMatrix v = std::sqrt(static_cast<double>(n)) * schmidt[0].a;
    CMatrix w = std::sqrt(static_cast<double>(k)) * schmidt[0].b;
    // weight sqrt(nk) folds into the normalizations; fix the phase gauge on V
    Complex lead = 0.0;
    double best = -1.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (std::abs(v(i, j)) > best + 1e-12) { best = std::abs(v(i, j)); lead = v(i, j); }
    const Complex phase = lead / std::abs(lead);
    v /= phase;
    w *= phase * schmidt[0].weight / std::sqrt(static_cast<double>(n * k));
    return yes({{"v", cmatrix_to_json(v)}, {"w", cmatrix_to_json(w)}});
}

Verdict is_const(const BipartiteOperator& u, const Tolerances& tol) {
    require_unitary(u, tol);
    const int n = u.shape.n, k = u.shape.k;
    if (k % n != 0)
        return no({{"reason", "dimension obstruction"}, {"n", n}, {"k", k}});

    const auto betas = spanning_densities(k);
    json outputs = json::array();
    CMatrix eab = CMatrix::Zero(n, n);
    for (const auto& beta : betas) {
        const StinespringChannel ch{u, {k, beta}};
        CMatrix ref;  // L(E_00), the would-be constant output
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                eab(a, b) = 1.0;
                const CMatrix out = uniclass::apply(ch, eab);
                eab(a, b) = 0.0;
                if (a != b) {
                    if (max_abs(out) > tol.eq_tol)
                        return no({{"violating_input", {a, b}},
                                   {"norm", max_abs(out)}});
                } else if (a == 0) {
                    ref = out;
                } else if (max_abs_diff(out, ref) > tol.eq_tol) {
                    return no({{"violating_input", {a, a}},
                               {"norm", max_abs_diff(out, ref)}});
                }
            }
        outputs.push_back(cmatrix_to_json(ref));
    }
    return yes({{"constant_outputs", outputs}});
}

Verdict is_unital_member(const BipartiteOperator& u, const Tolerances& tol) {
    require_unitary(u, tol);
    const CMatrix g = partial_transpose_B(u).mat;
    const CMatrix id = identity(u.shape.dim());
    const double defect = std::max(max_abs_diff(g * g.adjoint(), id),
                                   max_abs_diff(g.adjoint() * g, id));
    json w = {{"gamma_unitarity_defect", defect}};
    return defect <= tol.eq_tol ? yes(std::move(w)) : no(std::move(w));
}

namespace {

Verdict block_verdict(const BipartiteOperator& u, const Tolerances& tol) {
    const BlockSvdCheck chk = has_block_svd(u, tol);
    if (!chk.ok) {
        const auto& w = *chk.witness;
        return no({{"commutator",
                    {{"a", w.a}, {"b", w.b}, {"c", w.c}, {"d", w.d},
                     {"star_side", w.star_side}, {"norm", w.norm}}}});
    }
    const BlockSVD d = canonicalize(compute_block_svd(u, tol));
    return yes({{"block_svd", blocksvd_to_json(d)}});
}

}  // namespace

Verdict is_block_diag_A(const BipartiteOperator& u, const Tolerances& tol) {
    require_unitary(u, tol);
    return block_verdict(u, tol);
}

Verdict is_block_diag_B(const BipartiteOperator& u, const Tolerances& tol) {
    require_unitary(u, tol);
    return block_verdict(swap_factors(u), tol);
}

namespace {

// Split the partial isometries of a block SVD into rank-one dyads,
// accumulating two orthonormal bases (left and right supports).
void collect_dyads(const BlockSVD& d, std::vector<CVector>& lefts,
                   std::vector<CVector>& rights) {
    for (const auto& t : d.terms) {
        Eigen::JacobiSVD<CMatrix> svd(t.isom, Eigen::ComputeThinU | Eigen::ComputeThinV);
        for (Eigen::Index m = 0; m < svd.singularValues().size(); ++m) {
            if (svd.singularValues()(m) < 0.5) break;
            lefts.push_back(svd.matrixU().col(m));
            rights.push_back(svd.matrixV().col(m));
        }
    }
}

}  // namespace

Verdict decompose_AB(const BipartiteOperator& u, const Tolerances& tol) {
    require_unitary(u, tol);
    const int n = u.shape.n, k = u.shape.k;

    const BlockSvdCheck a_chk = has_block_svd(u, tol);
    if (!a_chk.ok) return no({{"failed_side", "A"}});
    const BipartiteOperator swapped = swap_factors(u);
    const BlockSvdCheck b_chk = has_block_svd(swapped, tol);
    if (!b_chk.ok) return no({{"failed_side", "B"}});

    const BlockSVD da = canonicalize(compute_block_svd(u, tol));
    const BlockSVD db = canonicalize(compute_block_svd(swapped, tol));

    // B-side isometries act on C^n, A-side isometries on C^k.
    std::vector<CVector> e, f, g, h;
    collect_dyads(db, e, f);
    collect_dyads(da, g, h);
    if (static_cast<int>(e.size()) != n || static_cast<int>(g.size()) != k)
        return no({{"reason", "isometry supports do not resolve into full bases"}});

    CMatrix lambda(n, k);
    CMatrix recon = CMatrix::Zero(n * k, n * k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) {
            CVector left(n * k), right(n * k);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < k; ++b) {
                    left(a * k + b) = e[i](a) * g[j](b);
                    right(a * k + b) = f[i](a) * h[j](b);
                }
            lambda(i, j) = left.adjoint() * u.mat * right;
            if (std::abs(std::abs(lambda(i, j)) - 1.0) > 1e3 * tol.eq_tol)
                return no({{"reason", "non-unimodular coefficient"},
                           {"abs", std::abs(lambda(i, j))}});
            recon += lambda(i, j) * (left * right.adjoint());
        }
    if (max_abs_diff(recon, u.mat) > 1e3 * tol.eq_tol)
        return no({{"reason", "reconstruction failed"}});

    json basis_e = json::array(), basis_f = json::array(), basis_g = json::array(),
         basis_h = json::array();
    for (const auto& x : e) basis_e.push_back(cmatrix_to_json(x));
    for (const auto& x : f) basis_f.push_back(cmatrix_to_json(x));
    for (const auto& x : g) basis_g.push_back(cmatrix_to_json(x));
    for (const auto& x : h) basis_h.push_back(cmatrix_to_json(x));
    return yes({{"lambda", cmatrix_to_json(lambda)},
                {"e", basis_e}, {"f", basis_f}, {"g", basis_g}, {"h", basis_h}});
}

namespace {

double min_eig_of_cppt_form(const CMatrix& middle_factor, int n, int k) {
    const CMatrix lifted = tensor(identity(n), middle_factor);
    const CMatrix form = lifted * tensor(flip(n), identity(k)) * lifted.adjoint();
    Eigen::SelfAdjointEigenSolver<CMatrix> es((form + form.adjoint()) / 2.0);
    return es.eigenvalues().minCoeff();
}

}  // namespace

Verdict is_cppt(const BipartiteOperator& u, const Tolerances& tol) {
    require_unitary(u, tol);
    const double min_eig =
        min_eig_of_cppt_form(partial_transpose_B(u).mat, u.shape.n, u.shape.k);
    json w = {{"min_eigenvalue", min_eig}};
    return min_eig >= -tol.eq_tol ? yes(std::move(w)) : no(std::move(w));
}

Verdict cppt_projection_check(const CMatrix& p, const BipartiteShape& shape,
                              const Tolerances& tol) {
    if (p.rows() != shape.dim() || p.cols() != shape.dim())
        throw DimensionError("cppt_projection_check: projection must be nk x nk");
    if (max_abs_diff(p, p.adjoint()) > tol.eq_tol ||
        max_abs_diff(p * p, p) > tol.eq_tol)
        throw NotAProjectionError("cppt_projection_check: not an orthogonal projection");
    // (I (x) P) F (x) I (I (x) P); P Hermitian so no adjoint needed
    const double min_eig = min_eig_of_cppt_form(p, shape.n, shape.k);
    json w = {{"min_eigenvalue", min_eig}};
    return min_eig >= -tol.eq_tol ? yes(std::move(w)) : no(std::move(w));
}

namespace {

// Certified infeasibility of |l_j(c)| = 1 for all j, for linear forms given
// by the rows of L, via an exhaustive grid on the unit sphere of C^k modulo
// a global phase with a Lipschitz bound per cell. Only k <= 3 is gridded.
// Returns the certified upper bound on sup_c min|l|/max|l|, or a negative
// number when certification is unavailable.
double certified_ratio_bound(const CMatrix& forms, int budget) {
    const int nforms = static_cast<int>(forms.rows());
    const int k = static_cast<int>(forms.cols());
    if (k > 3) return -1.0;

    Eigen::JacobiSVD<CMatrix> svd(forms);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    if (smin < 1e-8) return -1.0;  // forms share a kernel; no uniform floor
    const double g_lb = smin / std::sqrt(static_cast<double>(nforms));

    double lip = 0.0;
    for (int j = 0; j < nforms; ++j) lip = std::max(lip, forms.row(j).norm());

    auto ratio_bound_at = [&](const CVector& c, double delta) {
        double h = std::numeric_limits<double>::infinity(), g = 0.0;
        for (int j = 0; j < nforms; ++j) {
            const double v = std::abs(forms.row(j).dot(c.conjugate()));
            h = std::min(h, v);
            g = std::max(g, v);
        }
        const double num = h + lip * delta;
        const double den = std::max(g - lip * delta, g_lb);
        return num / den;
    };

    const double two_pi = 2.0 * std::numbers::pi;
    double bound = 0.0;
    if (k == 1) {
        CVector c(1);
        c(0) = 1.0;
        bound = ratio_bound_at(c, 0.0);
    } else if (k == 2) {
        const int nt = 160 + 8 * budget, np = 320 + 16 * budget;
        const double dt = (std::numbers::pi / 2) / nt, dp = two_pi / np;
        const double delta = 0.5 * std::hypot(dt, dp);
        CVector c(2);
        for (int it = 0; it <= nt; ++it) {
            const double t = it * dt;
            for (int ip = 0; ip < np; ++ip) {
                const double phi = ip * dp;
                c(0) = std::cos(t);
                c(1) = std::sin(t) * Complex(std::cos(phi), std::sin(phi));
                bound = std::max(bound, ratio_bound_at(c, delta));
            }
        }
    } else {  // k == 3
        const int na = 24 + budget, np = 48 + 2 * budget;
        const double da = (std::numbers::pi / 2) / na, dp = two_pi / np;
        const double delta = 0.5 * std::sqrt(2 * da * da + 2 * dp * dp);
        CVector c(3);
        for (int it = 0; it <= na; ++it)
            for (int is = 0; is <= na; ++is)
                for (int p1 = 0; p1 < np; ++p1)
                    for (int p2 = 0; p2 < np; ++p2) {
                        const double t = it * da, s = is * da;
                        c(0) = std::cos(t);
                        c(1) = std::sin(t) * std::cos(s) *
                               Complex(std::cos(p1 * dp), std::sin(p1 * dp));
                        c(2) = std::sin(t) * std::sin(s) *
                               Complex(std::cos(p2 * dp), std::sin(p2 * dp));
                        bound = std::max(bound, ratio_bound_at(c, delta));
                    }
    }
    return bound;
}

double sv_ratio(const CMatrix& m) {
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    return smax > 0 ? sv(sv.size() - 1) / smax : 0.0;
}

// Alternating projections between the span of the Kraus family and the
// unitary group; returns the best min/max singular value ratio found.
double search_unitary_in_span(const std::vector<CMatrix>& ops, int budget, Rng& rng) {
    const int k = static_cast<int>(ops.size());
    const int n = static_cast<int>(ops[0].rows());
    CMatrix gram(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) gram(i, j) = (ops[i].adjoint() * ops[j]).trace();
    const Eigen::FullPivLU<CMatrix> gram_lu(gram);

    double best = 0.0;
    for (int trial = 0; trial < std::max(4, budget); ++trial) {
        CVector c(k);
        for (int i = 0; i < k; ++i) c(i) = rng.cgauss();
        c /= c.norm();
        for (int iter = 0; iter < 60; ++iter) {
            CMatrix m = CMatrix::Zero(n, n);
            for (int i = 0; i < k; ++i) m += c(i) * ops[i];
            best = std::max(best, sv_ratio(m));
            Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
            const CMatrix target = svd.matrixU() * svd.matrixV().adjoint();
            CVector rhs(k);
            for (int i = 0; i < k; ++i) rhs(i) = (ops[i].adjoint() * target).trace();
            const CVector next = gram_lu.solve(rhs);
            if (next.norm() < 1e-14) break;
            if ((next - c).norm() < 1e-13 * next.norm()) { c = next; break; }
            c = next;
        }
        CMatrix m = CMatrix::Zero(n, n);
        for (int i = 0; i < k; ++i) m += c(i) * ops[i];
        best = std::max(best, sv_ratio(m));
        if (best > 1.0 - 1e-9) break;
    }
    return best;
}

}  // namespace

Verdict mixed_necessary(const BipartiteOperator& u, const CVector& f,
                        const Tolerances& tol, int budget) {
    require_unitary(u, tol);
    const int k = u.shape.k;
    if (f.size() != k || std::abs(f.norm() - 1.0) > tol.eq_tol)
        throw std::invalid_argument("mixed_necessary: f must be a unit vector in C^k");

    const KrausFamily fam = kraus_from_env_vector(u, f, identity(k), tol);
    const auto& ops = fam.ops;

    // Span trivially meets the unitary group when one generator is a scaled
    // unitary.
    for (const auto& e : ops) {
        Eigen::JacobiSVD<CMatrix> svd(e);
        const auto& sv = svd.singularValues();
        if (sv(0) > tol.eq_tol && sv(sv.size() - 1) / sv(0) > 1.0 - 1e-7)
            return unknown({{"reason", "span contains a scaled unitary generator"}});
    }

    // Certified path: a commuting normal family reduces to unimodularity of
    // linear forms on the joint eigenspaces.
    bool commuting_normal = true;
    {
        double s = 1.0;
        for (const auto& e : ops) s = std::max(s, max_abs(e));
        for (size_t a = 0; a < ops.size() && commuting_normal; ++a) {
            if (max_abs(ops[a] * ops[a].adjoint() - ops[a].adjoint() * ops[a]) >
                tol.eq_tol * s * s)
                commuting_normal = false;
            for (size_t b = a + 1; b < ops.size() && commuting_normal; ++b)
                if (max_abs(ops[a] * ops[b] - ops[b] * ops[a]) > tol.eq_tol * s * s)
                    commuting_normal = false;
        }
    }
    if (commuting_normal) {
        const auto projectors = joint_diagonalize(ops, tol, 11);
        CMatrix forms(projectors.size(), k);
        for (size_t j = 0; j < projectors.size(); ++j) {
            const double dimp = projectors[j].trace().real();
            for (int i = 0; i < k; ++i)
                forms(j, i) = (projectors[j] * ops[i]).trace() / dimp;
        }
        const double bound = certified_ratio_bound(forms, budget);
        if (bound >= 0.0 && bound < 1.0 - 10.0 * tol.eq_tol) {
            Verdict v = no({{"path", "diagonal-grid"},
                            {"certified_upper_bound", bound},
                            {"forms", cmatrix_to_json(forms)}});
            return v;
        }
        if (bound >= 0.0)
            return unknown({{"path", "diagonal-grid"},
                            {"certified_upper_bound", bound}});
        // fall through to the heuristic search when no grid floor exists
    }

    Rng rng(17);
    const double best = search_unitary_in_span(ops, budget * 4, rng);
    if (best > 1.0 - 1e-6)
        return unknown({{"path", "span-search"}, {"best_ratio", best},
                        {"reason", "search reached the unitary group"}});
    if (best < 0.9) {
        Verdict v = no({{"path", "span-search"}, {"best_ratio", best}});
        v.heuristic = true;
        return v;
    }
    return unknown({{"path", "span-search"}, {"best_ratio", best}});
}

ClassReport classify_all(const BipartiteOperator& u, const Tolerances& tol, int budget) {
    require_unitary(u, tol);
    const int n = u.shape.n, k = u.shape.k;
    ClassReport rep{u.shape, {}};

    Verdict aut = is_aut(u, tol);
    rep.verdicts["aut"] = aut;
    rep.verdicts["single"] = aut;

    Verdict unital = is_unital_member(u, tol);
    rep.verdicts["unital"] = unital;

    Verdict block_a = is_block_diag_A(u, tol);
    Verdict block_b = is_block_diag_B(u, tol);
    rep.verdicts["block_diag_A"] = block_a;
    rep.verdicts["block_diag_B"] = block_b;
    rep.verdicts["prob_lin"] = block_a;  // the two classes coincide
    rep.verdicts["block_diag_AB"] =
        (block_a.value == Ternary::Yes && block_b.value == Ternary::Yes)
            ? decompose_AB(u, tol)
            : no({{"reason", "not in both block classes"}});

    rep.verdicts["const"] = is_const(u, tol);
    Verdict cppt = is_cppt(u, tol);
    rep.verdicts["cppt"] = cppt;

    // eb_qubit: CPPT implies PPT for every beta, and PPT decides separability
    // for qubit output. Otherwise sample for a counterexample.
    if (n != 2) {
        rep.verdicts["eb_qubit"] = unknown({{"reason", "qubit-output criterion only"}});
    } else if (cppt.value == Ternary::Yes) {
        rep.verdicts["eb_qubit"] = yes({{"via", "cppt"}});
    } else {
        Verdict v = unknown({{"reason", "no PPT violation found on sampled states"}});
        Rng rng(23);
        std::vector<CMatrix> betas = spanning_densities(k);
        for (int t = 0; t < 8; ++t) {
            const CVector g = haar_unit_vector(k, rng);
            betas.push_back(g * g.adjoint());
        }
        for (const auto& beta : betas) {
            if (!is_ppt_channel({u, {k, beta}}, tol)) {
                v = no({{"violating_beta", cmatrix_to_json(beta)}});
                break;
            }
        }
        rep.verdicts["eb_qubit"] = v;
    }

    // mixed: membership implications first, then the qubit/k=2 collapse,
    // then the necessary-condition sweep over environment vectors.
    if (aut.value == Ternary::Yes || block_a.value == Ternary::Yes) {
        rep.verdicts["mixed_necessary"] = yes({{"via", "block-diagonal inclusion chain"}});
    } else if (unital.value == Ternary::No) {
        rep.verdicts["mixed_necessary"] =
            no({{"via", "mixed channels are unital"}});
    } else if (n == 2) {
        Verdict v = unital;
        v.witness = {{"via", "unital-mixed collapse for qubit output"},
                     {"gamma_unitarity_defect", unital.witness.value("gamma_unitarity_defect", 0.0)}};
        rep.verdicts["mixed_necessary"] = v;
    } else {
        Verdict v = unknown({{"reason", "necessary condition not violated"}});
        Rng rng(31);
        std::vector<CVector> fs;
        for (int i = 0; i < k; ++i) {
            CVector e = CVector::Zero(k);
            e(i) = 1.0;
            fs.push_back(e);
        }
        for (int t = 0; t < budget; ++t) fs.push_back(haar_unit_vector(k, rng));
        for (const auto& f : fs) {
            Verdict trial = mixed_necessary(u, f, tol, budget);
            if (trial.value == Ternary::No) { v = trial; break; }
        }
        rep.verdicts["mixed_necessary"] = v;
    }

    // Consistency of the report with the inclusion structure.
    auto val = [&](const char* name) { return rep.verdicts.at(name).value; };
    if (val("aut") == Ternary::Yes && val("single") != Ternary::Yes)
        throw InternalInconsistencyError("aut=yes requires single=yes");
    if (val("block_diag_A") == Ternary::Yes) {
        if (val("unital") != Ternary::Yes)
            throw InternalInconsistencyError("block_diag_A=yes requires unital=yes");
        if (val("prob_lin") != Ternary::Yes)
            throw InternalInconsistencyError("block_diag_A=yes requires prob_lin=yes");
        if (val("mixed_necessary") == Ternary::No)
            throw InternalInconsistencyError("block_diag_A=yes contradicts mixed=no");
    }
    if (val("aut") == Ternary::Yes &&
        (val("unital") != Ternary::Yes || val("block_diag_A") != Ternary::Yes ||
         val("block_diag_B") != Ternary::Yes))
        throw InternalInconsistencyError("product unitary must be unital and block-diagonal");
    if (n >= 2 && val("cppt") == Ternary::Yes && val("unital") == Ternary::Yes)
        throw InternalInconsistencyError("cppt and unital are disjoint for n >= 2");
    if (val("mixed_necessary") == Ternary::Yes && val("unital") != Ternary::Yes)
        throw InternalInconsistencyError("mixed=yes requires unital=yes");
    if (n >= 2 && val("const") == Ternary::Yes && val("unital") == Ternary::Yes)
        throw InternalInconsistencyError("const=yes contradicts unital=yes for n >= 2");
    return rep;
}

}  // namespace uniclass
