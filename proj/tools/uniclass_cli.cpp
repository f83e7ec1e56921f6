// uniclass — command-line front end: generate operators, classify them,
// compute block SVDs and dimension reports, run batch studies.
//
// Exit codes: 0 ok, 2 usage/parse error, 3 invalid operator,
// 4 negative decomposition result.

#include "uniclass/blocksvd.hpp"
#include "uniclass/channels.hpp"
#include "uniclass/classify.hpp"
#include "uniclass/generate.hpp"
#include "uniclass/json_io.hpp"
#include "uniclass/study.hpp"
#include "uniclass/tangent.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using nlohmann::json;
using namespace uniclass;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("UNICLASS_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw CLI::ValidationError("UNICLASS_SEED", "not an unsigned integer");
        }
    }
    return 1;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_output(const json& j, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << j.dump(2) << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot open " + out_path);
        out << j.dump(2) << '\n';
    }
}

struct ExitCode {
    int code;
};

int run(int argc, char** argv) {
    CLI::App app{"bipartite unitary generators, classifiers and decompositions"};
    app.require_subcommand(1);

    Tolerances tol;
    int budget = 8;
    app.add_option("--eq-tol", tol.eq_tol, "entrywise comparison tolerance");
    app.add_option("--spec-tol", tol.spec_tol, "eigenvalue clustering tolerance");
    app.add_option("--budget", budget, "search budget for heuristic checks");

    // generate
    auto* gen = app.add_subcommand("generate", "sample or look up an operator");
    std::string gen_kind, cx_name, gen_out;
    int gn = 2, gk = 2, gp = 1, gr = 1;
    std::uint64_t seed = default_seed();
    gen->add_option("kind", gen_kind,
                    "product | haar | block_a | block_b | const | circulant | "
                    "both_block | eb | counterexample")
        ->required();
    gen->add_option("--n", gn);
    gen->add_option("--k", gk);
    gen->add_option("--p", gp, "distinct block count (block_a/block_b)");
    gen->add_option("--r", gr, "environment factor (const; k = n*r)");
    gen->add_option("--seed", seed);
    gen->add_option("--name", cx_name, "counterexample name");
    gen->add_option("-o,--out", gen_out, "output path (default stdout)");

    // classify
    auto* cls = app.add_subcommand("classify", "full class report for an operator");
    std::string cls_in;
    cls->add_option("input", cls_in, "BipartiteOperator JSON file")->required();

    // blocksvd
    auto* bsv = app.add_subcommand("blocksvd", "block SVD or failure witness");
    std::string bsv_in, bsv_side = "A";
    bsv->add_option("input", bsv_in, "BipartiteOperator JSON file")->required();
    bsv->add_option("--side", bsv_side, "A or B")->check(CLI::IsMember({"A", "B"}));

    // dimension
    auto* dim = app.add_subcommand("dimension", "tangent/variety dimension reports");
    std::string dim_mode, dim_in;
    int dn = 2, dk = 2;
    std::uint64_t dim_seed = default_seed();
    dim->add_option("mode", dim_mode, "enveloping | formulas | mblockdiag")
        ->required()
        ->check(CLI::IsMember({"enveloping", "formulas", "mblockdiag"}));
    dim->add_option("--n", dn);
    dim->add_option("--k", dk);
    dim->add_option("--input", dim_in, "operator file (enveloping mode)");
    dim->add_option("--seed", dim_seed);

    // study
    auto* stu = app.add_subcommand("study", "batch study over shapes x generators");
    std::string stu_spec, stu_csv;
    stu->add_option("spec", stu_spec, "StudySpec JSON file")->required();
    stu->add_option("--csv", stu_csv, "CSV output path (default stderr summary only)");

    app.parse(argc, argv);

    if (*gen) {
        BipartiteOperator u{{1, 1}, CMatrix::Identity(1, 1)};
        if (gen_kind == "counterexample") {
            auto all = paper_counterexamples();
            const auto it = all.find(cx_name);
            if (it == all.end())
                throw CLI::ValidationError("--name", "unknown counterexample " + cx_name);
            u = it->second;
        } else {
            GeneratorSpec gs{gen_kind, gp, gr};
            BipartiteShape shape{gn, gk};
            if (gen_kind == "const") shape.k = gn * gr;
            std::string why;
            auto sample = make_sample(shape, gs, seed, &why);
            if (!sample)
                throw CLI::ValidationError("generate", why);
            u = *sample;
        }
        write_output(bipartite_to_json(u), gen_out);
        std::cerr << "generated " << gen_kind << " with shape (" << u.shape.n << ", "
                  << u.shape.k << ")\n";
        return 0;
    }

    if (*cls) {
        const BipartiteOperator u = bipartite_from_json(read_json_file(cls_in));
        if (!is_unitary(u.mat, tol)) {
            std::cerr << "input operator is not unitary within tolerance\n";
            return 3;
        }
        const ClassReport rep = classify_all(u, tol, budget);
        std::cout << report_to_json(rep).dump(2) << '\n';
        std::cerr << "classified (" << u.shape.n << ", " << u.shape.k << "):";
        for (const auto& [name, v] : rep.verdicts)
            std::cerr << ' ' << name << '=' << to_string(v.value);
        std::cerr << '\n';
        return 0;
    }

    if (*bsv) {
        BipartiteOperator u = bipartite_from_json(read_json_file(bsv_in));
        if (bsv_side == "B") u = swap_factors(u);
        const BlockSvdCheck chk = has_block_svd(u, tol);
        if (!chk.ok) {
            const auto& w = *chk.witness;
            const json out = {{"ok", false},
                              {"witness",
                               {{"a", w.a}, {"b", w.b}, {"c", w.c}, {"d", w.d},
                                {"star_side", w.star_side}, {"norm", w.norm}}}};
            std::cout << out.dump(2) << '\n';
            std::cerr << "no block decomposition on side " << bsv_side << '\n';
            return 4;
        }
        const BlockSVD d = canonicalize(compute_block_svd(u, tol));
        std::cout << blocksvd_to_json(d).dump(2) << '\n';
        std::cerr << d.terms.size() << " term(s) on side " << bsv_side << '\n';
        return 0;
    }

    if (*dim) {
        json out;
        if (dim_mode == "formulas") {
            const VarietyDims v = variety_dim_formulas(dn, dk);
            out = {{"n", dn},
                   {"k", dk},
                   {"dim_U_block_diag_A", v.dim_U_block_diag_A},
                   {"dim_intersection", v.dim_intersection},
                   {"dim_M_block_diag_A", v.dim_M_block_diag_A},
                   {"conjectured_dim_U_unital", v.conjectured_dim_U_unital}};
        } else if (dim_mode == "mblockdiag") {
            out = {{"n", dn}, {"k", dk},
                   {"dim", mblockdiag_dim_numeric(dn, dk, dim_seed)}};
        } else {
            if (dim_in.empty())
                throw CLI::ValidationError("--input", "required for enveloping mode");
            const BipartiteOperator u = bipartite_from_json(read_json_file(dim_in));
            if (!is_unitary(u.mat, tol)) {
                std::cerr << "input operator is not unitary within tolerance\n";
                return 3;
            }
            const DimensionReport rep = enveloping_dim_report(u, tol);
            out = {{"analytic", rep.analytic},
                   {"numeric", rep.numeric},
                   {"agree", rep.agree}};
        }
        std::cout << out.dump(2) << '\n';
        return 0;
    }

    if (*stu) {
        StudySpec spec = study_spec_from_json(read_json_file(stu_spec));
        spec.tol = tol;
        spec.budget = budget;
        const StudyResult res = run_study(spec);
        std::cout << study_to_json(spec, res).dump(2) << '\n';
        if (!stu_csv.empty()) {
            std::ofstream csv(stu_csv);
            if (!csv) throw std::invalid_argument("cannot open " + stu_csv);
            csv << study_to_csv(spec, res);
        }
        std::cerr << res.cells.size() << " cell(s), " << res.total_violations
                  << " violation(s)\n";
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        CLI::App dummy;
        const int rc = dummy.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const NotBlockDiagonalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
