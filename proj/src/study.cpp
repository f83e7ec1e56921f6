#include "uniclass/study.hpp"

#include "uniclass/classify.hpp"
#include "uniclass/generate.hpp"

#include <array>
#include <sstream>

namespace uniclass {

using nlohmann::json;

StudySpec study_spec_from_json(const json& j) {
    StudySpec s;
    for (const auto& sh : j.at("shapes"))
        s.shapes.push_back({sh.at(0).get<int>(), sh.at(1).get<int>()});
    for (const auto& g : j.at("generators")) {
        GeneratorSpec gs;
        gs.name = g.at("name").get<std::string>();
        gs.p = g.value("p", 1);
        gs.r = g.value("r", 1);
        s.generators.push_back(gs);
    }
    s.samples_per_cell = j.at("samples_per_cell").get<int>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.checks = j.at("checks").get<std::vector<std::string>>();
    s.budget = j.value("budget", 8);
    if (s.shapes.empty() || s.samples_per_cell < 1)
        throw std::invalid_argument("study spec: shapes nonempty, samples >= 1");
    return s;
}

std::optional<BipartiteOperator> make_sample(const BipartiteShape& shape,
                                             const GeneratorSpec& gen,
                                             std::uint64_t seed, std::string* why) {
    const int n = shape.n, k = shape.k;
    auto fail = [&](const std::string& reason) -> std::optional<BipartiteOperator> {
        if (why) *why = reason;
        return std::nullopt;
    };
    if (gen.name == "product") return product_unitary(n, k, seed);
    if (gen.name == "haar") return BipartiteOperator{shape, haar_unitary(n * k, seed)};
    if (gen.name == "block_a") {
        if (gen.p < 1 || gen.p > k) return fail("p out of range");
        return block_diag_A(n, k, gen.p, seed);
    }
    if (gen.name == "block_b") {
        if (gen.p < 1 || gen.p > n) return fail("p out of range");
        return block_diag_B(n, k, gen.p, seed);
    }
    if (gen.name == "const") {
        if (k % n != 0) return fail("dimension obstruction: k not a multiple of n");
        const int r = k / n;
        return const_unitary(n, r, seed);
    }
    if (gen.name == "circulant")
        return BipartiteOperator{shape, circulant_unitary(n * k, seed)};
    if (gen.name == "both_block") return both_block(n, k, seed);
    if (gen.name == "eb") {
        if (n != k) return fail("eb example needs n = k");
        return eb_example(n, seed);
    }
    throw std::invalid_argument("unknown generator: " + gen.name);
}

namespace {

Ternary verdict_of(const ClassReport& rep, const std::string& name) {
    const auto it = rep.verdicts.find(name);
    return it == rep.verdicts.end() ? Ternary::Unknown : it->second.value;
}

// Inclusion-chain implications plus generator label soundness.
int count_violations(const ClassReport& rep, const GeneratorSpec& gen) {
    int v = 0;
    const int n = rep.shape.n;
    auto val = [&](const char* name) { return verdict_of(rep, name); };
    if (val("block_diag_A") == Ternary::Yes &&
        (val("prob_lin") != Ternary::Yes || val("unital") != Ternary::Yes ||
         val("mixed_necessary") == Ternary::No))
        ++v;
    if (val("aut") == Ternary::Yes &&
        (val("block_diag_A") != Ternary::Yes || val("block_diag_B") != Ternary::Yes ||
         val("unital") != Ternary::Yes))
        ++v;
    if (n >= 2 && val("cppt") == Ternary::Yes && val("unital") == Ternary::Yes) ++v;
    if (n >= 2 && val("const") == Ternary::Yes && val("unital") == Ternary::Yes) ++v;
    if (n == 2 && val("block_diag_B") == Ternary::Yes &&
        val("block_diag_A") != Ternary::Yes)
        ++v;

    if (gen.name == "product" && val("aut") != Ternary::Yes) ++v;
    if ((gen.name == "block_a" || gen.name == "both_block") &&
        val("block_diag_A") != Ternary::Yes)
        ++v;
    if ((gen.name == "block_b" || gen.name == "both_block" ||
         gen.name == "circulant") &&
        val("block_diag_B") != Ternary::Yes)
        ++v;
    if (gen.name == "const" && val("const") != Ternary::Yes) ++v;
    if (gen.name == "const" && val("cppt") != Ternary::Yes) ++v;
    return v;
}

}  // namespace

StudyResult run_study(const StudySpec& spec) {
    StudyResult res;
    int cell_index = 0;
    for (const auto& shape : spec.shapes)
        for (const auto& gen : spec.generators) {
            StudyCell cell;
            cell.shape = shape;
            cell.generator = gen;
            cell.status = "ok";
            cell.counts.assign(spec.checks.size(), {0, 0, 0});
            std::string why;
            for (int s = 0; s < spec.samples_per_cell; ++s) {
                const std::uint64_t seed =
                    spec.seed + 100003ull * static_cast<std::uint64_t>(cell_index) +
                    static_cast<std::uint64_t>(s) + 1;
                const auto u = make_sample(shape, gen, seed, &why);
                if (!u) {
                    cell.status = why;
                    break;
                }
                ClassReport rep;
                try {
                    rep = classify_all(*u, spec.tol, spec.budget);
                } catch (const InternalInconsistencyError&) {
                    ++cell.violations;
                    continue;
                }
                ++cell.samples;
                for (size_t c = 0; c < spec.checks.size(); ++c) {
                    switch (verdict_of(rep, spec.checks[c])) {
                        case Ternary::Yes: ++cell.counts[c][0]; break;
                        case Ternary::No: ++cell.counts[c][1]; break;
                        default: ++cell.counts[c][2]; break;
                    }
                }
                cell.violations += count_violations(rep, gen);
            }
            res.total_violations += cell.violations;
            res.cells.push_back(std::move(cell));
            ++cell_index;
        }
    return res;
}

json study_to_json(const StudySpec& spec, const StudyResult& res) {
    json cells = json::array();
    for (const auto& cell : res.cells) {
        json counts = json::object();
        for (size_t c = 0; c < spec.checks.size(); ++c)
            counts[spec.checks[c]] = {{"yes", cell.counts[c][0]},
                                      {"no", cell.counts[c][1]},
                                      {"unknown", cell.counts[c][2]}};
        cells.push_back({{"n", cell.shape.n},
                         {"k", cell.shape.k},
                         {"generator", cell.generator.name},
                         {"status", cell.status},
                         {"samples", cell.samples},
                         {"counts", counts},
                         {"violations", cell.violations}});
    }
    return {{"cells", cells}, {"total_violations", res.total_violations}};
}

std::string study_to_csv(const StudySpec& spec, const StudyResult& res) {
    std::ostringstream out;
    out << "n,k,generator,status,samples,check,yes,no,unknown,violations\n";
    for (const auto& cell : res.cells) {
        if (spec.checks.empty()) {
            out << cell.shape.n << ',' << cell.shape.k << ',' << cell.generator.name
                << ',' << '"' << cell.status << '"' << ',' << cell.samples
                << ",,,,," << cell.violations << '\n';
            continue;
        }
        for (size_t c = 0; c < spec.checks.size(); ++c)
            out << cell.shape.n << ',' << cell.shape.k << ',' << cell.generator.name
                << ',' << '"' << cell.status << '"' << ',' << cell.samples << ','
                << spec.checks[c] << ',' << cell.counts[c][0] << ','
                << cell.counts[c][1] << ',' << cell.counts[c][2] << ','
                << cell.violations << '\n';
    }
    return out.str();
}

}  // namespace uniclass
