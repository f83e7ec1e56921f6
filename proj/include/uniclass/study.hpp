// study.hpp — batch classification studies: sample generators over a grid of
// shapes, tabulate verdicts and count inclusion violations.

#pragma once

#include "uniclass/matcore.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace uniclass {

struct GeneratorSpec {
    std::string name;  // product | haar | block_a | block_b | const | circulant
                       // | both_block | eb
    int p = 1;         // block count for block_a / block_b
    int r = 1;         // environment factor for const
};

struct StudySpec {
    std::vector<BipartiteShape> shapes;
    std::vector<GeneratorSpec> generators;
    int samples_per_cell = 1;
    std::uint64_t seed = 0;
    std::vector<std::string> checks;  // verdict names to tabulate
    Tolerances tol;
    int budget = 8;
};

StudySpec study_spec_from_json(const nlohmann::json& j);

struct StudyCell {
    BipartiteShape shape;
    GeneratorSpec generator;
    std::string status;  // "ok" or a reason the cell is unavailable
    int samples = 0;
    // per check: yes/no/unknown counts, in the order of spec.checks
    std::vector<std::array<int, 3>> counts;
    int violations = 0;
};

struct StudyResult {
    std::vector<StudyCell> cells;
    int total_violations = 0;
};

// Deterministic given the spec; cells are ordered by (shape index, generator
// index) regardless of evaluation order.
StudyResult run_study(const StudySpec& spec);

nlohmann::json study_to_json(const StudySpec& spec, const StudyResult& res);
std::string study_to_csv(const StudySpec& spec, const StudyResult& res);

// Generates one sample for a cell; nullopt when the generator does not exist
// at this shape (with the reason in *why).
std::optional<BipartiteOperator> make_sample(const BipartiteShape& shape,
                                             const GeneratorSpec& gen,
                                             std::uint64_t seed, std::string* why);

}  // namespace uniclass
