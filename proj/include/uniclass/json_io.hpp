// json_io.hpp — JSON serialization for matrices, operators, channels,
// block SVDs and classification reports.

#pragma once

#include "uniclass/blocksvd.hpp"
#include "uniclass/channels.hpp"
#include "uniclass/classify.hpp"
#include "uniclass/matcore.hpp"

#include <json.hpp>

namespace uniclass {

// {"rows": r, "cols": c, "re": [...], "im": [...]} with entries row-major.
nlohmann::json cmatrix_to_json(const CMatrix& m);
CMatrix cmatrix_from_json(const nlohmann::json& j);

// Matrix fields plus "n" and "k".
nlohmann::json bipartite_to_json(const BipartiteOperator& u);
BipartiteOperator bipartite_from_json(const nlohmann::json& j);

// {"u": <bipartite operator>, "beta": <matrix>}
nlohmann::json channel_to_json(const StinespringChannel& ch);
StinespringChannel channel_from_json(const nlohmann::json& j,
                                     const Tolerances& tol = {});

// {"n": n, "k": k, "terms": [{"coeff": ..., "isom": ...}, ...]}
nlohmann::json blocksvd_to_json(const BlockSVD& d);

// {"n": n, "k": k, "verdicts": {name: {"value", "heuristic", "witness"}}}
nlohmann::json report_to_json(const ClassReport& rep);

}  // namespace uniclass
