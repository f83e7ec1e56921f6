#include "uniclass/json_io.hpp"

#include <stdexcept>

namespace uniclass {

using nlohmann::json;

json cmatrix_to_json(const CMatrix& m) {
    std::vector<double> re, im;
    re.reserve(m.size());
    im.reserve(m.size());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            re.push_back(m(i, j).real());
            im.push_back(m(i, j).imag());
        }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

CMatrix cmatrix_from_json(const json& j) {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (rows < 0 || cols < 0 ||
        re.size() != static_cast<size_t>(rows * cols) || im.size() != re.size())
        throw std::invalid_argument("matrix json: inconsistent dimensions");
    CMatrix m(rows, cols);
    size_t idx = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j2 = 0; j2 < cols; ++j2, ++idx)
            m(i, j2) = Complex(re[idx], im[idx]);
    return m;
}

json bipartite_to_json(const BipartiteOperator& u) {
    json j = cmatrix_to_json(u.mat);
    j["n"] = u.shape.n;
    j["k"] = u.shape.k;
    return j;
}

BipartiteOperator bipartite_from_json(const json& j) {
    BipartiteOperator u{{j.at("n").get<int>(), j.at("k").get<int>()},
                        cmatrix_from_json(j)};
    check_bipartite(u);
    return u;
}

json channel_to_json(const StinespringChannel& ch) {
    return {{"u", bipartite_to_json(ch.u)}, {"beta", cmatrix_to_json(ch.beta.mat)}};
}

StinespringChannel channel_from_json(const json& j, const Tolerances& tol) {
    const BipartiteOperator u = bipartite_from_json(j.at("u"));
    const CMatrix beta = cmatrix_from_json(j.at("beta"));
    return make_channel(u, make_density(beta, tol), tol);
}

json blocksvd_to_json(const BlockSVD& d) {
    json terms = json::array();
    for (const auto& t : d.terms)
        terms.push_back({{"coeff", cmatrix_to_json(t.coeff)},
                         {"isom", cmatrix_to_json(t.isom)}});
    return {{"n", d.shape.n}, {"k", d.shape.k}, {"terms", terms}};
}

json report_to_json(const ClassReport& rep) {
    json verdicts = json::object();
    for (const auto& [name, v] : rep.verdicts)
        verdicts[name] = {{"value", to_string(v.value)},
                          {"heuristic", v.heuristic},
                          {"witness", v.witness}};
    return {{"n", rep.shape.n}, {"k", rep.shape.k}, {"verdicts", verdicts}};
}

}  // namespace uniclass
