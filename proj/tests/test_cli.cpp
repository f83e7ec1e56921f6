#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "uniclass/json_io.hpp"
#include "uniclass/study.hpp"

#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using nlohmann::json;
using namespace uniclass;

namespace {

const std::string cli = UNICLASS_CLI_PATH;

int run(const std::string& args, std::string* stdout_text = nullptr) {
    const std::string out_path = "/tmp/uniclass_cli_test_out.txt";
    const int rc =
        std::system((cli + " " + args + " > " + out_path + " 2>/dev/null").c_str());
    if (stdout_text) {
        std::ifstream in(out_path);
        std::stringstream ss;
        ss << in.rdbuf();
        *stdout_text = ss.str();
    }
    return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("generate writes a valid operator file") {
    std::string out;
    CHECK(run("generate product --n 2 --k 3 --seed 7 -o /tmp/uc_prod.json") == 0);
    std::ifstream in("/tmp/uc_prod.json");
    json j;
    in >> j;
    const BipartiteOperator u = bipartite_from_json(j);
    CHECK(u.shape.n == 2);
    CHECK(u.shape.k == 3);
    CHECK(is_unitary(u.mat));
}

TEST_CASE("generate const honors --r") {
    CHECK(run("generate const --n 2 --r 2 --seed 1 -o /tmp/uc_const.json") == 0);
    std::ifstream in("/tmp/uc_const.json");
    json j;
    in >> j;
    CHECK(j.at("k") == 4);
}

TEST_CASE("unknown generator exits with usage code 2") {
    CHECK(run("generate frobnicate --n 2 --k 2") == 2);
    CHECK(run("generate counterexample --name nonexistent") == 2);
}

TEST_CASE("classify emits a report and exit code 0") {
    run("generate product --n 2 --k 2 --seed 3 -o /tmp/uc_p22.json");
    std::string out;
    CHECK(run("classify /tmp/uc_p22.json", &out) == 0);
    const json j = json::parse(out);
    CHECK(j.at("verdicts").at("aut").at("value") == "yes");
}

TEST_CASE("classify rejects non-unitary input with exit code 3") {
    json j = bipartite_to_json({{2, 2}, 2.0 * identity(4)});
    std::ofstream("/tmp/uc_bad.json") << j.dump();
    CHECK(run("classify /tmp/uc_bad.json") == 3);
}

TEST_CASE("classify reports parse failures with exit code 2") {
    std::ofstream("/tmp/uc_garbage.json") << "{not json";
    CHECK(run("classify /tmp/uc_garbage.json") == 2);
    CHECK(run("classify /tmp/uc_missing_file.json") == 2);
}

TEST_CASE("blocksvd splits members and rejects the golden negative") {
    run("generate block_a --n 2 --k 3 --p 2 --seed 5 -o /tmp/uc_bd.json");
    std::string out;
    CHECK(run("blocksvd /tmp/uc_bd.json", &out) == 0);
    CHECK(json::parse(out).at("terms").size() == 2);

    run("generate counterexample --name no_block_svd_4x4 -o /tmp/uc_nb.json");
    CHECK(run("blocksvd /tmp/uc_nb.json", &out) == 4);
    const json w = json::parse(out);
    CHECK(w.at("ok") == false);
    CHECK(w.at("witness").at("norm").get<double>() > 1e-6);
}

TEST_CASE("dimension subcommand modes") {
    std::string out;
    CHECK(run("dimension formulas --n 2 --k 3", &out) == 0);
    CHECK(json::parse(out).at("dim_U_block_diag_A") == 24);

    CHECK(run("dimension mblockdiag --n 2 --k 2", &out) == 0);
    CHECK(json::parse(out).at("dim") == 20);

    run("generate product --n 2 --k 2 --seed 3 -o /tmp/uc_p22.json");
    CHECK(run("dimension enveloping --input /tmp/uc_p22.json", &out) == 0);
    CHECK(json::parse(out).at("analytic") == 16);
    CHECK(json::parse(out).at("agree") == true);
}

TEST_CASE("UNICLASS_SEED sets the default seed") {
    const std::string base = "UNICLASS_SEED=99 " + cli +
                             " generate haar --n 2 --k 2 -o /tmp/uc_env";
    CHECK(WEXITSTATUS(std::system((base + "1.json 2>/dev/null").c_str())) == 0);
    CHECK(WEXITSTATUS(std::system((base + "2.json 2>/dev/null").c_str())) == 0);
    json j1, j2;
    std::ifstream("/tmp/uc_env1.json") >> j1;
    std::ifstream("/tmp/uc_env2.json") >> j2;
    CHECK(j1 == j2);
}

TEST_CASE("study runs a small grid with zero violations") {
    const json spec = {{"shapes", {{2, 2}, {2, 3}}},
                       {"generators",
                        {{{"name", "block_a"}, {"p", 2}}, {{"name", "product"}}}},
                       {"samples_per_cell", 3},
                       {"seed", 7},
                       {"checks", {"block_diag_A", "unital", "aut"}}};
    std::ofstream("/tmp/uc_study.json") << spec.dump();
    std::string out;
    CHECK(run("study /tmp/uc_study.json --csv /tmp/uc_study.csv", &out) == 0);
    const json res = json::parse(out);
    CHECK(res.at("total_violations") == 0);
    CHECK(res.at("cells").size() == 4);

    std::ifstream csv("/tmp/uc_study.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "n,k,generator,status,samples,check,yes,no,unknown,violations");
}

TEST_CASE("study reports unavailable generators as obstruction rows") {
    const json spec = {{"shapes", {{2, 3}}},
                       {"generators", {{{"name", "const"}}}},
                       {"samples_per_cell", 2},
                       {"seed", 1},
                       {"checks", {"const"}}};
    std::ofstream("/tmp/uc_study2.json") << spec.dump();
    std::string out;
    CHECK(run("study /tmp/uc_study2.json", &out) == 0);
    const json res = json::parse(out);
    const auto& cell = res.at("cells").at(0);
    CHECK(cell.at("samples") == 0);
    CHECK(cell.at("status").get<std::string>().find("obstruction") != std::string::npos);
}

TEST_CASE("study spec parse errors exit with code 2") {
    std::ofstream("/tmp/uc_badspec.json") << "{\"shapes\": []}";
    CHECK(run("study /tmp/uc_badspec.json") == 2);
}
