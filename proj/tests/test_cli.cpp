#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace qcpl::cli;

namespace {

#ifndef QCPL_CLI_BINARY
#define QCPL_CLI_BINARY "qcpl"
#endif

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(QCPL_CLI_BINARY) + " " + args;
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

// Reduced size; k stays at 40 so the symbol window is still quiet.
RunConfig small_config(const std::string& subcommand) {
    RunConfig cfg;
    cfg.subcommand = subcommand;
    cfg.n = 128;
    cfg.k = 40;
    cfg.margin = 32;
    return cfg;
}

}  // namespace

TEST_CASE("verify-symbolic passes and exits 0") {
    CHECK(run_cli("verify-symbolic > /dev/null") == 0);
}

TEST_CASE("full report at a reduced size exits 0") {
    CHECK(run_cli("report --n 128 --k 40 --margin 32 --out /tmp/qcpl_report_test.json") == 0);
    std::string text = read_file("/tmp/qcpl_report_test.json");
    CHECK(text.find("\"pullback_pass\": true") != std::string::npos);
    CHECK(text.find("\"symbolic\"") != std::string::npos);
    std::remove("/tmp/qcpl_report_test.json");
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("report --q 0.5 2> /dev/null > /dev/null") == 2);
    CHECK(run_cli("report --c -3 2> /dev/null > /dev/null") == 2);
    CHECK(run_cli("no-such-subcommand 2> /dev/null > /dev/null") == 2);
    CHECK(run_cli("report --format yaml 2> /dev/null > /dev/null") == 2);
    CHECK(run_cli("2> /dev/null > /dev/null") == 2);  // missing subcommand
}

TEST_CASE("I/O failure exits 4") {
    CHECK(run_cli("spectrum --n 64 --k 8 --margin 16 --out /no/such/dir/r.json 2> /dev/null") == 4);
}

TEST_CASE("numerical degeneracy exits 3") {
    // A short chain puts the symbol window where the bands still drift.
    CHECK(run_cli("symbol --n 128 --k 20 --margin 32 2> /dev/null > /dev/null") == 3);
}

TEST_CASE("documents are byte-identical across runs") {
    CHECK(run_cli("decompose --n 128 --k 40 --margin 32 --out /tmp/qcpl_det_a.json") == 0);
    CHECK(run_cli("decompose --n 128 --k 40 --margin 32 --out /tmp/qcpl_det_b.json") == 0);
    std::string a = read_file("/tmp/qcpl_det_a.json");
    std::string b = read_file("/tmp/qcpl_det_b.json");
    CHECK(!a.empty());
    CHECK(a == b);
    std::remove("/tmp/qcpl_det_a.json");
    std::remove("/tmp/qcpl_det_b.json");
}

TEST_CASE("grid documents carry one run per grid point") {
    RunConfig cfg = small_config("spectrum");
    cfg.q_grid = {1.5, 2.0};
    cfg.c_grid = {1.0, 2.0};
    RunOutcome out = run_report(cfg);
    CHECK(out.exit_code == 0);
    REQUIRE(out.document.contains("runs"));
    CHECK(out.document["runs"].size() == 4);
    CHECK(out.document["runs"][0]["params"]["q"].get<double>() == 1.5);
    CHECK(out.document["runs"][3]["params"]["c"].get<double>() == 2.0);
}

TEST_CASE("empty grid emits a valid document with no runs") {
    RunConfig cfg = small_config("spectrum");
    cfg.q_grid = {};
    RunOutcome out = run_report(cfg);
    CHECK(out.exit_code == 0);
    REQUIRE(out.document.contains("runs"));
    CHECK(out.document["runs"].empty());
    std::string text = to_json_text(out.document);
    CHECK(text.find("\"runs\": []") != std::string::npos);
}

TEST_CASE("floats serialize with 17 significant digits") {
    nlohmann::ordered_json j;
    j["a"] = 2.0;
    j["b"] = 0.9682458365518543;
    std::string text = to_json_text(j);
    CHECK(text.find("2.0000000000000000") != std::string::npos);
    CHECK(text.find("0.96824583655185426") != std::string::npos);
}

TEST_CASE("exit code 0 implies every hard check passes") {
    RunConfig cfg = small_config("report");
    RunOutcome out = run_report(cfg);
    REQUIRE(out.exit_code == 0);
    for (const auto& check : out.document["checks"]) {
        INFO(check["name"].get<std::string>());
        CHECK(check["pass"].get<bool>());
    }
    CHECK(out.document["pass"].get<bool>());
}

TEST_CASE("csv emits flat eigenvalue and weight tables") {
    RunConfig cfg = small_config("decompose");
    RunOutcome out = run_report(cfg);
    std::string csv = to_csv_text(out.document);
    CHECK(csv.rfind("table,q,c,t1_angle,n,k,formula,measured_re,measured_im,residual,leakage\n",
                    0) == 0);
    CHECK(csv.find("\neigenvalue,") != std::string::npos);
    CHECK(csv.find("\nweight,") != std::string::npos);

    // deterministic: same config, same text
    RunOutcome again = run_report(cfg);
    CHECK(to_csv_text(again.document) == csv);
}

TEST_CASE("per-claim subcommands emit only their sections") {
    RunOutcome spectrum = run_report(small_config("spectrum"));
    CHECK(spectrum.document.contains("eigenvalues"));
    CHECK(!spectrum.document.contains("weights"));
    CHECK(!spectrum.document.contains("symbols"));

    RunOutcome gauge = run_report(small_config("gauge"));
    CHECK(gauge.document.contains("gauge"));
    CHECK(!gauge.document.contains("eigenvalues"));

    RunOutcome h0 = run_report(small_config("h0-probe"));
    CHECK(h0.document.contains("h0_probe"));
    CHECK(h0.document["h0_probe"]["complement_dim"].get<int>() == 96 - 40);

    RunOutcome index = run_report(small_config("index"));
    CHECK(index.document.contains("winding"));
    CHECK(index.document["winding"]["x1_index"].get<int>() == 1);
    CHECK(index.document["winding"]["x2_index"].get<int>() == -1);
    CHECK(index.document["winding"]["x1adj_x2_index"].get<int>() == -2);
}
