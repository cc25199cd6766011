// Integration tests of the installed command-line surface: exit codes,
// document handling, CSV schema, determinism.

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qent4/json_io.hpp"
#include "qent4/states.hpp"

using nlohmann::json;
using namespace qent4;

namespace {

struct run_result {
    int exit_code = -1;
    std::string out;
};

// run the CLI with a shell command line; stdin via here-doc file when given
run_result run_cli(const std::string& args, const std::string& stdin_text = "") {
    const std::string stdin_path = "/tmp/qent4_cli_stdin.json";
    std::string cmd = std::string(QENT4_CLI_PATH) + " " + args;
    if (!stdin_text.empty()) {
        std::ofstream f(stdin_path);
        f << stdin_text;
        f.close();
        cmd += " < " + stdin_path;
    } else {
        cmd += " < /dev/null";
    }
    cmd += " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    run_result r;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string ghz_doc() { return make_state_document(named_state(state_name::ghz4)).dump(); }

}  // namespace

TEST_CASE("invariants command on GHZ") {
    const run_result r = run_cli("invariants", ghz_doc());
    REQUIRE(r.exit_code == 0);
    const json out = json::parse(r.out);
    CHECK(out["f"][1].get<double>() == Catch::Approx(1.0).margin(1e-9));
    CHECK(out["four_tangle"].get<double>() == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("invariants command on |L>") {
    const run_result r =
        run_cli("invariants", make_state_document(named_state(state_name::l)).dump());
    REQUIRE(r.exit_code == 0);
    const json out = json::parse(r.out);
    CHECK(out["f"][1].get<double>() < 1e-9);
}

TEST_CASE("exit code contract") {
    CHECK(run_cli("invariants", "this is not json").exit_code == 2);
    CHECK(run_cli("invariants", R"({"format":"amplitudes","data":[[1,0]]})").exit_code == 2);

    // norm off by more than 1e-3: rejected
    json big = json::parse(ghz_doc());
    big["data"][0][0] = 0.9;
    CHECK(run_cli("invariants", big.dump()).exit_code == 3);

    // invalid entropy config
    CHECK(run_cli("entropy --family tsallis --alpha -1", ghz_doc()).exit_code == 4);
    CHECK(run_cli("entropy --family nonsense --alpha 2", ghz_doc()).exit_code == 4);

    // unknown sample family
    CHECK(run_cli("sample --family X").exit_code == 4);

    // unwritable output path
    CHECK(run_cli("figure --states M --family renyi --alpha-min 1 --alpha-max 1 "
                  "--alpha-step 1 -o /nonexistent-dir/x.csv")
              .exit_code == 5);
    CHECK(run_cli("sample --family A -o /nonexistent-dir/x.ndjson").exit_code == 5);

    // missing input file
    CHECK(run_cli("tangles /nonexistent-dir/state.json").exit_code == 5);
}

TEST_CASE("near-normalized inputs are accepted and normalized") {
    json doc = json::parse(ghz_doc());
    doc["data"][0][0] = doc["data"][0][0].get<double>() + 1e-5;  // warn-level deficit
    const run_result r = run_cli("tangles", doc.dump());
    REQUIRE(r.exit_code == 0);
    const json out = json::parse(r.out);
    CHECK(out["tau2"].get<double>() == Catch::Approx(1.0).margin(1e-4));
}

TEST_CASE("tangles of C1 via the CLI") {
    const run_result r =
        run_cli("tangles", make_state_document(named_state(state_name::c1)).dump());
    REQUIRE(r.exit_code == 0);
    const json out = json::parse(r.out);
    CHECK(out["per_cut"]["ab_cd"].get<double>() == Catch::Approx(1.0).margin(1e-9));
    CHECK(out["per_cut"]["ac_bd"].get<double>() == Catch::Approx(1.5).margin(1e-9));
    CHECK(out["per_cut"]["ad_bc"].get<double>() == Catch::Approx(1.5).margin(1e-9));
    CHECK(out["tau2"].get<double>() == Catch::Approx(4.0 / 3.0).margin(1e-9));
}

TEST_CASE("entropy command: |M> Renyi-2 average") {
    const run_result r = run_cli("entropy --family renyi --alpha 2",
                                 make_state_document(named_state(state_name::m)).dump());
    REQUIRE(r.exit_code == 0);
    const json out = json::parse(r.out);
    CHECK(out["E2"].get<double>() == Catch::Approx(std::log2(3.0)).margin(1e-9));
    CHECK(out["units"] == "bits");
}

TEST_CASE("spectra command sorts descending") {
    const run_result r =
        run_cli("spectra", make_state_document(named_state(state_name::m)).dump());
    REQUIRE(r.exit_code == 0);
    const json out = json::parse(r.out);
    for (const char* key : {"P", "Q", "R"}) {
        const auto sp = out[key].get<std::vector<double>>();
        REQUIRE(sp.size() == 4);
        CHECK(sp[0] == Catch::Approx(0.5).margin(1e-9));
        CHECK(std::is_sorted(sp.rbegin(), sp.rend()));
    }
}

TEST_CASE("sample determinism and family constraints") {
    const run_result a = run_cli("sample --family A --seed 1 --count 5");
    const run_result b = run_cli("sample --family A --seed 1 --count 5");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);

    const run_result m = run_cli("sample --family M --seed 9 --count 20");
    REQUIRE(m.exit_code == 0);
    std::istringstream lines(m.out);
    std::string line;
    int seen = 0;
    while (std::getline(lines, line)) {
        const run_result inv = run_cli("invariants", line);
        REQUIRE(inv.exit_code == 0);
        CHECK(json::parse(inv.out)["four_tangle"].get<double>() < 1e-18);
        ++seen;
    }
    CHECK(seen == 20);

    const run_result t = run_cli("sample --family Tmin --seed 2 --count 10");
    REQUIRE(t.exit_code == 0);
    std::istringstream tlines(t.out);
    while (std::getline(tlines, line)) {
        const run_result tan = run_cli("tangles", line);
        REQUIRE(tan.exit_code == 0);
        CHECK(json::parse(tan.out)["tau2"].get<double>() == Catch::Approx(1.0).margin(1e-9));
    }

    const run_result c = run_cli("sample --family C --seed 3 --count 10");
    REQUIRE(c.exit_code == 0);
    std::istringstream clines(c.out);
    while (std::getline(clines, line)) {
        const run_result tan = run_cli("tangles", line);
        REQUIRE(tan.exit_code == 0);
        CHECK(json::parse(tan.out)["tau1"].get<double>() == Catch::Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("class-A samples round-trip through the report commands") {
    const run_result a = run_cli("sample --family A --seed 4 --count 5");
    REQUIRE(a.exit_code == 0);
    std::istringstream lines(a.out);
    std::string line;
    while (std::getline(lines, line)) {
        const run_result inv = run_cli("invariants", line);
        REQUIRE(inv.exit_code == 0);
        CHECK(json::parse(inv.out).contains("f"));
        const run_result tan = run_cli("tangles", line);
        REQUIRE(tan.exit_code == 0);
        CHECK(json::parse(tan.out)["tau1"].get<double>() == Catch::Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("figure CSV schema and determinism") {
    const std::string args =
        "figure --states M,L,C1,eqlast:0.7853981633974483 --family tsallis "
        "--alpha-min 0.5 --alpha-max 3 --alpha-step 0.5";
    const run_result r = run_cli(args);
    REQUIRE(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "alpha,family,state,value");

    int rows = 0;
    std::string first_alpha;
    while (std::getline(lines, line)) {
        ++rows;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        const auto c3 = line.find(',', c2 + 1);
        REQUIRE(c3 != std::string::npos);
        CHECK(line.substr(c1 + 1, c2 - c1 - 1) == "tsallis");
        if (rows == 1) first_alpha = line.substr(0, c1);
    }
    CHECK(rows == 6 * 4);  // alpha outer, state inner
    CHECK(first_alpha == "0.5");

    CHECK(run_cli(args).out == r.out);
}

TEST_CASE("verify fast suite exits 0") {
    const run_result r = run_cli("verify --suite fast --seed 7 --samples 200");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
    CHECK(r.out.find("[PASS]") != std::string::npos);
}

TEST_CASE("optimize config validation and a small run") {
    CHECK(run_cli("optimize --objective vn --family classM --direction minimize").exit_code == 4);
    CHECK(run_cli("optimize --objective tsallis:0 --family classA").exit_code == 4);
    CHECK(run_cli("optimize --objective tsallis:3 --family wrong").exit_code == 4);

    const run_result r = run_cli(
        "optimize --objective tsallis:3 --family classA --restarts 6 --max-iters 2000 --seed 11");
    REQUIRE(r.exit_code == 0);
    const json out = json::parse(r.out);
    CHECK(out["best_value"].get<double>() == Catch::Approx(4.0 / 9.0).margin(1e-5));
    CHECK(out["predicted_winner"] == "L");
    CHECK(out["verdict_vs_predicted"] == "equivalent");
}
