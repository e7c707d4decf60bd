#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "ramgen/json_io.hpp"

using namespace ramgen;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(RAMGEN_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
    int st = pclose(f);
    RunResult r;
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    r.out = std::move(out);
    return r;
}

fs::path temp_file(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "ramgen_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    REQUIRE(f.good());
    f << text;
}

} // namespace

TEST_CASE("params output is correct, classified, and byte-stable") {
    RunResult a = run_cli("params --p 3 --n0 1 --v0 1");
    RunResult b = run_cli("params --p 3 --n0 1 --v0 1/1");
    CHECK(a.code == 0);
    CHECK(a.out == b.out); // determinism, and "1" vs "1/1" parse identically
    ojson d = ojson::parse(a.out);
    CHECK(d["params"]["rstar"] == "7/8");
    CHECK(d["params"]["q"] == 729);
    CHECK(d["params"]["nstar"].get<int>() % 2 == 0);
    bool found92 = false;
    for (const ojson& e : d["exponents"])
        if (e["value"] == 92) {
            found92 = true;
            CHECK(e["ch"] == 1);
            CHECK(e["pm_alpha"] == 1);
            CHECK(e["pm_beta_over_r"] == 1);
            const auto& cl = e["classes"];
            CHECK(std::find(cl.begin(), cl.end(), "reduced") != cl.end());
            CHECK(std::find(cl.begin(), cl.end(), "primitive") != cl.end());
        }
    CHECK(found92);
}

TEST_CASE("rejected configurations produce no partial output") {
    fs::path out = temp_file("rejected.json");
    fs::remove(out);
    CHECK(run_cli("params --p 3 --n0 1 --v0 0 --out " + out.string()).code == 2);
    CHECK(run_cli("params --p 4 --n0 1 --v0 1 --out " + out.string()).code == 2);
    CHECK(run_cli("params --p 3 --n0 1 --v0 nonsense --out " + out.string()).code == 2);
    CHECK(run_cli("verify --p 3 --n0 1 --v0 1 --suite bogus --out " + out.string()).code == 2);
    CHECK(!fs::exists(out));
    CHECK(run_cli("frobnicate").code == 2);
}

TEST_CASE("an out-of-reach configuration reports a structured resource error") {
    RunResult a = run_cli("params --p 5 --n0 1 --v0 1");
    CHECK(a.code == 3);
    ojson d = ojson::parse(a.out);
    CHECK(d["error"]["kind"] == "resource");
    CHECK(!d["error"]["message"].get<std::string>().empty());
    CHECK(run_cli("params --p 5 --n0 1 --v0 1").out == a.out);
}

TEST_CASE("generators construction selector filters the document") {
    RunResult only41 = run_cli("generators --p 3 --n0 1 --v0 1 --theorem 41");
    CHECK(only41.code == 0);
    ojson d41 = ojson::parse(only41.out);
    CHECK(d41.contains("family_ideal"));
    CHECK(!d41.contains("uniform_ideal"));
    CHECK(!d41.contains("boundary_ideal"));
    CHECK(!d41.contains("ideals_equal"));

    RunResult all = run_cli("generators --p 3 --n0 2 --v0 3/2 --theorem all");
    CHECK(all.code == 0);
    ojson dall = ojson::parse(all.out);
    CHECK(dall["ideals_equal"] == true);
    CHECK(dall["family_ideal"]["dim"] == dall["uniform_ideal"]["dim"]);

    CHECK(run_cli("generators --p 3 --n0 1 --v0 1 --theorem 99").code == 2);
}

TEST_CASE("structural-constant files round-trip and corruption is caught") {
    const Params C1{3, 1, Rat{1, 1}};
    EtaTable deformed = EtaTable::deformed_table(C1);
    ojson table = eta_json(deformed);
    fs::path good = temp_file("eta_good.json");
    write_file(good, dump_doc(table));

    // the file reproduces the table it was written from
    EtaTable back = load_eta_file(C1, good.string());
    CHECK(back.eta({0, 1}) == deformed.eta({0, 1}));
    CHECK(validate_eta(back).ok());

    RunResult ok = run_cli("verify --p 3 --n0 1 --v0 1 --suite eta --eta " + good.string());
    CHECK(ok.code == 0);

    // corrupt one degree-2 value: the shuffle identity pins eta(0,0) to 1/2,
    // so changing it must break the check and the report must carry the tuple
    for (ojson& e : table["entries"])
        if (e["tuple"].size() == 2 && e["tuple"][0] == 0 && e["tuple"][1] == 0)
            e["value"] = 1;
    fs::path bad = temp_file("eta_bad.json");
    write_file(bad, dump_doc(table));
    RunResult fail = run_cli("verify --p 3 --n0 1 --v0 1 --suite eta --eta " + bad.string());
    CHECK(fail.code == 1);
    ojson rep = ojson::parse(fail.out);
    CHECK(rep["pass"] == false);
    bool reported = false;
    for (const ojson& s : rep["suites"])
        for (const ojson& c : s["checks"])
            if (c["name"] == "identities_user") {
                CHECK(c["pass"] == false);
                REQUIRE(c.contains("counterexample"));
                std::string v = c["counterexample"]["violation"].get<std::string>();
                CHECK(v.find("(0,0)") != std::string::npos);
                reported = true;
            }
    CHECK(reported);

    // computation commands refuse an invalid table outright
    RunResult gens = run_cli("generators --p 3 --n0 1 --v0 1 --eta " + bad.string());
    CHECK(gens.code == 1);
    CHECK(ojson::parse(gens.out)["error"]["kind"] == "domain");
}

TEST_CASE("command-line flags override the config file") {
    fs::path cfg = temp_file("config.json");
    write_file(cfg, dump_doc(ojson{{"p", 3}, {"n0", 2}, {"v0", "3/2"}}));
    RunResult base = run_cli("params --config " + cfg.string());
    CHECK(base.code == 0);
    CHECK(ojson::parse(base.out)["config"]["v0"] == "3/2");

    RunResult over = run_cli("params --config " + cfg.string() + " --n0 1 --v0 1");
    CHECK(over.code == 0);
    ojson d = ojson::parse(over.out);
    CHECK(d["config"]["n0"] == 1);
    CHECK(d["config"]["v0"] == "1/1");
    CHECK(d["params"]["q"] == 729);
}

TEST_CASE("recurrence command emits the anchor table") {
    RunResult a = run_cli("recurrence --p 3 --n0 1 --v0 1");
    CHECK(a.code == 0);
    ojson d = ojson::parse(a.out);
    REQUIRE(d["anchors"].size() == 1);
    CHECK(d["anchors"][0]["exponent"] == 92);
    CHECK(d["anchors"][0]["remainder_monomials"] == 0);
    CHECK(d["x_support"].empty());

    RunResult b = run_cli("recurrence --p 3 --n0 2 --v0 3/2");
    CHECK(b.code == 0);
    ojson d2 = ojson::parse(b.out);
    bool rem = false;
    for (const ojson& anc : d2["anchors"])
        if (anc["remainder_monomials"].get<int>() > 0) rem = true;
    CHECK(rem); // the anchors are only pinned modulo the ideal envelope here
}

TEST_CASE("verify subcommand is clean on both small configurations") {
    for (std::string flags : {std::string("--p 3 --n0 1 --v0 1"), std::string("--p 3 --n0 2 --v0 3/2")}) {
        RunResult r = run_cli("verify " + flags + " --suite sets");
        CHECK(r.code == 0);
        ojson d = ojson::parse(r.out);
        CHECK(d["pass"] == true);
        CHECK(d["suites"].size() == 1);
        CHECK(d["suites"][0]["suite"] == "sets");
    }
}
