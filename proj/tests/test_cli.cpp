#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    std::string cmd = env_prefix + " " + ROMANOFF_CLI_PATH + " " + args + " 2>/dev/null";
    CliResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buffer;
    std::size_t n = 0;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) result.out.append(buffer.data(), n);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

json parse_report(const CliResult& r) {
    json report = json::parse(r.out, nullptr, false);
    REQUIRE_FALSE(report.is_discarded());
    return report;
}

} // namespace

TEST_CASE("report schema and exit code on a passing job") {
    CliResult r = run_cli("verify periods");
    CHECK(r.exit_code == 0);
    json report = parse_report(r);
    REQUIRE(report.contains("command"));
    REQUIRE(report.contains("parameters"));
    REQUIRE(report.contains("status"));
    REQUIRE(report.contains("payload"));
    REQUIRE(report.contains("elapsed_ms"));
    CHECK(report["command"] == "verify periods");
    CHECK(report["status"] == "pass");
    CHECK(report["payload"]["periods"].size() == 16);
    CHECK(report["payload"]["periods"][0]["q"] == 2);
    CHECK(report["payload"]["periods"][0]["computed"] == 3);
    CHECK(report["elapsed_ms"].is_number_integer());
}

TEST_CASE("re-running a command yields byte-identical output modulo elapsed_ms") {
    for (const std::string args : {std::string("verify periods"), std::string("verify e2"),
                                   std::string("sieve --limit 5000"), std::string("series --dmax 200"),
                                   std::string("verify theorem2 --modulus 18432")}) {
        json a = parse_report(run_cli(args));
        json b = parse_report(run_cli(args));
        a.erase("elapsed_ms");
        b.erase("elapsed_ms");
        CHECK(a.dump() == b.dump());
    }
}

TEST_CASE("usage errors exit with 2 and no report") {
    CHECK(run_cli("sieve --limit 1").exit_code == 2);
    CHECK(run_cli("pisano 4").exit_code == 2);
    CHECK(run_cli("series --dmax 0").exit_code == 2);
    CHECK(run_cli("verify nosuchsubject").exit_code == 2);
    CHECK(run_cli("verify theorem2 --modulus 5000").exit_code == 2);
    CHECK(run_cli("nonrep --limit 100 --terms 9").exit_code == 2);
    CHECK(run_cli("nonrep --limit 100").exit_code == 2); // --terms required
    CHECK(run_cli("bogus").exit_code == 2);
    CHECK(run_cli("").exit_code == 2); // a subcommand is required
}

TEST_CASE("pisano command") {
    json single = parse_report(run_cli("pisano 2"));
    CHECK(single["payload"]["q"] == 2);
    CHECK(single["payload"]["period"] == 3);

    json big = parse_report(run_cli("pisano 769"));
    CHECK(big["payload"]["period"] == 192);

    json table = parse_report(run_cli("pisano --upto 30"));
    auto rows = table["payload"]["table"];
    REQUIRE(rows.size() == 10); // primes up to 30
    CHECK(rows[0] == json({{"q", 2}, {"period", 3}}));
    CHECK(rows[2] == json({{"q", 5}, {"period", 20}}));
}

TEST_CASE("sieve json payload") {
    CliResult r = run_cli("sieve --limit 206");
    CHECK(r.exit_code == 0);
    json report = parse_report(r);
    CHECK(report["payload"]["count_r0"] == 9);
    CHECK(report["payload"]["nonrep_prefix"] ==
          json::array({1, 28, 122, 125, 156, 178, 189, 190, 206}));
    CHECK(report["parameters"]["limit"] == 206);
}

TEST_CASE("sieve csv stream") {
    CliResult r = run_cli("sieve --limit 50 --out csv");
    CHECK(r.exit_code == 0);
    REQUIRE(r.out.size() > 4);
    CHECK(r.out.rfind("n,r\n", 0) == 0);
    CHECK(r.out.find("\r") == std::string::npos); // LF only
    CHECK(r.out.find("1,0\n") == 4);              // first data row
    CHECK(r.out.find("\n2,1\n") != std::string::npos);
    CHECK(r.out.find("\n28,0\n") != std::string::npos);
    // header + one row per n in [1, 50]
    std::size_t lines = 0;
    for (char c : r.out)
        if (c == '\n') ++lines;
    CHECK(lines == 51);
}

TEST_CASE("nonrep command") {
    json report = parse_report(run_cli("nonrep --limit 206 --terms 2 --count 3"));
    CHECK(report["payload"]["counterexamples"] == json::array({28, 122, 125}));
    CHECK(report["payload"]["exhausted"] == false);

    json more = parse_report(run_cli("nonrep --limit 206 --terms 2 --count 50"));
    CHECK(more["payload"]["exhausted"] == true);
}

TEST_CASE("series command") {
    json report = parse_report(run_cli("series --dmax 1"));
    CHECK(report["status"] == "pass");
    double value = report["payload"]["value"].get<double>();
    CHECK(value == doctest::Approx(1.0 / 192.0).epsilon(1e-12));
    CHECK(report["payload"]["period_restricted"].size() == 54); // n in [7, 60]
}

TEST_CASE("verify e2 / theorem1 pass end to end") {
    CHECK(run_cli("verify e2").exit_code == 0);
    json t1 = parse_report(run_cli("verify theorem1"));
    CHECK(t1["status"] == "pass");
    CHECK(t1["payload"]["n1_decimal"] == "230679396120594378030961206868110960043638184");
}

TEST_CASE("verify theorem2 reports the eq2 defect and exits 1") {
    CliResult r = run_cli("verify theorem2 --modulus 18432");
    CHECK(r.exit_code == 1);
    json report = parse_report(r);
    CHECK(report["status"] == "fail");
    CHECK(report["payload"]["failure_count"] == 0);
    CHECK(report["payload"]["allowed_failure_count"] == 36864);
    CHECK(report["payload"]["allowed_miss_histogram"]["17"] == 24576);
    CHECK(report["payload"]["allowed_miss_histogram"]["2"] == 0);
    CHECK(report["payload"]["reduced_table_checked"] == true);
}

TEST_CASE("payloads are identical across worker counts") {
    for (const std::string args :
         {std::string("verify theorem2 --modulus 18432"), std::string("sieve --limit 300000"),
          std::string("nonrep --limit 300000 --terms 3 --count 2")}) {
        json one = parse_report(run_cli(args, "ROMANOFF_THREADS=1"));
        json two = parse_report(run_cli(args, "ROMANOFF_THREADS=2"));
        CHECK(one["payload"].dump() == two["payload"].dump());
        CHECK(one["status"] == two["status"]);
    }
}

TEST_CASE("ROMANOFF_THREADS overrides the flag") {
    json forced = parse_report(run_cli("verify periods --threads 2", "ROMANOFF_THREADS=1"));
    CHECK(forced["parameters"]["threads"] == 1);
    json flagged = parse_report(run_cli("verify periods --threads 2"));
    CHECK(flagged["parameters"]["threads"] == 2);
}

TEST_CASE("--help exits 0") {
    CliResult r = run_cli("--help");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("verify") != std::string::npos);
}
