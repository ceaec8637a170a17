// End-to-end checks of the command-line tool: golden rows, exit codes,
// option precedence, sweep ordering, and byte-stable reruns.

#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

RunResult run_cli(const std::string& args, const std::string& env = "") {
    static int counter = 0;
    const std::string base =
        std::string(TEST_WORK_DIR) + "/cli_capture_" + std::to_string(counter++);
    const std::string out_path = base + ".out";
    const std::string err_path = base + ".err";
    std::string cmd = env.empty() ? std::string() : env + " ";
    cmd += "\"" OPENBOSON_BIN "\" " + args + " > \"" + out_path + "\" 2> \"" +
           err_path + "\"";
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code =
        (status == -1 || !WIFEXITED(status)) ? -1 : WEXITSTATUS(status);
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return result;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) rows.push_back(line);
    return rows;
}

std::vector<std::string> fields(const std::string& line) {
    std::vector<std::string> cols;
    std::istringstream in(line);
    std::string item;
    while (std::getline(in, item, ',')) cols.push_back(item);
    return cols;
}

double num(const std::string& text) { return std::stod(text); }

std::string work_path(const std::string& name) {
    return std::string(TEST_WORK_DIR) + "/" + name;
}

} // namespace

TEST_CASE("steady: golden default row") {
    const RunResult r = run_cli("steady");
    CHECK(r.exit_code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "n_e,n_c,n_s,T_sys,I_s,eta_s,eta_c,E_s");
    CHECK(rows[1] ==
          "1.5414940825367982,0.58197670686932645,1.0617353947030623,1.5,"
          "0.47975868783373588,0.62245933120185448,0.5,0.47975868783373588");
}

TEST_CASE("steady: equal temperatures carry no current") {
    const RunResult r = run_cli("steady --temp-e 1.7 --temp-c 1.7");
    CHECK(r.exit_code == 0);
    const auto row = fields(lines(r.out).at(1));
    REQUIRE(row.size() == 8);
    CHECK(row[4] == "0"); // I_s
    CHECK(row[5] == "0"); // eta_s
    CHECK(row[6] == "0"); // eta_c
    CHECK(row[7] == "0"); // E_s
}

TEST_CASE("steady: unit occupation gap gives unit current and throughput") {
    // occupations 3 and 1 at unit frequency with unit couplings
    const RunResult r = run_cli(
        "steady --temp-e 3.4760594967822069 --temp-c 1.4426950408889634");
    CHECK(r.exit_code == 0);
    const auto row = fields(lines(r.out).at(1));
    REQUIRE(row.size() == 8);
    CHECK(num(row[0]) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(num(row[1]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(num(row[4]) == doctest::Approx(1.0).epsilon(1e-12)); // I_s
    CHECK(num(row[7]) == doctest::Approx(1.0).epsilon(1e-12)); // E_s
}

TEST_CASE("repeated invocations are byte-identical") {
    const std::string f1 = work_path("evolve_a.csv");
    const std::string f2 = work_path("evolve_b.csv");
    const std::string args =
        "evolve --dim 24 --t-end 1 --out ";
    CHECK(run_cli(args + "\"" + f1 + "\"").exit_code == 0);
    CHECK(run_cli(args + "\"" + f2 + "\"").exit_code == 0);
    const std::string a = slurp(f1);
    CHECK(!a.empty());
    CHECK(a == slurp(f2));
    std::remove(f1.c_str());
    std::remove(f2.c_str());

    const RunResult s1 = run_cli("steady --temp-e 2.31");
    const RunResult s2 = run_cli("steady --temp-e 2.31");
    CHECK(s1.out == s2.out);
}

TEST_CASE("evolve: trajectory CSV matches the relaxation closed form") {
    const RunResult r = run_cli("evolve --dim 32 --t-end 2");
    CHECK(r.exit_code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() > 100);
    CHECK(rows[0] == "t,mean_n,current,trace_defect,min_eig");
    const auto first = fields(rows[1]);
    CHECK(first[0] == "0");
    CHECK(first[1] == "0");
    const auto last = fields(rows.back());
    CHECK(num(last[0]) == doctest::Approx(2.0).epsilon(1e-12));
    // n_s (1 - exp(-2 gamma)) at the default parameters
    const double expected = 1.0617353947030623 * (1.0 - std::exp(-4.0));
    CHECK(num(last[1]) == doctest::Approx(expected).epsilon(1e-7));
    CHECK(num(last[3]) < 1e-10); // trace defect
    CHECK(num(last[4]) > -1e-10); // smallest eigenvalue
    double prev = -1.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double t = num(fields(rows[i])[0]);
        CHECK(t > prev);
        prev = t;
    }
}

TEST_CASE("transport: closed-form table and sweep ordering") {
    const RunResult r = run_cli("transport --t-end 4");
    CHECK(r.exit_code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 502);
    CHECK(rows[0] == "t,mean_n,current,eta");
    CHECK(num(fields(rows.back())[0]) == doctest::Approx(4.0).epsilon(1e-14));

    const RunResult swept = run_cli("transport --t-end 4 --sweep gamma_c:1:2:3");
    CHECK(swept.exit_code == 0);
    const auto srows = lines(swept.out);
    REQUIRE(srows.size() == 1 + 3 * 501);
    CHECK(srows[0] == "gamma_c,t,mean_n,current,eta");
    CHECK(fields(srows[1])[0] == "1");
    CHECK(fields(srows[1 + 501])[0] == "1.5");
    CHECK(fields(srows[1 + 2 * 501])[0] == "2");
    // the unswept block equals the plain run with that value
    const auto plain_row = fields(rows[1]);
    const auto swept_row = fields(srows[1]);
    for (std::size_t i = 0; i < plain_row.size(); ++i) {
        CHECK(swept_row[i + 1] == plain_row[i]);
    }
}

TEST_CASE("sweep blocks are schedule-independent") {
    const std::string args = "transport --t-end 2 --sweep temp_e:1.5:4:6";
    const RunResult serial = run_cli(args, "OPEN_BOSON_THREADS=1");
    const RunResult pooled = run_cli(args, "OPEN_BOSON_THREADS=3");
    CHECK(serial.exit_code == 0);
    CHECK(pooled.exit_code == 0);
    CHECK(serial.out == pooled.out);
    CHECK(!serial.out.empty());
}

TEST_CASE("fig1: factor falls from one to zero along each curve") {
    const RunResult r = run_cli("fig1");
    CHECK(r.exit_code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 201);
    CHECK(rows[0] == "T_e,T_c,eta_s,eta_c");
    double prev_eta = 2.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto cols = fields(rows[i]);
        REQUIRE(cols.size() == 4);
        const double t_c = num(cols[1]);
        const double eta_s = num(cols[2]);
        const double eta_c = num(cols[3]);
        // At T_c/T_e below ~0.05 the collector occupation underflows the
        // subtraction and the factor saturates at exactly 1.0, so strict
        // decrease is only checkable once the curve is resolvable.
        if (t_c >= 0.2) {
            CHECK(eta_s < prev_eta);       // strictly decreasing in T_c
        } else {
            CHECK(eta_s <= prev_eta);
        }
        CHECK(eta_s >= eta_c - 1e-15);     // never below the Carnot factor
        prev_eta = eta_s;
    }
    CHECK(num(fields(rows[1])[2]) > 0.999999); // T_c -> 0 limit
    CHECK(fields(rows.back())[1] == "2");      // grid ends exactly at T_e
    CHECK(num(fields(rows.back())[2]) == 0.0); // and the factor closes at 0
}

TEST_CASE("fig1: extra emitter curves stack in order") {
    const RunResult r = run_cli("fig1 --temp-e 2 --temp-e 4");
    CHECK(r.exit_code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 401);
    CHECK(fields(rows[1])[0] == "2");
    CHECK(fields(rows[200])[0] == "2");
    CHECK(fields(rows[201])[0] == "4");
    CHECK(fields(rows[400])[0] == "4");
}

TEST_CASE("fig1: explicit collector sweep must stay below the curves") {
    const RunResult bad = run_cli("fig1 --temp-e 2 --sweep temp_c:0.5:3:10");
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("below every emitter") != std::string::npos);

    const RunResult good = run_cli("fig1 --temp-e 2 --sweep temp_c:0.2:1.8:9");
    CHECK(good.exit_code == 0);
    const auto rows = lines(good.out);
    REQUIRE(rows.size() == 10);
    CHECK(num(fields(rows[1])[1]) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(num(fields(rows[9])[1]) == doctest::Approx(1.8).epsilon(1e-15));
}

TEST_CASE("fig2: half-factor locus rises with slowing increments") {
    const RunResult r = run_cli("fig2");
    CHECK(r.exit_code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 25);
    CHECK(rows[0] == "T_e,T_c_half,status");
    double prev = 0.0;
    double prev_inc = 1e300;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto cols = fields(rows[i]);
        REQUIRE(cols.size() == 3);
        CHECK(cols[2] == "ok");
        const double tc = num(cols[1]);
        CHECK(tc > prev);
        if (i > 1) {
            const double inc = tc - prev;
            CHECK(inc < prev_inc);
            prev_inc = inc;
        }
        prev = tc;
    }

    const RunResult swept = run_cli("fig2 --sweep temp_e:0.5:2:4");
    CHECK(swept.exit_code == 0);
    REQUIRE(lines(swept.out).size() == 5);

    CHECK(run_cli("fig2 --target-fraction 1.5").exit_code == 2);
    CHECK(run_cli("fig2 --sweep temp_c:0.1:0.5:5").exit_code == 2);
}

TEST_CASE("fp: snapshot blocks with conserved mass") {
    const RunResult r = run_cli("fp --points 257 --t-end 1 --times 0.5,1");
    CHECK(r.exit_code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 1 + 2 * 258);
    CHECK(rows[0] == "x,value");
    CHECK(rows[1].rfind("# t=0.5 params=", 0) == 0);
    CHECK(rows[1].size() == std::string("# t=0.5 params=").size() + 16);
    CHECK(rows[259].rfind("# t=1 params=", 0) == 0);

    // parse the second block and integrate it
    std::vector<double> x, v;
    for (std::size_t i = 260; i < rows.size(); ++i) {
        const auto cols = fields(rows[i]);
        REQUIRE(cols.size() == 2);
        x.push_back(num(cols[0]));
        v.push_back(num(cols[1]));
        CHECK(v.back() >= 0.0);
    }
    REQUIRE(x.size() == 257);
    const double dx = x[1] - x[0];
    double mass = 0.5 * (v.front() + v.back());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) mass += v[i];
    mass *= dx;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-4));

    CHECK(run_cli("fp --times 1,0.5").exit_code == 2);
    CHECK(run_cli("fp --sweep temp_e:1:2:3").exit_code == 2);
}

TEST_CASE("validate: clean pass, forced failure, report file") {
    const std::string report = work_path("validation.txt");
    const RunResult ok = run_cli("validate --out \"" + report + "\"");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("overall: PASS") != std::string::npos);
    CHECK(ok.out.find("settings: dim=") != std::string::npos);
    CHECK(ok.out.find("[FAIL]") == std::string::npos);
    CHECK(slurp(report) == ok.out);
    std::remove(report.c_str());

    const RunResult bad = run_cli("validate --corrupt-tolerances");
    CHECK(bad.exit_code == 1);
    CHECK(bad.out.find("overall: FAIL") != std::string::npos);
    CHECK(bad.out.find("[FAIL]") != std::string::npos);
}

TEST_CASE("config file overlays defaults and flags override the file") {
    const std::string cfg = work_path("run_config.json");
    {
        std::ofstream out(cfg);
        out << R"({"gamma_e": 2.0, "temp_e": 3.0})";
    }
    const RunResult file_only = run_cli("steady --config \"" + cfg + "\"");
    CHECK(file_only.exit_code == 0);
    const RunResult flags_too = run_cli("steady --gamma-e 2 --temp-e 3");
    CHECK(file_only.out == flags_too.out);

    // a flag wins over the same key in the file
    const RunResult overridden =
        run_cli("steady --config \"" + cfg + "\" --temp-e 2 --gamma-e 1");
    CHECK(overridden.out == run_cli("steady").out);
    std::remove(cfg.c_str());
}

TEST_CASE("config file error paths") {
    CHECK(run_cli("steady --config \"" + work_path("absent.json") + "\"")
              .exit_code == 2);

    const std::string bad = work_path("bad_config.json");
    {
        std::ofstream out(bad);
        out << "{ not json";
    }
    CHECK(run_cli("steady --config \"" + bad + "\"").exit_code == 2);
    {
        std::ofstream out(bad);
        out << R"({"unknown_key": 1})";
    }
    const RunResult r = run_cli("steady --config \"" + bad + "\"");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("unknown_key") != std::string::npos);
    std::remove(bad.c_str());
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("bogus_subcommand").exit_code == 2);
    CHECK(run_cli("steady --bogus-flag 1").exit_code == 2);
    CHECK(run_cli("steady --sweep nope").exit_code == 2);
    CHECK(run_cli("steady --temp-e 2 --temp-e 3").exit_code == 2);
    CHECK(run_cli("steady --temp-e -1").exit_code == 2);
    CHECK(run_cli("transport --sweep temp_e:1:2:3", "OPEN_BOSON_THREADS=abc")
              .exit_code == 2);
    const RunResult help = run_cli("--help");
    CHECK(help.exit_code == 0);
    CHECK(help.out.find("steady") != std::string::npos);
}
