// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hetero/grid.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = HETERO_CLI_PATH;

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

RunResult run(const std::string& args) {
    static int counter = 0;
    fs::path dir = fs::temp_directory_path() / "hetero_cli_test";
    fs::create_directories(dir);
    fs::path outp = dir / ("out" + std::to_string(counter) + ".txt");
    fs::path errp = dir / ("err" + std::to_string(counter) + ".txt");
    ++counter;
    std::string cmd = kCli + " " + args + " >" + outp.string() + " 2>" + errp.string();
    int status = std::system(cmd.c_str());
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(outp);
    r.err = slurp(errp);
    return r;
}

fs::path write_temp(const std::string& name, const std::string& content) {
    fs::path dir = fs::temp_directory_path() / "hetero_cli_test";
    fs::create_directories(dir);
    fs::path p = dir / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

fs::path make_noise_pgm(const std::string& name, unsigned seed, std::size_t side = 96) {
    std::mt19937 rng(seed);
    hetero::ImageGrid g;
    g.rows = g.cols = side;
    g.max_value = 255;
    for (std::size_t i = 0; i < side * side; ++i)
        g.pixels.push_back(static_cast<int>(rng() % 256));
    return write_temp(name, hetero::serialize_pgm(g));
}

}  // namespace

TEST_CASE("--help exits 0 and documents defaults") {
    auto r = run("--help");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("analyze") != std::string::npos);
    CHECK(r.out.find("synth") != std::string::npos);

    auto ra = run("analyze --help");
    CHECK(ra.exit_code == 0);
    for (const char* flag : {"--input", "--out", "--format", "--wavelet", "--levels",
                             "--omega0", "--q-min", "--q-max", "--q-step", "--detrend",
                             "--raw", "--theta-hurst", "--theta-width", "--theta-energy",
                             "--cwt-scales", "--mfdfa-scales", "--dump-config"}) {
        CAPTURE(flag);
        CHECK(ra.out.find(flag) != std::string::npos);
    }
    CHECK(ra.out.find("db4") != std::string::npos);  // defaults shown
    CHECK(ra.out.find("0.05") != std::string::npos);
}

TEST_CASE("unknown arguments are usage errors (exit 1)") {
    CHECK(run("").exit_code == 1);
    CHECK(run("analyze --no-such-flag").exit_code == 1);
    CHECK(run("synth --kind bogus").exit_code == 1);
}

TEST_CASE("dump-config emits spec defaults as JSON") {
    auto r = run("analyze --dump-config");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["wavelet"] == "db4");
    CHECK(j["levels"] == 5);
    CHECK(j["omega0"] == 6.0);
    CHECK(j["cwt_scale_count"] == 32);
    CHECK(j["q_min"] == -5.0);
    CHECK(j["q_max"] == 5.0);
    CHECK(j["q_step"] == 0.5);
    CHECK(j["detrend_order"] == 1);
    CHECK(j["mfdfa_scale_count"] == 20);
    CHECK(j["analysis_input"] == "fluctuation");
    CHECK(j["thresholds"]["hurst"] == 0.05);
    CHECK(j["thresholds"]["width"] == 0.10);
    CHECK(j["thresholds"]["energy"] == 0.10);
}

TEST_CASE("analyze happy path writes a report") {
    fs::path pgm = make_noise_pgm("ok.pgm", 1);
    fs::path out = fs::temp_directory_path() / "hetero_cli_test" / "report.json";
    auto r = run("analyze --input " + pgm.string() + " --out " + out.string());
    CHECK(r.exit_code == 0);
    REQUIRE(fs::exists(out));
    std::ifstream in(out);
    auto j = nlohmann::json::parse(in);
    CHECK(j["schema_version"] == "1");
    CHECK((j["verdict"] == "Heterogeneous" || j["verdict"] == "NotDistinguished"));
}

TEST_CASE("missing input file: exit 2, stderr names the path") {
    auto r = run("analyze --input /nonexistent/missing.pgm");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("missing.pgm") != std::string::npos);
}

TEST_CASE("malformed PGM: exit 2") {
    fs::path bad = write_temp("bad.pgm", "P7 2 2 255 0 0 0 0");
    auto r = run("analyze --input " + bad.string());
    CHECK(r.exit_code == 2);
}

TEST_CASE("constant series: exit 3, degenerate message") {
    std::string csv = "value\n";
    for (int i = 0; i < 1024; ++i) csv += "5\n";
    fs::path flat = write_temp("flat.csv", csv);
    auto r = run("mfdfa --input " + flat.string());
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("degenerate: zero variance") != std::string::npos);
}

TEST_CASE("series CSV parse error reports the line number") {
    std::string csv = "x\n1\nabc\n";
    fs::path p = write_temp("badline.csv", csv);
    auto r = run("mfdfa --input " + p.string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("synth cascade then mfdfa stage-by-stage") {
    fs::path dir = fs::temp_directory_path() / "hetero_cli_test";
    fs::path series = dir / "cascade.csv";
    auto r1 = run("synth --kind cascade --a 0.6 --cascade-levels 12 --out " + series.string());
    REQUIRE(r1.exit_code == 0);
    auto r2 = run("mfdfa --input " + series.string() + " --outdir " + (dir / "mf").string());
    CHECK(r2.exit_code == 0);
    CHECK(fs::exists(dir / "mf" / "fluctuation.csv"));
    CHECK(fs::exists(dir / "mf" / "hurst.csv"));
    CHECK(fs::exists(dir / "mf" / "spectrum.csv"));
}

TEST_CASE("synth requires a seed for random kinds") {
    CHECK(run("synth --kind white --length 1024").exit_code == 2);
    auto r = run("synth --kind white --length 1024 --seed 5 --out -");
    CHECK(r.exit_code == 0);
}

TEST_CASE("synth PGM refold round-trips through analyze") {
    fs::path dir = fs::temp_directory_path() / "hetero_cli_test";
    fs::path pgm = dir / "white.pgm";
    auto r1 = run("synth --kind white --length 16384 --seed 3 --out " +
                  (dir / "white.csv").string() + " --pgm " + pgm.string());
    REQUIRE(r1.exit_code == 0);
    auto r2 = run("analyze --input " + pgm.string() + " --out " +
                  (dir / "white_report.json").string());
    CHECK(r2.exit_code == 0);
}

TEST_CASE("dwt and cwt subcommands run on CSV input") {
    fs::path dir = fs::temp_directory_path() / "hetero_cli_test";
    fs::path series = dir / "wn.csv";
    REQUIRE(run("synth --kind white --length 1024 --seed 11 --out " + series.string())
                .exit_code == 0);

    auto rd = run("dwt --input " + series.string() + " --energy-out -");
    CHECK(rd.exit_code == 0);
    CHECK(rd.out.find("level,energy") != std::string::npos);

    auto rc = run("cwt --input " + series.string() + " --out -");
    CHECK(rc.exit_code == 0);
    CHECK(rc.out.find("scale,log10_mean_power") != std::string::npos);
}

TEST_CASE("analyze determinism: byte-identical JSON across runs") {
    fs::path pgm = make_noise_pgm("det.pgm", 77);
    fs::path dir = fs::temp_directory_path() / "hetero_cli_test";
    fs::path o1 = dir / "det1.json", o2 = dir / "det2.json";
    REQUIRE(run("analyze --input " + pgm.string() + " --out " + o1.string()).exit_code == 0);
    REQUIRE(run("analyze --input " + pgm.string() + " --out " + o2.string()).exit_code == 0);
    std::ifstream a(o1, std::ios::binary), b(o2, std::ios::binary);
    std::ostringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(!sa.str().empty());
}
