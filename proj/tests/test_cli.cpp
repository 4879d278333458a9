#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const char* kCli = OTSLAB_CLI_PATH;

int run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + kCli + "\" " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / "otslab_cli_test" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string kShortRun =
    "--alpha 1.5 --mu 1 --r 2 --n 128 --dt 1e-3 --t-end 0.05 --ic \"1+0.5*cos(x)\"";

} // namespace

TEST_CASE("simulate writes diagnostics, state and manifest") {
    const fs::path dir = fresh_dir("sim");
    CHECK(run_cli("simulate " + kShortRun + " --out " + dir.string()) == 0);
    CHECK(fs::exists(dir / "diagnostics.csv"));
    CHECK(fs::exists(dir / "u_final.csv"));
    CHECK(fs::exists(dir / "q_final.csv"));
    CHECK(fs::exists(dir / "manifest.json"));
    const auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(m.at("classification") == "bounded");
    CHECK(m.at("config").at("alpha") == 1.5);
}

TEST_CASE("usage errors exit with code 2") {
    const fs::path dir = fresh_dir("usage");
    CHECK(run_cli("simulate --mu 1 --r 2 --out " + dir.string()) == 2); // missing --alpha
    CHECK(run_cli("simulate --alpha 1.5 --out " + dir.string()) == 2);  // missing kinetics
    CHECK(run_cli("simulate " + kShortRun) == 2);                       // missing --out
    CHECK(run_cli("frobnicate") == 2);
    CHECK(run_cli("simulate --bogus-flag 1") == 2);
    CHECK(run_cli("simulate " + kShortRun + " --ic \"sin(\" --out " + dir.string()) == 2);
}

TEST_CASE("blow-up exits 3 and records the classification") {
    const fs::path dir = fresh_dir("blowup");
    const int rc = run_cli("simulate --alpha 1 --mu 0 --r 1.5 --n 128 --dt 1e-2 --t-end 100 "
                           "--ic \"1+0.9*cos(x)\" --out " +
                           dir.string());
    CHECK(rc == 3);
    const auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(m.at("classification") == "blowup");
    CHECK(m.contains("blowup"));
    CHECK(fs::exists(dir / "diagnostics.csv"));
}

TEST_CASE("manifest round trip reproduces CSVs byte for byte") {
    const fs::path a = fresh_dir("rt_a");
    const fs::path b = fresh_dir("rt_b");
    REQUIRE(run_cli("simulate " + kShortRun + " --out " + a.string()) == 0);
    REQUIRE(run_cli("simulate --from-manifest " + (a / "manifest.json").string() + " --out " +
                    b.string()) == 0);
    CHECK(slurp(a / "diagnostics.csv") == slurp(b / "diagnostics.csv"));
    CHECK(slurp(a / "u_final.csv") == slurp(b / "u_final.csv"));
    CHECK(slurp(a / "q_final.csv") == slurp(b / "q_final.csv"));
}

TEST_CASE("oracle exits by tolerance") {
    const fs::path dir = fresh_dir("oracle");
    CHECK(run_cli("oracle --alpha 1 --n 256 --cutoff 50 --ic \"2+cos(x)\" --out " +
                  dir.string()) == 0);
    CHECK(fs::exists(dir / "oracle.csv"));
    const std::string head = slurp(dir / "oracle.csv").substr(0, 27);
    CHECK(head == "x,spectral,integral,abs_err");
    // constant field: both paths zero, relative error defined as 0
    CHECK(run_cli("oracle --alpha 1 --n 128 --cutoff 10 --ic \"3\" --out " + dir.string()) == 0);
    // unreachable tolerance trips exit code 5
    CHECK(run_cli("oracle --alpha 1 --n 128 --cutoff 10 --tol 1e-18 --ic \"2+cos(x)\" --out " +
                  dir.string()) == 5);
}

TEST_CASE("inequalities exit 0 on clean reports and write them") {
    const fs::path dir = fresh_dir("ineq");
    CHECK(run_cli("inequalities --lemma 1a --alpha 1 --samples 25 --seed 7 --lab-n 64 --out " +
                  dir.string()) == 0);
    CHECK(fs::exists(dir / "report_lemma1-hs.json"));
    CHECK(fs::exists(dir / "ratios_lemma1-hs.csv"));
    const auto rep = nlohmann::json::parse(slurp(dir / "report_lemma1-hs.json"));
    CHECK(rep.at("violations") == 0);
    CHECK(rep.at("sample_count") == 25);
    CHECK(run_cli("inequalities --lemma b2 --alpha 1 --s 0.5 --delta 0.1 --samples 10 "
                  "--lab-n 64 --out " +
                  dir.string()) == 0);
    CHECK(run_cli("inequalities --lemma 1a --alpha 1 --samples 0 --out " + dir.string()) == 2);
    CHECK(run_cli("inequalities --lemma 9 --alpha 1 --samples 5 --out " + dir.string()) == 2);
}

TEST_CASE("sweep: degenerate grid matches simulate, reruns are byte identical") {
    const fs::path s1 = fresh_dir("sweep1");
    const fs::path s2 = fresh_dir("sweep2");
    const std::string args = "sweep --alphas 1.5,0.8 --rs 2,1 --mu 1 --n 128 --dt 1e-3 "
                             "--t-end 0.05 --ic \"1+0.5*cos(x)\" --seed 3 --out ";
    REQUIRE(run_cli(args + s1.string() + " --jobs 1") == 0);
    REQUIRE(run_cli(args + s2.string() + " --jobs 4") == 0);
    const std::string csv = slurp(s1 / "regimes.csv");
    CHECK(csv == slurp(s2 / "regimes.csv"));
    CHECK(csv.rfind("alpha,r,classification,t_final,max_linf_u\n", 0) == 0);
    CHECK(csv.find("bounded") != std::string::npos);

    const fs::path sim = fresh_dir("sweep_sim");
    REQUIRE(run_cli("simulate " + kShortRun + " --out " + sim.string()) == 0);
    const auto m = nlohmann::json::parse(slurp(sim / "manifest.json"));
    CHECK(csv.find(m.at("classification").get<std::string>()) != std::string::npos);
}

TEST_CASE("plotdata emits per-diagnostic CSV and SVG") {
    const fs::path dir = fresh_dir("plot");
    REQUIRE(run_cli("simulate " + kShortRun + " --out " + dir.string()) == 0);
    CHECK(run_cli("plotdata --run " + dir.string()) == 0);
    CHECK(fs::exists(dir / "plots" / "lyapunov.svg"));
    CHECK(fs::exists(dir / "plots" / "lyapunov.csv"));
    CHECK(fs::exists(dir / "plots" / "mass.csv"));

    // the polyline embeds exactly the values of the per-diagnostic CSV
    const std::string svg = slurp(dir / "plots" / "lyapunov.svg");
    const std::string csv = slurp(dir / "plots" / "lyapunov.csv");
    std::stringstream lines(csv);
    std::string line;
    std::getline(lines, line); // header
    std::getline(lines, line);
    const std::string first_pair = line.substr(0, line.find('\n'));
    std::string embedded = first_pair;
    CHECK(svg.find(embedded) != std::string::npos);

    const fs::path empty = fresh_dir("plot_empty");
    CHECK(run_cli("plotdata --run " + empty.string()) == 2);
}

TEST_CASE("plotdata on a sweep emits the regime heat map") {
    const fs::path dir = fresh_dir("plot_sweep");
    REQUIRE(run_cli("sweep --alphas 1.5 --rs 2 --mu 1 --n 128 --dt 1e-3 --t-end 0.02 "
                    "--ic \"1+0.5*cos(x)\" --out " +
                    dir.string()) == 0);
    CHECK(run_cli("plotdata --run " + dir.string()) == 0);
    const std::string hm = slurp(dir / "plots" / "regime_heatmap.csv");
    CHECK(hm.rfind("alpha,r,class_code\n", 0) == 0);
    CHECK(hm.find("1.5,2,0") != std::string::npos);
}

TEST_CASE("OTSLAB_OUT overrides relative output directories") {
    const fs::path base = fresh_dir("envbase");
    setenv("OTSLAB_OUT", base.c_str(), 1);
    const int rc = run_cli("simulate " + kShortRun + " --out relrun");
    unsetenv("OTSLAB_OUT");
    CHECK(rc == 0);
    CHECK(fs::exists(base / "relrun" / "manifest.json"));
}
