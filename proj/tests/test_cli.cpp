#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kCli = QOTTO_CLI_PATH;
const fs::path kConfigs = QOTTO_CONFIG_DIR;

fs::path scratch(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("qotto_test_cli_" + tag);
    fs::remove_all(p);
    return p;
}

int cli(const std::string& args) {
    const std::string cmd = "\"" + kCli.string() + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string first_line(const fs::path& path) {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    return line;
}

} // namespace

TEST_CASE("every sample config runs and writes its files") {
    struct Case {
        const char* command;
        const char* config;
        const char* csv;
        const char* header;
    };
    const Case cases[] = {
        {"spectrum", "spectrum.json", "spectrum.csv", "index,re_lambda,im_lambda"},
        {"steady", "steady.json", "steady.csv", "P_e,P_g,re_rho_eg,im_rho_eg,P_e_closed_form"},
        {"cycle", "cycle.json", "trajectory.csv",
         "t_s,P_e,P_g,re_rho_eg,im_rho_eg,delta_rad_s,omega_rad_s,gamma_eff_s,T_eff,C_l1,S,stroke"},
        {"sweep-t2", "sweep_t2.json", "sweep.csv", "t2_s,W,P_out,eta_c,eta_q"},
        {"sweep-ratio", "sweep_ratio.json", "sweep.csv", "ratio,t2_s,W"},
        {"lep-locate", "lep_locate.json", "lep.csv", "model,omega_over_gamma_eff,gamma_eff_over_4omega,iterations"},
        {"three-level-compare", "three_level_compare.json", "sweep.csv",
         "gamma_over_4omega,re_l3_2level,re_l4_2level,re_l3_3level,re_l4_3level"},
    };
    for (const Case& c : cases) {
        CAPTURE(c.command);
        const fs::path out = scratch(c.command);
        CHECK(cli(std::string(c.command) + " --config \"" + (kConfigs / c.config).string() + "\" --out \"" +
                  out.string() + "\"") == 0);
        CHECK(first_line(out / c.csv) == c.header);
        CHECK(fs::exists(out / "summary.json"));
        fs::remove_all(out);
    }
}

TEST_CASE("flags override the config file") {
    const fs::path a = scratch("flags_a");
    const fs::path b = scratch("flags_b");
    const std::string config = "--config \"" + (kConfigs / "cycle.json").string() + "\"";
    CHECK(cli("cycle " + config + " --out \"" + a.string() + "\" --preset broken-broken --shots 0") == 0);
    CHECK_FALSE(fs::exists(a / "measurements.csv"));
    CHECK(slurp(a / "summary.json").find("\"preset\": \"broken-broken\"") != std::string::npos);
    CHECK(cli("cycle " + config + " --out \"" + b.string() + "\" --ramp linear --seed 11") == 0);
    CHECK(fs::exists(b / "measurements.csv"));
    CHECK(slurp(b / "summary.json").find("\"ramp\": \"linear\"") != std::string::npos);
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("repeated runs give byte-identical CSV") {
    const fs::path a = scratch("det_a");
    const fs::path b = scratch("det_b");
    const std::string config = "cycle --config \"" + (kConfigs / "cycle.json").string() + "\" --seed 99";
    REQUIRE(cli(config + " --out \"" + a.string() + "\"") == 0);
    REQUIRE(cli(config + " --out \"" + b.string() + "\"") == 0);
    CHECK(slurp(a / "trajectory.csv") == slurp(b / "trajectory.csv"));
    CHECK(slurp(a / "measurements.csv") == slurp(b / "measurements.csv"));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("exit codes") {
    const fs::path dir = scratch("codes");
    fs::create_directories(dir);
    std::ofstream(dir / "bad.json") << "{\"command\": \"cycle\", \"shots\": -1}";
    std::ofstream(dir / "broken.json") << "{\"command\": ";
    std::ofstream(dir / "blocker") << "x";
    const std::string good = "--config \"" + (kConfigs / "spectrum.json").string() + "\"";

    CHECK(cli("cycle --config \"" + (dir / "bad.json").string() + "\" --out \"" + (dir / "o").string() + "\"") == 2);
    CHECK(cli("cycle --config \"" + (dir / "broken.json").string() + "\" --out \"" + (dir / "o").string() + "\"") ==
          2);
    CHECK(cli("cycle --config \"" + (dir / "missing.json").string() + "\"") == 2);
    CHECK(cli("cycle " + good + " --out \"" + (dir / "o").string() + "\"") == 2);
    CHECK(cli("warp " + good) == 2);
    CHECK(cli("spectrum " + good + " --preset sideways") == 2);
    CHECK(cli("spectrum " + good + " --out \"" + (dir / "blocker" / "sub").string() + "\"") == 4);
    fs::remove_all(dir);
}
