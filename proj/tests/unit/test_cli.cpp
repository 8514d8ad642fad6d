#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "xpjost/commands.hpp"
#include "xpjost/errors.hpp"
#include "xpjost/model_config.hpp"

using namespace xpjost;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// Runs the CLI binary named by XPJOST_CLI, capturing stdout.
Run run_cli(const std::string& args) {
    const char* bin = std::getenv("XPJOST_CLI");
    REQUIRE(bin != nullptr);
    const std::string cmd = std::string("SOURCE_DATE_EPOCH=0 '") + bin + "' " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    Run r;
    char buf[4096];
    while (std::fgets(buf, sizeof buf, pipe)) r.out += buf;
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("model config parsing") {
    const ModelSpec m = parse_model(R"({"model":"M2","a":{"family":"exp_sum","terms":[{"coef":1,"rate":2}]},
                                        "b":{"family":"step","amplitude":0.5,"q_edge":1.5},"L":7})");
    CHECK(m.kind == ModelKind::M2);
    CHECK(m.L == 7.0);
    CHECK(std::get<Step>(m.b).q_edge == 1.5);
    CHECK(std::isinf(parse_model(R"({"model":"M1","a":{"family":"sawtooth_zeta","c":-4}})").L));
    CHECK(std::isinf(parse_model(R"({"model":"M1","a":{"family":"bessel_half","c":-2,"lambda":6.28},"L":"infinite"})").L));

    // Round trip.
    const ModelSpec back = parse_model(model_to_json(m));
    CHECK(back.kind == m.kind);
    CHECK(std::get<ExpSum>(back.a).terms.at(0).rate == 2.0);

    auto message = [](const std::string& text) {
        try {
            parse_model(text);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message(R"({"model":"M1","a":{"family":"exp_sum","terms":[{"coef":1,"rate":1},{"coef":1,"rate":-1}]}})")
              .find("a.terms[1].rate") != std::string::npos);
    CHECK(message(R"({"model":"M3","a":{"family":"exp_sum","terms":[]}})").find("model") != std::string::npos);
    CHECK(message(R"({"model":"M1","a":{"family":"dirichlet_saw","c":1,"modulus":5}})").find("modulus") !=
          std::string::npos);
    CHECK(message(R"({"model":"M1","a":{"family":"constant_one"}})").find("decaying") != std::string::npos);
    CHECK(message("{\"model\":\n  \"M1\",,}").find("line") != std::string::npos);
    CHECK_THROWS_AS(load_model("/nonexistent/model.json"), ConfigError);
}

TEST_CASE("range parsing and timestamps") {
    CHECK(parse_range("-3:4.5") == std::pair<double, double>(-3.0, 4.5));
    CHECK(parse_range("1e1:2e1") == std::pair<double, double>(10.0, 20.0));
    CHECK_THROWS_AS(parse_range("3"), ConfigError);
    CHECK_THROWS_AS(parse_range("a:b"), ConfigError);
    CHECK_THROWS_AS(parse_range("5:1"), ConfigError);

    setenv("SOURCE_DATE_EPOCH", "86400", 1);
    CHECK(timestamp_line() == "# generated 1970-01-02T00:00:00Z\n");
    unsetenv("SOURCE_DATE_EPOCH");
}

TEST_CASE("commands in process") {
    setenv("SOURCE_DATE_EPOCH", "0", 1);
    RunConfig cfg;
    cfg.subcommand = "eval";
    cfg.model = R"({"model":"M1","a":{"family":"exp_sum","terms":[{"coef":1,"rate":1}]}})";
    cfg.range = std::pair<double, double>(0.0, 1.0);
    cfg.mesh = 0.5;
    const std::string csv = run_command(cfg);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "# generated 1970-01-01T00:00:00Z");
    std::getline(in, line);
    CHECK(line == "E,re_F,im_F,abs_F");
    std::getline(in, line);
    CHECK(line == "0,1,0,1");
    CHECK(count_lines(csv) == 5);

    // An empty range yields only the header.
    cfg.range = std::pair<double, double>(3.0, 3.0);
    cfg.mesh = 1.0;
    CHECK(count_lines(run_command(cfg)) <= 3);

    RunConfig bad = cfg;
    bad.subcommand = "oracle";
    bad.length = 5.0;
    bad.model = R"({"model":"M1","a":{"family":"exp_sum","terms":[{"coef":1,"rate":1}]},"L":4})";
    CHECK_THROWS_AS(run_command(bad), ConfigError);
    bad.subcommand = "nope";
    CHECK_THROWS_AS(run_command(bad), ConfigError);

    CHECK(exit_code_for(ConfigError("x")) == 2);
    CHECK(exit_code_for(DomainError("x")) == 2);
    CHECK(exit_code_for(ConvergenceError("x")) == 3);
    CHECK(exit_code_for(PoleError("x")) == 3);
    unsetenv("SOURCE_DATE_EPOCH");
}

TEST_CASE("command-line binary") {
    if (!std::getenv("XPJOST_CLI")) {
        MESSAGE("XPJOST_CLI not set; skipping binary checks");
        return;
    }
    const std::string model = R"('{"model":"M1","a":{"family":"exp_sum","terms":[{"coef":3.3333333333333335,"rate":1},{"coef":-3.3333333333333335,"rate":4}]}}')";

    const Run eval = run_cli("eval --model " + model + " --range 0:1 --mesh 0.25");
    CHECK(eval.code == 0);
    CHECK(eval.out.rfind("# generated 1970-01-01T00:00:00Z\nE,re_F,im_F,abs_F\n", 0) == 0);
    CHECK(count_lines(eval.out) == 7);

    const Run spec = run_cli("spectrum --model " + model + " --range -5:5");
    CHECK(spec.code == 0);
    CHECK(spec.out.find("\"bound_states\"") != std::string::npos);
    CHECK(spec.out.find("localized") != std::string::npos);

    const Run zeta = run_cli("zeta --range 14:14.2 --mesh 0.1");
    CHECK(zeta.code == 0);
    CHECK(zeta.out.find("t,theta,Z,re_zeta,im_zeta,n_smooth,re_zeta_H,im_zeta_H") != std::string::npos);

    const auto path = std::filesystem::temp_directory_path() / "xpjost_cli_out.csv";
    const Run to_file = run_cli("eval --model " + model + " --range 0:1 --mesh 0.5 --out '" + path.string() + "'");
    CHECK(to_file.code == 0);
    CHECK(to_file.out.empty());
    std::ifstream f(path);
    std::stringstream content;
    content << f.rdbuf();
    CHECK(count_lines(content.str()) == 5);
    std::filesystem::remove(path);

    CHECK(run_cli("eval").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
    CHECK(run_cli("eval --model '{\"model\":\"M1\"}'").code == 2);
    CHECK(run_cli("eval --model " + model + " --range 3:1").code == 2);
    CHECK(run_cli("oracle --model " + model + " --grid-n 4 --length 5").code == 2);
}
