// End-to-end checks of the command-line runner: determinism, exit codes,
// output schemas and manifests. The binary path comes in via POLARON_CLI.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string cli_path() {
    const char* path = std::getenv("POLARON_CLI");
    REQUIRE_MESSAGE(path != nullptr, "POLARON_CLI must point at the built binary");
    return path;
}

int run(const std::string& args, const std::string& stderr_file = "cli_stderr.txt") {
    const std::string command = cli_path() + " " + args + " 2>" + stderr_file;
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_CASE("identical runs produce identical bytes") {
    REQUIRE(run("groundstate --alpha 0:0.4:5 --N 101 --L 10 --seed 7 -o cli_a.csv") == 0);
    REQUIRE(run("groundstate --alpha 0:0.4:5 --N 101 --L 10 --seed 7 -o cli_b.csv") == 0);
    const std::string a = slurp("cli_a.csv");
    CHECK(!a.empty());
    CHECK(a == slurp("cli_b.csv"));
    CHECK(a.substr(0, a.find('\n')) == "alpha, delta_r, sigma_z, energy, residual, degenerate");
}

TEST_CASE("worker cap does not change the bytes") {
    REQUIRE(run("groundstate --alpha 0:0.4:5 --N 101 --L 10 --seed 7 -o cli_c.csv") == 0);
    const std::string command = std::string("POLARON_THREADS=1 ") + cli_path() +
                                " groundstate --alpha 0:0.4:5 --N 101 --L 10 --seed 7 -o "
                                "cli_d.csv 2>/dev/null";
    REQUIRE(WEXITSTATUS(std::system(command.c_str())) == 0);
    CHECK(slurp("cli_c.csv") == slurp("cli_d.csv"));
}

TEST_CASE("config errors exit 2 with json on stderr") {
    CHECK(run("groundstate --alpha -0.5 --N 101", "cli_err.json") == 2);
    const std::string err = slurp("cli_err.json");
    CHECK(err.find("\"kind\":\"config\"") != std::string::npos);
    CHECK(err.find("\"error\"") != std::string::npos);

    CHECK(run("groundstate --alpha 0.1:0.2 --N 101", "cli_err.json") == 2);
    CHECK(run("emission --alpha 0:0.2:3 --N 101", "cli_err.json") == 2);
}

TEST_CASE("manifest sits alongside the csv") {
    REQUIRE(run("spectrum --alpha 0.1 --N 101 --L 10 -o cli_sp.csv") == 0);
    const std::string manifest = slurp("cli_sp.csv.manifest.json");
    for (const char* needle :
         {"\"command\": \"spectrum\"", "\"N\": 101", "\"alpha\": 0.1", "\"t_max\"", "\"dt\"",
          "\"version\"", "\"wall_time_seconds\""})
        CHECK(manifest.find(needle) != std::string::npos);
    const std::string csv = slurp("cli_sp.csv");
    CHECK(csv.substr(0, csv.find('\n')) == "omega_signed, density");
}

TEST_CASE("emission and scattering schemas") {
    REQUIRE(run("emission --alpha 0.05 --N 101 --L 10 --t-max 20 --dt 1 -o cli_em.csv") == 0);
    const std::string em = slurp("cli_em.csv");
    CHECK(em.substr(0, 13) == "t, survival, ");

    REQUIRE(run("scattering --alpha 0.1 --N 301 --L 10 --packet-center 2.5 "
                "--t-final 49.5 -o cli_sc.csv") == 0);
    const std::string sc = slurp("cli_sc.csv");
    CHECK(sc.substr(0, sc.find('\n')) == "omega_signed, T, R, theta_t, theta_r, masked");

    REQUIRE(run("two-emitter --alpha 0.05:0.3:3 --distance 1.0 --omega-c 200 -o cli_te.csv") == 0);
    const std::string te = slurp("cli_te.csv");
    CHECK(te.substr(0, te.find('\n')) ==
          "alpha, d_over_lambda0, gamma_i, gamma_12, delta_i, g12_real, g12_imag, localized");
}

TEST_CASE("hidden oracle check emits machine-readable results") {
    REQUIRE(run("oracle-check > cli_oracle.json") == 0);
    const std::string report = slurp("cli_oracle.json");
    CHECK(report.find("\"all_pass\": true") != std::string::npos);
    CHECK(report.find("variational_bound") != std::string::npos);
}
