// Drives the installed CLI binary end to end through a shell pipe.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "ctment/scaling.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    std::string cmd = (env_prefix.empty() ? "" : env_prefix + " ") + CTMENT_CLI_PATH + " " +
                      args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0)
        r.out.append(buf, n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path temp_dir() {
    fs::path dir = fs::temp_directory_path() / ("ctment_cli_test_" + std::to_string(getpid()));
    fs::create_directories(dir);
    return dir;
}

double json_field(const std::string& text, const std::string& key) {
    std::string needle = "\"" + key + "\": ";
    size_t pos = text.find(needle);
    REQUIRE(pos != std::string::npos);
    return std::strtod(text.c_str() + pos + needle.size(), nullptr);
}

} // namespace

TEST_CASE("entropy command basics") {
    RunResult r = run_cli("entropy --kappa 1 --i 0 --eps 0.5 --method direct --format csv");
    CHECK(r.code == 0);
    CHECK(r.out.find("eps,kappa,i,method,S,est_error,terms,ln_xi_exact,ln_xi_asym") !=
          std::string::npos);
    CHECK(r.out.find("0.5,1,0,direct,") != std::string::npos);

    RunResult table = run_cli("entropy --kappa 1 --i 0 --eps 0.5 --method direct");
    CHECK(table.code == 0);
    CHECK(table.out.find("S          = ") != std::string::npos);
    CHECK(table.out.find("terms_used") != std::string::npos);
}

TEST_CASE("auto method policy") {
    RunResult small = run_cli("entropy --kappa 2 --i 1 --eps 0.4 --method auto --format csv");
    CHECK(small.code == 0);
    CHECK(small.out.find(",poisson,") != std::string::npos);

    RunResult large = run_cli("entropy --kappa 2 --i 1 --eps 0.6 --method auto --format csv");
    CHECK(large.code == 0);
    CHECK(large.out.find(",direct,") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli("entropy --kappa 1 --i 2 --eps 0.5").code == 2);
    CHECK(run_cli("entropy --kappa 1 --i 0 --eps -0.5").code == 2);
    CHECK(run_cli("entropy --kappa 1 --i 0").code == 2); // missing --eps
    CHECK(run_cli("nonsense").code == 2);
}

TEST_CASE("numeric failures exit with 3") {
    // spectrum method above its x ceiling
    RunResult r = run_cli("entropy --kappa 1 --i 0 --eps 0.15 --method spectrum");
    CHECK(r.code == 3);
    CHECK(r.out.find("tail") != std::string::npos);
}

TEST_CASE("sweep output is deterministic and ordered") {
    std::string args = "sweep --kappa 2 --i 1,0 --eps-start 0.05 --eps-stop 0.4 --count 4 "
                       "--methods direct,poisson --format csv";
    RunResult a = run_cli(args);
    RunResult b = run_cli(args + " --jobs 4");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    // rows: eps descending, then i ascending, then method order
    std::vector<std::string> lines;
    std::string line;
    std::istringstream is(a.out);
    while (std::getline(is, line))
        lines.push_back(line);
    REQUIRE(lines.size() == 1 + 4 * 2 * 2);

    struct Key {
        double eps;
        int i;
        std::string method;
    };
    std::vector<Key> keys;
    for (size_t k = 1; k < lines.size(); ++k) {
        std::istringstream row(lines[k]);
        std::string eps_s, kappa_s, i_s, method_s;
        REQUIRE(std::getline(row, eps_s, ','));
        REQUIRE(std::getline(row, kappa_s, ','));
        REQUIRE(std::getline(row, i_s, ','));
        REQUIRE(std::getline(row, method_s, ','));
        CHECK(kappa_s == "2");
        keys.push_back({std::strtod(eps_s.c_str(), nullptr), std::atoi(i_s.c_str()), method_s});
    }
    CHECK(keys.front().eps == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(keys.front().i == 0);
    CHECK(keys.front().method == "direct");
    CHECK(keys[1].method == "poisson");
    CHECK(keys[2].i == 1);
    for (size_t k = 1; k < keys.size(); ++k) {
        bool ordered = keys[k - 1].eps > keys[k].eps ||
                       (keys[k - 1].eps == keys[k].eps &&
                        (keys[k - 1].i < keys[k].i ||
                         (keys[k - 1].i == keys[k].i && keys[k - 1].method < keys[k].method)));
        CHECK(ordered);
    }
}

TEST_CASE("sweep to file, fit from file, against the in-process fit") {
    fs::path dir = temp_dir();
    fs::path csv = dir / "sweep.csv";

    int count = 6;
    RunResult sw = run_cli("sweep --kappa 1 --i 0 --eps-start 0.2 --eps-stop 0.02 --count " +
                           std::to_string(count) + " --methods auto --format csv --output " +
                           csv.string());
    REQUIRE(sw.code == 0);

    RunResult fit = run_cli("fit --input " + csv.string() + " --format json");
    REQUIRE(fit.code == 0);
    CHECK(fit.out.find("modulus_convention") != std::string::npos);

    // replicate the sweep grid in process
    using namespace ctment;
    std::vector<std::pair<double, double>> pts;
    double ratio = std::pow(0.02 / 0.2, 1.0 / (count - 1));
    double eps = 0.2;
    for (int k = 0; k < count; ++k) {
        pts.emplace_back(eps, entropy(ModelPoint(1, 0, Nome::from_epsilon(eps)),
                                      Method::poisson)
                                  .value);
        eps *= ratio;
    }
    ScalingFit expect = fit_scaling(pts);

    CHECK(std::abs(json_field(fit.out, "c_estimate") - expect.c_estimate) < 1e-12);
    CHECK(std::abs(json_field(fit.out, "slope") - expect.slope) < 1e-12);
    CHECK(std::abs(json_field(fit.out, "c_estimate") - 1.0) < 2e-3);

    fs::remove_all(dir);
}

TEST_CASE("inline fit reports boundary entropy extraction") {
    RunResult fit = run_cli("fit --kappa 2 --i 0,1 --eps-start 0.2 --eps-stop 0.02 --count 8 "
                            "--format json");
    REQUIRE(fit.code == 0);
    // i = 1 block carries the extraction against the i = 0 reference
    size_t pos = fit.out.find("\"i\": 1");
    REQUIRE(pos != std::string::npos);
    double lng = json_field(fit.out.substr(pos), "ln_g_extracted");
    CHECK(std::abs(lng - 0.5 * std::log(2.0)) < 1e-3);
}

TEST_CASE("malformed CSV names the row") {
    fs::path dir = temp_dir();
    fs::path bad = dir / "bad.csv";
    {
        std::ofstream f(bad);
        f << "eps,kappa,i,method,S,est_error,terms,ln_xi_exact,ln_xi_asym\n";
        f << "0.2,1,0,poisson,1.0,1e-14,10,24.6,24.7\n";
        f << "0.1,1,0,poisson,not_a_number,1e-14,10,49.3,49.3\n";
    }
    RunResult r = run_cli("fit --input " + bad.string());
    CHECK(r.code == 4);
    CHECK(r.out.find("row 3") != std::string::npos);

    RunResult missing = run_cli("fit --input " + (dir / "absent.csv").string());
    CHECK(missing.code == 4);
    fs::remove_all(dir);
}

TEST_CASE("sweep default boundary list covers all labels") {
    RunResult r = run_cli("sweep --kappa 2 --eps-start 0.5 --eps-stop 0.5 --count 1 "
                          "--methods direct --format csv");
    CHECK(r.code == 0);
    for (const char* needle : {",2,0,direct,", ",2,1,direct,", ",2,2,direct,"})
        CHECK(r.out.find(needle) != std::string::npos);
}

TEST_CASE("tolerance env var is honoured and the flag wins") {
    std::string base = "entropy --kappa 1 --i 0 --eps 0.8 --method direct --format csv";
    RunResult tight = run_cli(base);
    RunResult env = run_cli(base, "CTMENT_ABS_TOL=1e-4");
    REQUIRE(env.code == 0);
    REQUIRE(tight.code == 0);
    // a looser tolerance uses fewer terms
    auto terms_of = [](const std::string& out) {
        // CSV column 7 is 'terms'
        std::istringstream is(out);
        std::string line;
        std::getline(is, line); // header
        std::getline(is, line);
        std::istringstream row(line);
        std::string field;
        for (int k = 0; k < 7; ++k)
            std::getline(row, field, ',');
        return std::atol(field.c_str());
    };
    CHECK(terms_of(env.out) < terms_of(tight.out));

    RunResult flag = run_cli(base + " --tol 1e-13", "CTMENT_ABS_TOL=1e-4");
    REQUIRE(flag.code == 0);
    CHECK(terms_of(flag.out) == terms_of(tight.out));
}

TEST_CASE("explicit spectrum order") {
    RunResult r = run_cli("entropy --kappa 1 --i 0 --eps 0.7 --method spectrum "
                          "--spectrum-order 120 --format csv");
    CHECK(r.code == 0);
    CHECK(r.out.find(",spectrum,") != std::string::npos);
    CHECK(r.out.find(",120,") != std::string::npos);
}

TEST_CASE("spectrum command lists degeneracies") {
    RunResult r = run_cli("spectrum --kappa 1 --i 0 --order 6 --format csv");
    CHECK(r.code == 0);
    CHECK(r.out.find("n,d_n") != std::string::npos);
    CHECK(r.out.find("6,4") != std::string::npos); // d_6 = 4 odd-part partitions

    RunResult p = run_cli("spectrum --kappa 1 --i 0 --order 4 --eps 0.7 --format csv");
    CHECK(p.code == 0);
    CHECK(p.out.find("n,d_n,p_n") != std::string::npos);
}
