#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args) {
    const char* exe = std::getenv("DEGDIST_CLI");
    REQUIRE(exe != nullptr);
    std::string cmd = std::string(exe) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

int count_lines(const std::string& s, const std::string& prefix) {
    std::istringstream ss(s);
    std::string line;
    int n = 0;
    while (std::getline(ss, line))
        if (line.rfind(prefix, 0) == 0) ++n;
    return n;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(run("").status == 2);
    CHECK(run("distribution --family torus").status == 2);
    CHECK(run("distribution --precision 10").status == 2);
    CHECK(run("--precision 10 distribution").status == 2);
    CHECK(run("distribution --family outerplanar --level 3conn").status == 2);
    CHECK(run("density --level connected --mu 3.5").status == 2);
    CHECK(run("validate --n 9").status == 2);
}

TEST_CASE("distribution as csv") {
    Run r = run("--precision 40 distribution --family outerplanar --level 2conn --kmax 5");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("family,level,mu,k,d_k,cum\n", 0) == 0);
    CHECK(count_lines(r.out, "outerplanar,2conn,,") == 5);
    CHECK(r.out.find("outerplanar,2conn,,2,0.343145750") != std::string::npos);
    CHECK(count_lines(r.out, "# tail:") == 1);
    CHECK(count_lines(r.out, "# checksum: 1.0000000") + count_lines(r.out, "# checksum: 0.9999999") == 1);
}

TEST_CASE("distribution as json lines") {
    Run r = run("--precision 40 --format json distribution --family sp --level connected --kmax 3");
    CHECK(r.status == 0);
    CHECK(count_lines(r.out, "{\"family\":\"series-parallel\"") == 3);
    CHECK(count_lines(r.out, "{\"tail\":") == 1);
}

TEST_CASE("constants for one family") {
    Run r = run("--no-cache --precision 40 constants --family outerplanar");
    CHECK(r.status == 0);
    CHECK(count_lines(r.out, "outerplanar,q_2conn,0.41421356") == 1);
    CHECK(count_lines(r.out, "series-parallel") == 0);
}

TEST_CASE("constants cache is reused") {
    auto path = std::filesystem::temp_directory_path() / "degdist_cli_test_cache.txt";
    std::filesystem::remove(path);
    Run a = run("--cache " + path.string() + " --precision 40 constants --family outerplanar");
    CHECK(a.status == 0);
    CHECK(std::filesystem::exists(path));
    Run b = run("--cache " + path.string() + " --precision 40 constants --family outerplanar");
    CHECK(b.out == a.out);
    std::filesystem::remove(path);
}

TEST_CASE("validate one section") {
    Run r = run("--precision 40 validate --only enum --n 5");
    CHECK(r.status == 0);
    CHECK(count_lines(r.out, "{\"criterion\":4") > 5);
    CHECK(r.out.find("\"status\":\"fail\"") == std::string::npos);
}

TEST_CASE("a perturbed expected value fails validation") {
    Run r = run("--precision 40 validate --only enum --n 4 --perturb enum.numeric.RS=1e-3");
    CHECK(r.status == 1);
    CHECK(r.out.find("\"name\":\"enum.numeric.RS\",\"status\":\"fail\"") != std::string::npos);
}
