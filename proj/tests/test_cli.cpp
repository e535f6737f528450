// Integration tests that drive the built command-line binary end to end.
// SYSTOLE_BIN is injected by the build as the path of that binary.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

namespace {

using nlohmann::json;

struct CmdResult {
    int code;
    std::string out;
};

CmdResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    std::string cmd;
    if (!env_prefix.empty()) cmd += env_prefix + " ";
    cmd += "'";
    cmd += SYSTOLE_BIN;
    cmd += "' " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return {-1, ""};
    std::string out;
    char buf[4096];
    while (fgets(buf, sizeof(buf), pipe) != nullptr) out += buf;
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

TEST_CASE("eval json reports every systole quantity") {
    const auto res = run_cli("eval --n 3 --c 1.52857 --t 0.98242 --format json");
    REQUIRE(res.code == 0);
    const json j = json::parse(res.out);

    CHECK(std::abs(j["systole"].get<double>() - 3.0569880838478527) < 1e-12);
    CHECK(j["argmin"] == json::array({"C"}));
    CHECK(j["params"]["n"] == 3);
    CHECK(std::abs(j["params"]["s"].get<double>() - 1.1283846951306336) < 1e-12);
    CHECK(j["lift_products"]["C"] == 2);
    CHECK(j["lift_products"]["CD"] == 4);
    CHECK(j["lift_products"]["CE"] == 4);
    CHECK(j["lift_products"]["CE_PRIME"] == 4);
    CHECK(j["lift_products"]["DE"] == 12);
    CHECK(std::abs(j["lifted"]["CE"].get<double>() - 2.0 * 1.52857) < 1e-14);
    for (const char* key : {"len_CD", "len_DE", "len_CE", "len_CE_prime", "len_C"}) {
        CHECK(j["candidates"].contains(key));
    }
}

TEST_CASE("eval json round trip reproduces the systole") {
    const auto first = run_cli("eval --n 3 --c 1.3 --t 0.6 --format json");
    REQUIRE(first.code == 0);
    const json j = json::parse(first.out);

    char args[160];
    std::snprintf(args, sizeof(args), "eval --n %d --c %.17g --t %.17g --format json",
                  j["params"]["n"].get<int>(), j["params"]["c"].get<double>(),
                  j["params"]["t"].get<double>());
    const auto second = run_cli(args);
    REQUIRE(second.code == 0);
    const json j2 = json::parse(second.out);
    CHECK(std::abs(j2["systole"].get<double>() - j["systole"].get<double>()) < 1e-12);
}

TEST_CASE("eval at the exact maximum reports the three-way tie") {
    const auto res = run_cli(
        "eval --n 3 --c 1.5285709194809982 --t 0.9822020382319183 --format json");
    REQUIRE(res.code == 0);
    const json j = json::parse(res.out);
    CHECK(j["argmin"] == json::array({"C", "CD", "CE"}));
    CHECK(std::abs(j["systole"].get<double>() - 3.0571418389619964) < 1e-12);
}

TEST_CASE("eval text output") {
    const auto res = run_cli("eval --n 3 --c 1.52857 --t 0.98242");
    REQUIRE(res.code == 0);
    CHECK(res.out.find("systole = 3.056988") != std::string::npos);
    CHECK(res.out.find("argmin = C") != std::string::npos);
    CHECK(res.out.find("CE_PRIME") != std::string::npos);
}

TEST_CASE("genus is an alias for the order") {
    const auto by_n = run_cli("eval --n 3 --c 1.2 --t 0.5");
    const auto by_genus = run_cli("eval --genus 2 --c 1.2 --t 0.5");
    REQUIRE(by_n.code == 0);
    REQUIRE(by_genus.code == 0);
    CHECK(by_n.out == by_genus.out);
}

TEST_CASE("argument errors exit with code 2") {
    CHECK(run_cli("eval --n 2 --c 1 --t 0").code == 2);
    CHECK(run_cli("eval --n 3 --c 1 --t 2").code == 2);
    CHECK(run_cli("eval --n 3 --genus 2 --c 1 --t 0.5").code == 2);
    CHECK(run_cli("eval --c 1 --t 0.5").code == 2);
    CHECK(run_cli("eval --n 3 --c 1 --t 0.5 --format yaml").code == 2);
    CHECK(run_cli("eval --n 3 --c 1 --t 0.5 --bogus").code == 2);
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
}

TEST_CASE("overflowing inputs exit with the domain-error code") {
    CHECK(run_cli("eval --n 3 --c 1400 --t 700").code == 3);
}

TEST_CASE("maximize with the closed form") {
    const auto res = run_cli("maximize --n 3 --method closed");
    REQUIRE(res.code == 0);
    CHECK(res.out.find("method = closed") != std::string::npos);
    CHECK(res.out.find("K = 2.414214") != std::string::npos);
    CHECK(res.out.find("systole = 3.057142") != std::string::npos);
}

TEST_CASE("maximize with the bisection oracle") {
    const auto res = run_cli("maximize --n 4 --method numeric --format json");
    REQUIRE(res.code == 0);
    const json j = json::parse(res.out);
    CHECK(j["method"] == "numeric");
    CHECK(std::abs(j["K"].get<double>() - 3.178677812942944) < 1e-10);
}

TEST_CASE("maximize with the grid oracle") {
    const auto res = run_cli("maximize --n 3 --method brute --format json");
    REQUIRE(res.code == 0);
    const json j = json::parse(res.out);
    CHECK(j["method"] == "brute");
    CHECK(std::abs(j["systole"].get<double>() - 3.0571418389619964) < 1e-4);
    CHECK(std::abs(j["c_star"].get<double>() - 1.5285709194809982) < 1e-3);
    CHECK(std::abs(j["t_star"].get<double>() - 0.9822020382319183) < 1e-3);
}

TEST_CASE("table emits fixed-format CSV rows") {
    const auto res = run_cli("table 2 6");
    REQUIRE(res.code == 0);
    const auto lines = lines_of(res.out);
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "genus,n,K,systole,c_star,t_star");
    CHECK(lines[1] == "2,3,2.414214,3.057142,1.528571,0.982202");

    const double expected_K[5] = {2.4142, 3.1787, 3.5989, 3.8473, 4.0044};
    for (int i = 0; i < 5; ++i) {
        const auto fields = fields_of(lines[i + 1]);
        REQUIRE(fields.size() == 6);
        CHECK(fields[0] == std::to_string(i + 2));
        CHECK(fields[1] == std::to_string(i + 3));
        CHECK(std::abs(std::stod(fields[2]) - expected_K[i]) < 5e-5);
    }
}

TEST_CASE("table handles single rows and rejects bad ranges") {
    const auto res = run_cli("table 2 2");
    REQUIRE(res.code == 0);
    const auto lines = lines_of(res.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[1].rfind("2,3,2.414214,", 0) == 0);

    CHECK(run_cli("table 6 2").code == 2);
    CHECK(run_cli("table 1 3").code == 2);
    CHECK(run_cli("table 2 1001").code == 2);
}

TEST_CASE("table markdown format") {
    const auto res = run_cli("table 2 3 --format markdown");
    REQUIRE(res.code == 0);
    CHECK(res.out.find("| genus | n | K | systole | c_star | t_star |") != std::string::npos);
    CHECK(res.out.find("| 2.414214 |") != std::string::npos);
}

TEST_CASE("scan emits a full deterministic grid") {
    const std::string cmd = "scan --n 3 --c-min 1 --c-max 2 --c-steps 10 --t-steps 10";
    const auto res = run_cli(cmd);
    REQUIRE(res.code == 0);
    const auto lines = lines_of(res.out);
    REQUIRE(lines.size() == 101);
    CHECK(lines[0] == "n,c,t,len_CD,len_DE,len_CE,len_CE_prime,len_C,systole,argmin");

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = fields_of(lines[i]);
        REQUIRE(fields.size() == 10);
        CHECK(fields[0] == "3");
        const double c = std::stod(fields[1]);
        const double t = std::stod(fields[2]);
        CHECK(t <= c + 1e-12);
        CHECK(!fields[9].empty());
    }
    // rows are grouped by c, lowest first
    for (int i = 1; i <= 10; ++i) CHECK(fields_of(lines[i])[1] == "1.000000");
    CHECK(fields_of(lines[11])[1] != "1.000000");

    const auto again = run_cli(cmd);
    CHECK(again.code == 0);
    CHECK(again.out == res.out);

    const auto one_thread = run_cli(cmd, "SYSTOLE_THREADS=1");
    const auto four_threads = run_cli(cmd, "SYSTOLE_THREADS=4");
    CHECK(one_thread.code == 0);
    CHECK(four_threads.code == 0);
    CHECK(one_thread.out == res.out);
    CHECK(four_threads.out == res.out);
}

TEST_CASE("scan in absolute mode skips rows outside the chart") {
    const auto res = run_cli("scan --n 3 --c-min 0.5 --c-max 1.0 --c-steps 3 "
                             "--t-min 0 --t-max 2 --t-steps 5 --t-mode absolute");
    REQUIRE(res.code == 0);
    const auto lines = lines_of(res.out);
    CHECK(lines.size() == 8);  // header + 2 + 2 + 3 surviving rows
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = fields_of(lines[i]);
        CHECK(std::stod(fields[2]) <= std::stod(fields[1]) + 1e-12);
    }
}

TEST_CASE("scan reproduces the candidate crossing structure at fixed c") {
    const auto res = run_cli("scan --n 3 --c-min 1.528 --c-max 1.53 --c-steps 2 "
                             "--t-min 0 --t-max 1 --t-steps 12");
    REQUIRE(res.code == 0);
    const auto lines = lines_of(res.out);
    REQUIRE(lines.size() == 25);
    for (int group = 0; group < 2; ++group) {
        double prev_cd = -1.0, prev_c = 1e9;
        std::string ce_value;
        for (int j = 0; j < 12; ++j) {
            const auto fields = fields_of(lines[1 + group * 12 + j]);
            const double len_cd = std::stod(fields[3]);
            const double len_c = std::stod(fields[7]);
            CHECK(len_cd > prev_cd);
            CHECK(len_c < prev_c);
            prev_cd = len_cd;
            prev_c = len_c;
            if (j == 0) {
                ce_value = fields[5];
            } else {
                CHECK(fields[5] == ce_value);
            }
        }
    }
}

TEST_CASE("scan writes the same bytes to a file") {
    char path[64];
    std::snprintf(path, sizeof(path), "/tmp/systole_scan_%d.csv", static_cast<int>(getpid()));
    const std::string base = "scan --n 4 --c-min 0.8 --c-max 1.6 --c-steps 5 --t-steps 5";
    const auto to_stdout = run_cli(base);
    REQUIRE(to_stdout.code == 0);
    const auto to_file = run_cli(base + " --out " + path);
    REQUIRE(to_file.code == 0);
    CHECK(to_file.out.empty());

    std::string content;
    {
        FILE* f = std::fopen(path, "r");
        REQUIRE(f != nullptr);
        char buf[4096];
        std::size_t got;
        while ((got = std::fread(buf, 1, sizeof(buf), f)) > 0) content.append(buf, got);
        std::fclose(f);
    }
    std::remove(path);
    CHECK(content == to_stdout.out);
}

TEST_CASE("scan reports unwritable outputs with the I/O exit code") {
    const auto res = run_cli("scan --n 3 --c-min 1 --c-max 2 --c-steps 3 --t-steps 3 "
                             "--out /nonexistent_dir_zz/x.csv");
    CHECK(res.code == 5);
}

TEST_CASE("scan validates its sweep spec") {
    CHECK(run_cli("scan --n 3 --c-min 0 --c-max 2 --c-steps 5 --t-steps 5").code == 2);
    CHECK(run_cli("scan --n 3 --c-min 2 --c-max 1 --c-steps 5 --t-steps 5").code == 2);
    CHECK(run_cli("scan --n 3 --c-min 1 --c-max 2 --c-steps 1 --t-steps 5").code == 2);
    CHECK(run_cli("scan --n 3 --c-min 1 --c-max 2 --c-steps 5 --t-steps 5 "
                  "--t-min 1 --t-max 0.5").code == 2);
    CHECK(run_cli("scan --n 3 --c-min 1 --c-max 2 --c-steps 5 --t-steps 5 "
                  "--t-mode sideways").code == 2);
    CHECK(run_cli("scan --n 3 --c-max 2").code == 2);
    CHECK(run_cli("scan --n 2 --c-min 1 --c-max 2").code == 2);
}

TEST_CASE("verify battery passes and prints one line per check") {
    const auto res = run_cli("verify --n-max 20");
    REQUIRE(res.code == 0);
    CHECK(res.out.find("PASS trirectangle-identity") != std::string::npos);
    CHECK(res.out.find("PASS annulus-closure") != std::string::npos);
    CHECK(res.out.find("PASS table-k-values") != std::string::npos);
    CHECK(res.out.find("PASS bolza-root") != std::string::npos);
    CHECK(res.out.find("INFO") != std::string::npos);
    CHECK(res.out.find("all checks passed") != std::string::npos);
    CHECK(res.out.find("FAIL") == std::string::npos);

    CHECK(run_cli("verify --n-max 2").code == 2);
}

TEST_CASE("help is available") {
    const auto res = run_cli("--help");
    CHECK(res.code == 0);
    CHECK(res.out.find("eval") != std::string::npos);
}
