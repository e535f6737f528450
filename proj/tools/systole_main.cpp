// Command-line front end: evaluate a surface, find the maximal one, tabulate
// by genus, sweep a parameter grid to CSV, or run the self-check battery.
//
// Exit codes: 0 success, 1 verification failure, 2 argument error,
// 3 domain error, 4 root-finding failure, 5 I/O error.

#include <gamma2n/errors.hpp>
#include <gamma2n/hyptrig.hpp>
#include <gamma2n/maximizer.hpp>
#include <gamma2n/surface.hpp>
#include <gamma2n/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

// Fixed CSV number format so output is byte-stable across runs: plain six
// decimals, switching to scientific only past 1e±9. Zero prints as a plain
// fixed zero rather than 0.000000e+00.
std::string csv_num(double x) {
    char buf[48];
    if (x == 0.0) {
        return "0.000000";
    }
    const double mag = std::abs(x);
    if (mag >= 1e9 || mag < 1e-9) {
        std::snprintf(buf, sizeof(buf), "%.6e", x);
    } else {
        std::snprintf(buf, sizeof(buf), "%.6f", x);
    }
    return buf;
}

std::string join_argmin(const std::set<gamma2n::FamilyId>& families) {
    std::string out;
    for (gamma2n::FamilyId f : gamma2n::kAllFamilies) {
        if (families.count(f)) {
            if (!out.empty()) out += '+';
            out += gamma2n::family_tag(f);
        }
    }
    return out;
}

unsigned scan_workers(std::size_t rows) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 4;
    if (const char* env = std::getenv("SYSTOLE_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && parsed >= 1) {
            hw = static_cast<unsigned>(std::min(parsed, 256L));
        } else {
            hw = 1;
        }
    }
    if (rows < hw) hw = static_cast<unsigned>(rows == 0 ? 1 : rows);
    return hw;
}

int resolve_n(const CLI::Option* n_opt, const CLI::Option* genus_opt, int n_val, int genus_val) {
    const bool has_n = n_opt->count() > 0;
    const bool has_genus = genus_opt->count() > 0;
    if (has_n && has_genus) {
        throw gamma2n::InvalidParams("--n and --genus are aliases; give only one");
    }
    if (!has_n && !has_genus) {
        throw gamma2n::InvalidParams("one of --n or --genus is required");
    }
    return has_n ? n_val : genus_val + 1;
}

json report_to_json(const gamma2n::SystoleReport& rep) {
    json j;
    j["params"] = {{"n", rep.params.n},
                   {"c", rep.params.c},
                   {"t", rep.params.t},
                   {"s", rep.params.s}};
    j["candidates"] = {{"len_CD", rep.candidates.len_CD},
                       {"len_DE", rep.candidates.len_DE},
                       {"len_CE", rep.candidates.len_CE},
                       {"len_CE_prime", rep.candidates.len_CE_prime},
                       {"len_C", rep.candidates.len_C}};
    json products, lifted;
    for (gamma2n::FamilyId f : gamma2n::kAllFamilies) {
        const char* tag = gamma2n::family_tag(f);
        products[tag] = gamma2n::lift_chain(f, rep.params.n).product;
        lifted[tag] = rep.lifted_of(f);
    }
    j["lift_products"] = products;
    j["lifted"] = lifted;
    j["systole"] = rep.systole;
    json arg = json::array();
    for (gamma2n::FamilyId f : gamma2n::kAllFamilies) {
        if (rep.argmin.count(f)) arg.push_back(gamma2n::family_tag(f));
    }
    j["argmin"] = arg;
    return j;
}

int run_eval(int n, double c, double t, const std::string& format) {
    const auto params = gamma2n::make_params(n, c, t);
    const auto rep = gamma2n::systole_report(params);
    if (format == "json") {
        std::cout << report_to_json(rep).dump(2) << "\n";
        return 0;
    }
    std::cout << "n = " << params.n << "  c = " << csv_num(params.c)
              << "  t = " << csv_num(params.t) << "  s = " << csv_num(params.s) << "\n";
    std::cout << "family    length     lift  lifted\n";
    for (gamma2n::FamilyId f : gamma2n::kAllFamilies) {
        char line[96];
        std::snprintf(line, sizeof(line), "%-9s %-10s %-5d %s\n", gamma2n::family_tag(f),
                      csv_num(rep.candidates[f]).c_str(),
                      gamma2n::lift_chain(f, params.n).product,
                      csv_num(rep.lifted_of(f)).c_str());
        std::cout << line;
    }
    std::cout << "systole = " << csv_num(rep.systole) << "  argmin = " << join_argmin(rep.argmin)
              << "\n";
    return 0;
}

const char* method_name(gamma2n::maximizer::Method m) {
    switch (m) {
        case gamma2n::maximizer::Method::ClosedForm:  return "closed";
        case gamma2n::maximizer::Method::NumericRoot: return "numeric";
        case gamma2n::maximizer::Method::BruteForce:  return "brute";
    }
    return "?";
}

int run_maximize(int n, const std::string& method, const std::string& format,
                 const gamma2n::maximizer::SearchConfig& cfg) {
    namespace mx = gamma2n::maximizer;
    mx::Optimum opt;
    if (method == "closed") {
        opt = mx::optimal_surface(n);
    } else if (method == "numeric") {
        const double K = mx::solve_K_numeric(mx::shape_param(n));
        const double c = gamma2n::hyptrig::acosh_guarded(K);
        const double s = 2.0 *
                         gamma2n::hyptrig::trirectangle_partner(
                             gamma2n::hyptrig::HypLength(c / 2.0), gamma2n::hyptrig::Angle(kPi / n))
                             .value();
        opt.n = n;
        opt.K = K;
        opt.c_star = c;
        opt.t_star = std::min(
            2.0 * gamma2n::hyptrig::acosh_guarded(std::cosh(c / 2.0) / std::cosh(s / 2.0)), c);
        opt.systole = 2.0 * c;
        opt.method = mx::Method::NumericRoot;
    } else {
        opt = mx::brute_force_max(n, cfg);
    }

    if (format == "json") {
        json j{{"n", opt.n},           {"method", method_name(opt.method)},
               {"K", opt.K},           {"c_star", opt.c_star},
               {"t_star", opt.t_star}, {"systole", opt.systole}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "n = " << opt.n << "\n"
              << "method = " << method_name(opt.method) << "\n"
              << "K = " << csv_num(opt.K) << "\n"
              << "c = " << csv_num(opt.c_star) << "\n"
              << "t = " << csv_num(opt.t_star) << "\n"
              << "systole = " << csv_num(opt.systole) << "\n";
    return 0;
}

int run_table(int g_min, int g_max, const std::string& format) {
    if (g_min < 2 || g_max < g_min || g_max > 1000) {
        throw gamma2n::InvalidParams("genus range must satisfy 2 <= g_min <= g_max <= 1000");
    }
    const auto rows = gamma2n::maximizer::genus_table(g_min, g_max);
    if (format == "markdown") {
        std::cout << "| genus | n | K | systole | c_star | t_star |\n"
                  << "|---|---|---|---|---|---|\n";
        for (const auto& r : rows) {
            std::cout << "| " << r.genus << " | " << r.n << " | " << csv_num(r.K) << " | "
                      << csv_num(r.systole) << " | " << csv_num(r.c_star) << " | "
                      << csv_num(r.t_star) << " |\n";
        }
        return 0;
    }
    std::cout << "genus,n,K,systole,c_star,t_star\n";
    for (const auto& r : rows) {
        std::cout << r.genus << ',' << r.n << ',' << csv_num(r.K) << ',' << csv_num(r.systole)
                  << ',' << csv_num(r.c_star) << ',' << csv_num(r.t_star) << "\n";
    }
    return 0;
}

struct ScanSpec {
    int n = 0;
    double c_min = 0.0, c_max = 0.0;
    int c_steps = 50;
    double t_min = 0.0, t_max = 1.0;
    int t_steps = 50;
    std::string t_mode = "fraction";
};

int run_scan(const ScanSpec& spec, const std::string& out_path) {
    if (spec.n < 3) {
        throw gamma2n::InvalidParams("cone order n must be at least 3");
    }
    if (!(spec.c_min > 0.0) || !(spec.c_min < spec.c_max)) {
        throw gamma2n::InvalidParams("c range must satisfy 0 < c_min < c_max");
    }
    if (spec.c_steps < 2 || spec.t_steps < 2) {
        throw gamma2n::InvalidParams("both axes need at least 2 steps");
    }
    if (!(spec.t_min < spec.t_max)) {
        throw gamma2n::InvalidParams("t range must satisfy t_min < t_max");
    }

    const auto rows = static_cast<std::size_t>(spec.c_steps);
    const auto cols = static_cast<std::size_t>(spec.t_steps);
    const double dc = (spec.c_max - spec.c_min) / static_cast<double>(rows - 1);
    const double dt = (spec.t_max - spec.t_min) / static_cast<double>(cols - 1);

    // Rows are computed in parallel but collected per c index, so the file
    // content is identical for any worker count.
    std::vector<std::string> chunks(rows);
    std::exception_ptr failure;
    std::mutex failure_mu;

    auto run_rows = [&](unsigned w, unsigned stride) {
        try {
            for (std::size_t i = w; i < rows; i += stride) {
                const double c = spec.c_min + dc * static_cast<double>(i);
                std::string& chunk = chunks[i];
                for (std::size_t j = 0; j < cols; ++j) {
                    const double raw = spec.t_min + dt * static_cast<double>(j);
                    const double t = (spec.t_mode == "fraction") ? raw * c : raw;
                    if (t < 0.0 || t > c) {
                        continue;  // outside the chart; absolute mode can overshoot
                    }
                    const auto rep = gamma2n::systole_report(gamma2n::make_params(spec.n, c, t));
                    chunk += std::to_string(spec.n);
                    chunk += ',';
                    chunk += csv_num(c);
                    chunk += ',';
                    chunk += csv_num(t);
                    chunk += ',';
                    chunk += csv_num(rep.candidates.len_CD);
                    chunk += ',';
                    chunk += csv_num(rep.candidates.len_DE);
                    chunk += ',';
                    chunk += csv_num(rep.candidates.len_CE);
                    chunk += ',';
                    chunk += csv_num(rep.candidates.len_CE_prime);
                    chunk += ',';
                    chunk += csv_num(rep.candidates.len_C);
                    chunk += ',';
                    chunk += csv_num(rep.systole);
                    chunk += ',';
                    chunk += join_argmin(rep.argmin);
                    chunk += '\n';
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mu);
            if (!failure) failure = std::current_exception();
        }
    };

    const unsigned workers = scan_workers(rows);
    if (workers <= 1) {
        run_rows(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(run_rows, w, workers);
        }
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "error: cannot open '" << out_path << "' for writing\n";
            return 5;
        }
        out = &file;
    }
    *out << "n,c,t,len_CD,len_DE,len_CE,len_CE_prime,len_C,systole,argmin\n";
    for (const auto& chunk : chunks) {
        *out << chunk;
    }
    out->flush();
    if (!*out) {
        std::cerr << "error: write failed" << (out_path.empty() ? "" : " for '" + out_path + "'")
                  << "\n";
        return 5;
    }
    return 0;
}

int run_verify(int n_max) {
    const auto report = gamma2n::verify::run_battery(n_max);
    int failed = 0;
    for (const auto& check : report.checks) {
        char line[288];
        std::snprintf(line, sizeof(line), "%s %-24s measured %.3e vs tolerance %.3e  [%s]\n",
                      check.passed ? "PASS" : "FAIL", check.name.c_str(), check.measured,
                      check.tolerance, check.detail.c_str());
        std::cout << line;
        if (!check.passed) ++failed;
    }
    for (const auto& info : report.info) {
        std::cout << "INFO " << info.text << "\n";
    }
    std::cout << (failed == 0 ? "all checks passed" : "some checks FAILED") << " ("
              << (report.checks.size() - failed) << "/" << report.checks.size() << ")\n";
    return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"systole geometry of the hyperelliptic surfaces with a 2n-symmetric "
                 "pair-of-pants decomposition"};
    app.require_subcommand(1);

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate all candidate lengths at (n, c, t)");
    int eval_n = 0, eval_genus = 0;
    double eval_c = 0.0, eval_t = 0.0;
    std::string eval_format = "text";
    auto* eval_n_opt = eval_cmd->add_option("--n", eval_n, "cone order (n >= 3)");
    auto* eval_g_opt = eval_cmd->add_option("--genus", eval_genus, "genus (= n - 1)");
    eval_cmd->add_option("--c", eval_c, "cuff length")->required();
    eval_cmd->add_option("--t", eval_t, "waist offset in [0, c]")->required();
    eval_cmd->add_option("--format", eval_format, "output format")
        ->check(CLI::IsMember({"json", "text"}));

    // maximize
    auto* max_cmd = app.add_subcommand("maximize", "find the systole-maximal surface");
    int max_n = 0, max_genus = 0;
    std::string max_method = "closed", max_format = "text";
    gamma2n::maximizer::SearchConfig search_cfg;
    auto* max_n_opt = max_cmd->add_option("--n", max_n, "cone order (n >= 3)");
    auto* max_g_opt = max_cmd->add_option("--genus", max_genus, "genus (= n - 1)");
    max_cmd->add_option("--method", max_method, "closed | numeric | brute")
        ->check(CLI::IsMember({"closed", "numeric", "brute"}));
    max_cmd->add_option("--format", max_format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    max_cmd->add_option("--c-min", search_cfg.c_min, "brute-force: lower cuff bound");
    max_cmd->add_option("--c-max", search_cfg.c_max, "brute-force: upper cuff bound");
    int grid = 0;
    max_cmd->add_option("--grid", grid, "brute-force: grid points per axis");
    max_cmd->add_option("--rounds", search_cfg.zoom_rounds, "brute-force: zoom rounds");

    // table
    auto* table_cmd = app.add_subcommand("table", "tabulate optima by genus");
    int g_min = 0, g_max = 0;
    std::string table_format = "csv";
    table_cmd->add_option("g_min", g_min, "first genus (>= 2)")->required();
    table_cmd->add_option("g_max", g_max, "last genus (<= 1000)")->required();
    table_cmd->add_option("--format", table_format, "output format")
        ->check(CLI::IsMember({"csv", "markdown"}));

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "sweep a parameter grid to CSV");
    ScanSpec spec;
    int scan_n = 0, scan_genus = 0;
    std::string scan_out;
    auto* scan_n_opt = scan_cmd->add_option("--n", scan_n, "cone order (n >= 3)");
    auto* scan_g_opt = scan_cmd->add_option("--genus", scan_genus, "genus (= n - 1)");
    scan_cmd->add_option("--c-min", spec.c_min, "lowest cuff length (> 0)")->required();
    scan_cmd->add_option("--c-max", spec.c_max, "highest cuff length")->required();
    scan_cmd->add_option("--c-steps", spec.c_steps, "grid points along c (default 50)");
    scan_cmd->add_option("--t-min", spec.t_min, "lowest t value (default 0)");
    scan_cmd->add_option("--t-max", spec.t_max, "highest t value (default 1)");
    scan_cmd->add_option("--t-steps", spec.t_steps, "grid points along t (default 50)");
    scan_cmd->add_option("--t-mode", spec.t_mode,
                         "absolute: t as given; fraction: t = value * c (default)")
        ->check(CLI::IsMember({"absolute", "fraction"}));
    scan_cmd->add_option("--out", scan_out, "output CSV path (default stdout)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the self-check battery");
    int n_max = 20;
    verify_cmd->add_option("--n-max", n_max, "highest cone order to sweep (default 20)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (eval_cmd->parsed()) {
            const int n = resolve_n(eval_n_opt, eval_g_opt, eval_n, eval_genus);
            return run_eval(n, eval_c, eval_t, eval_format);
        }
        if (max_cmd->parsed()) {
            const int n = resolve_n(max_n_opt, max_g_opt, max_n, max_genus);
            if (grid > 0) {
                search_cfg.c_steps = grid;
                search_cfg.t_steps = grid;
            }
            return run_maximize(n, max_method, max_format, search_cfg);
        }
        if (table_cmd->parsed()) {
            return run_table(g_min, g_max, table_format);
        }
        if (scan_cmd->parsed()) {
            spec.n = resolve_n(scan_n_opt, scan_g_opt, scan_n, scan_genus);
            return run_scan(spec, scan_out);
        }
        if (verify_cmd->parsed()) {
            return run_verify(n_max);
        }
    } catch (const gamma2n::InvalidParams& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gamma2n::NoValidRoot& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::domain_error& e) {
        // covers DomainError and OutOfDomain
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
