#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "novconf/exec.hpp"
#include "novconf/harness.hpp"

namespace {

constexpr int kExitAllPassed = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct RunOptions {
    std::string target;
    std::string path;
    std::string report_format = "text";
    std::string window;
    std::string case_name;
    std::string variant;
    std::optional<long long> M, n, m, k;
    std::optional<int> kmax, r, p, q, l, smax, degree;
    unsigned long long seed = 0;
};

novconf::ScenarioParams to_params(const RunOptions& o)
{
    novconf::ScenarioParams sp;
    sp.M = o.M;
    sp.kmax = o.kmax;
    sp.r = o.r;
    sp.p = o.p;
    sp.q = o.q;
    sp.l = o.l;
    sp.n = o.n;
    sp.m = o.m;
    sp.k = o.k;
    sp.smax = o.smax;
    sp.degree = o.degree;
    sp.seed = o.seed;
    if (!o.case_name.empty())
        sp.variant = o.case_name;
    else if (!o.variant.empty())
        sp.variant = o.variant;
    if (!o.window.empty()) {
        auto colon = o.window.find(':');
        try {
            if (colon == std::string::npos)
                throw std::invalid_argument("window");
            sp.window_lo = std::stoll(o.window.substr(0, colon));
            sp.window_hi = std::stoll(o.window.substr(colon + 1));
        } catch (...) {
            throw std::invalid_argument("--window expects lo:hi");
        }
    }
    return sp;
}

void emit(const std::vector<novconf::ScenarioReport>& reports, const std::string& format)
{
    if (format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : reports)
            j.push_back(novconf::render_json(r));
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& r : reports)
            std::cout << novconf::render_text(r);
    }
}

int run_reports(const std::vector<novconf::ScenarioReport>& reports, const std::string& format)
{
    emit(reports, format);
    for (const auto& r : reports)
        if (!r.passed())
            return kExitCheckFailed;
    return kExitAllPassed;
}

int cmd_run(const RunOptions& o)
{
    using namespace novconf;
    auto start = std::chrono::steady_clock::now();
    std::vector<ScenarioReport> reports;

    if (o.target == "script") {
        if (o.path.empty()) {
            std::cerr << "error: run script requires a path\n";
            return kExitUsage;
        }
        std::ifstream in(o.path);
        if (!in) {
            std::cerr << "error: cannot read " << o.path << "\n";
            return kExitUsage;
        }
        std::ostringstream text;
        text << in.rdbuf();
        dsl::Script script;
        try {
            script = dsl::parse(text.str());
        } catch (const dsl::ParseError& e) {
            std::cerr << o.path << ":" << e.line << ":" << e.column << ": error: expected "
                      << e.expected << ", found " << e.found << "\n";
            return kExitUsage;
        }
        try {
            reports = execute_script(script, o.seed);
        } catch (const ScriptError& e) {
            std::cerr << o.path << ": error: " << e.what() << "\n";
            return kExitUsage;
        }
    } else {
        try {
            reports = run_scenario(o.target, to_params(o));
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitUsage;
        }
    }

    auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    int code = run_reports(reports, o.report_format);
    std::cerr << "# wall " << wall << " ms\n";
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact verification kernel for Novikov conformal algebra computations"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "list built-in scenarios");

    RunOptions opt;
    auto* run = app.add_subcommand("run", "run a built-in scenario or a .cnv script");
    run->add_option("target", opt.target,
                    "scenario name, 'embedding', or 'script' followed by a path")
        ->required();
    run->add_option("path", opt.path, "script path (with target 'script')");
    run->add_option("--kmax", opt.kmax, "largest generator index of the counterexample module");
    run->add_option("--M", opt.M, "uniform locality bound");
    run->add_option("--case", opt.case_name, "embedding case selector (case1|case2|case3|f10|f01|df00)");
    run->add_option("--variant", opt.variant, "case2 variant (f10|f01|df00)");
    run->add_option("--r", opt.r, "derivative order of the extra letter (case1)");
    run->add_option("--p", opt.p, "first derivative order");
    run->add_option("--q", opt.q, "second derivative order");
    run->add_option("--l", opt.l, "derivative power applied to the family (case3)");
    run->add_option("--n", opt.n, "first family index");
    run->add_option("--m", opt.m, "second family index");
    run->add_option("--k", opt.k, "index of the extra letter (case1)");
    run->add_option("--window", opt.window, "index window lo:hi");
    run->add_option("--smax", opt.smax, "derivative cap of emitted generators");
    run->add_option("--degree", opt.degree, "multiplier degree cap");
    run->add_option("--seed", opt.seed, "sampling seed embedded in reports");
    run->add_option("--report", opt.report_format, "report format")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (list->parsed()) {
        for (const auto& name : novconf::list_scenarios())
            std::cout << name << "\n";
        return kExitAllPassed;
    }
    return cmd_run(opt);
}
