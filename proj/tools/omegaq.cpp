// Command-line front end: compute series expansions, run verification checks,
// export fixtures as text or JSON.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "omq/checks.hpp"
#include "omq/exact_cache.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

int write_out(const std::string& payload, const std::string& path) {
    if (path.empty()) {
        std::cout << payload;
        return kExitPass;
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return kExitUsage;
    }
    out << payload;
    return kExitPass;
}

bool order_allowed(int order, int cap, bool force, std::string& why) {
    if (order < 1) {
        why = "order must be at least 1";
        return false;
    }
    if (order > cap && !force) {
        why = "order " + std::to_string(order) + " exceeds the safety cap " + std::to_string(cap) +
              " (tree counts grow superexponentially); pass --force-large to override";
        return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computation of the rooted-tree series, its q-deformation, and the "
                 "planar-binary-tree image"};
    app.require_subcommand(1);

    std::string series_kind, check_name, format = "text", output_path, mode;
    int order = 0;
    int jobs = 0;
    int safety_cap = 12;
    bool force_large = false;

    auto* compute = app.add_subcommand("compute", "compute a series and print it");
    compute->add_option("kind", series_kind, "one of: omega, omega-q, omega-0, omega-inf, qlog, carlitz, dend-omega-q");
    compute->add_option("--series", series_kind, "same as the positional argument");
    compute->add_option("--order", order, "truncation order")->required();
    compute->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    compute->add_option("--mode", mode, "computation route where two exist "
                        "(omega-q: recursion|forks; omega-inf: limit|closed-form; "
                        "dend-omega-q: recursion|explicit)");
    compute->add_option("--output", output_path, "write to a file instead of stdout");
    compute->add_option("--jobs", jobs, "worker threads for intra-degree parallelism (0 = auto)");
    compute->add_option("--safety-cap", safety_cap, "largest order accepted without --force-large");
    compute->add_flag("--force-large", force_large, "allow orders above the safety cap");

    auto* verify = app.add_subcommand("verify", "run a named verification check");
    verify->add_option("name", check_name, "check name; see --list");
    verify->add_option("--check", check_name, "same as the positional argument");
    verify->add_option("--order", order, "override the check's default order");
    verify->add_option("--jobs", jobs, "worker threads for intra-degree parallelism (0 = auto)");
    verify->add_option("--safety-cap", safety_cap, "largest order accepted without --force-large");
    verify->add_flag("--force-large", force_large, "allow orders above the safety cap");
    bool list_checks = false;
    verify->add_flag("--list", list_checks, "list the registered checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    omq::set_jobs(jobs);
    omq::load_exact_tables();

    try {
        if (compute->parsed()) {
            if (series_kind.empty()) {
                std::cerr << "error: no series given (positional or --series)\n";
                return kExitUsage;
            }
            const auto& kinds = omq::bundle_kinds();
            if (std::find(kinds.begin(), kinds.end(), series_kind) == kinds.end()) {
                std::cerr << "error: unknown series '" << series_kind << "'; expected one of:";
                for (const auto& k : kinds) std::cerr << " " << k;
                std::cerr << "\n";
                return kExitUsage;
            }
            std::string why;
            if (!order_allowed(order, safety_cap, force_large, why)) {
                std::cerr << "error: " << why << "\n";
                return kExitUsage;
            }
            const omq::SeriesBundle bundle = omq::compute_bundle(series_kind, order, mode);
            const std::string payload =
                format == "json" ? omq::to_json(bundle).dump(2) + "\n" : omq::render_text(bundle);
            const int rc = write_out(payload, output_path);
            omq::flush_exact_tables();
            return rc;
        }

        // verify
        const auto& registry = omq::check_registry();
        if (list_checks) {
            for (const auto& [name, entry] : registry)
                std::cout << name << " (default order " << entry.default_order << ")\n";
            return kExitPass;
        }
        auto it = registry.find(check_name);
        if (it == registry.end()) {
            std::cerr << "error: unknown check '" << check_name << "'; registered checks:";
            for (const auto& [name, entry] : registry) std::cerr << " " << name;
            std::cerr << "\n";
            return kExitUsage;
        }
        const int effective_order = order > 0 ? order : it->second.default_order;
        std::string why;
        if (!order_allowed(effective_order, safety_cap, force_large, why)) {
            std::cerr << "error: " << why << "\n";
            return kExitUsage;
        }
        const omq::CheckReport report = it->second.run(effective_order);
        std::cout << (report.passed ? "PASS" : "FAIL") << " " << report.name << " (order "
                  << report.order << ")\n";
        for (const auto& line : report.lines) std::cout << "  " << line << "\n";
        omq::flush_exact_tables();
        return report.passed ? kExitPass : kExitFail;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
}
