#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "pindex/scenario.hpp"

namespace fs = std::filesystem;
using namespace pindex;

namespace {

struct CliOptions {
    std::string config;
    std::string out_dir;
    std::string format = "json";
    unsigned long long seed = 0;
    bool seed_set = false;
    int workers = 4;
};

void add_common(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--config", opt.config, "scenario file")->required();
    cmd->add_option("--out", opt.out_dir, "output directory for reports");
    cmd->add_option("--format", opt.format, "json|csv (csv adds tables)")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--seed", opt.seed, "override the scenario seed")
        ->each([&opt](const std::string&) { opt.seed_set = true; });
    cmd->add_option("--workers", opt.workers, "suite worker cap");
}

int run_kind(const CliOptions& opt, const std::string& kind) {
    Scenario sc;
    try {
        sc = Scenario::parse_file(opt.config);
    } catch (const ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    if (sc.kind() != kind) {
        std::cerr << "config error: scenario kind '" << sc.kind()
                  << "' does not match the subcommand ('" << kind << "')\n";
        return 2;
    }
    RunOverrides ov;
    if (opt.seed_set) ov.seed = opt.seed;
    ov.out_dir = opt.out_dir;
    ov.format = opt.format;
    ov.workers = opt.workers;

    const RunResult res = run_scenario(sc, ov);

    if (res.exit_code != 2 && res.exit_code != 3) {
        const auto violations = validate_report(res.report, builtin_report_schema());
        for (const std::string& v : violations)
            std::cerr << "schema violation: " << v << "\n";
        if (!violations.empty()) return 3;
    }

    if (!opt.out_dir.empty()) {
        fs::create_directories(opt.out_dir);
        const fs::path report_path = fs::path(opt.out_dir) / (kind + "_report.json");
        std::ofstream(report_path) << res.report.dump(2) << "\n";
        for (const auto& [name, contents] : res.files)
            std::ofstream(fs::path(opt.out_dir) / name) << contents;
        std::cout << "report: " << report_path.string() << "\n";
    }

    if (res.report.contains("rows"))
        for (const auto& row : res.report["rows"])
            std::cout << (row["pass"].get<bool>() ? "[pass] " : "[FAIL] ") << "criterion "
                      << row["id"].get<int>() << ": " << row["name"].get<std::string>()
                      << "\n";
    if (res.report.contains("integers"))
        std::cout << "integers: " << res.report["integers"].dump() << "\n";
    if (!res.message.empty())
        std::cerr << (res.exit_code == 0 ? "note: " : "error: ") << res.message << "\n";
    return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"index theory laboratory for linear Hamiltonian systems with "
                 "P-boundary conditions"};
    app.require_subcommand(1);

    CliOptions opt;
    std::string pending_kind;

    CLI::App* index = app.add_subcommand("index", "Ekeland / Maslov index computations");
    index->require_subcommand(1);
    CLI::App* ekeland = index->add_subcommand("ekeland", "Ekeland P-index of a path");
    add_common(ekeland, opt);
    ekeland->callback([&] { pending_kind = "ekeland"; });
    CLI::App* maslov = index->add_subcommand("maslov", "Maslov (P,omega)-index of a path");
    add_common(maslov, opt);
    maslov->callback([&] { pending_kind = "maslov"; });

    CLI::App* splitting = app.add_subcommand("splitting", "P-splitting numbers by limits");
    add_common(splitting, opt);
    splitting->callback([&] { pending_kind = "splitting"; });

    CLI::App* verify = app.add_subcommand("verify", "identity verification sweeps");
    verify->require_subcommand(1);
    CLI::App* thm36 = verify->add_subcommand("thm36", "i_1^P = nu_1(P^{-1}) + i_P^E sweep");
    add_common(thm36, opt);
    thm36->callback([&] { pending_kind = "thm36"; });

    CLI::App* find = app.add_subcommand("find", "P-symmetric closed characteristic search");
    add_common(find, opt);
    find->callback([&] { pending_kind = "find"; });

    CLI::App* audit = app.add_subcommand("audit", "index identity chain audits");
    audit->require_subcommand(1);
    CLI::App* thm11 = audit->add_subcommand("thm11", "ellipticity chain audit");
    add_common(thm11, opt);
    thm11->callback([&] { pending_kind = "audit11"; });
    CLI::App* thm12 = audit->add_subcommand("thm12", "hyperbolicity contradiction audit");
    add_common(thm12, opt);
    thm12->callback([&] { pending_kind = "audit12"; });

    CLI::App* suite = app.add_subcommand("suite", "run the full acceptance matrix");
    add_common(suite, opt);
    suite->callback([&] { pending_kind = "suite"; });

    CLI11_PARSE(app, argc, argv);
    return run_kind(opt, pending_kind);
}
