// wolffkit command-line front end.
//
// Exit codes: 0 all checks passed, 1 some check failed, 2 bad command line or
// config, 3 runtime error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "wolffkit/dynamics.hpp"
#include "wolffkit/harness/config.hpp"
#include "wolffkit/harness/plot.hpp"
#include "wolffkit/harness/report.hpp"
#include "wolffkit/harness/suites.hpp"
#include "wolffkit/horospheres.hpp"
#include "wolffkit/selfmap.hpp"

namespace {

using namespace wolff;
using namespace wolff::harness;

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string suite;
    std::optional<double> tol;
};

ScenarioConfig resolve(const Flags& f, const std::string& suite) {
    ScenarioConfig c = f.config.empty() ? default_config(suite) : load_config(f.config);
    if (!f.config.empty() && c.suite != suite)
        throw ConfigError("config selects suite '" + c.suite + "' but the subcommand runs '" + suite + "'");
    if (!f.suite.empty() && f.suite != suite)
        throw ConfigError("--suite " + f.suite + " does not match the subcommand (" + suite + ")");
    if (f.seed) c.seed = *f.seed;
    if (!f.out.empty()) c.report_path = f.out;
    if (f.tol) {
        if (!(*f.tol > 0.0)) throw ConfigError("--tol must be positive");
        if (suite == "metric" || suite == "horospheres") c.tol_margin = *f.tol;
        else if (suite == "wolff") c.tol_invariance = *f.tol;
        else c.tol_containment = *f.tol;
    }
    if (suite == "herve" && !(c.domain == DomainSpec::polydisk(2)))
        throw ConfigError("the herve table needs domain = polydisk with dim = 2");
    return c;
}

int run_suite_command(const Flags& f, const std::string& suite) {
    const ScenarioConfig c = resolve(f, suite);
    const Report r = run_suite(c);
    if (c.report_path.empty()) std::cout << to_jsonl(r);
    else write_report(r, c.report_path);
    std::cerr << human_summary(r);
    return exit_code(r);
}

int emit_plot(const Flags& f) {
    const std::string kind = f.suite.empty() ? "horosphere" : f.suite;
    ScenarioConfig c = f.config.empty() ? default_config("dynamics") : load_config(f.config);
    if (!f.out.empty()) c.report_path = f.out;
    std::ostringstream table;
    if (kind == "horosphere") {
        const DomainSpec& d = c.domain;
        CPoint xi(d.dim());
        for (auto& v : xi) v = d.kind() == DomainKind::UnitBall ? 1.0 / std::sqrt(static_cast<double>(d.dim())) : 1.0;
        const auto h = HorosphereSpec::make(d, CPoint::origin(d.dim()), xi, 1.0, HoroKind::Small);
        write_horosphere_grid(table, h, RealSlice{});
    } else if (kind == "orbit") {
        const std::string text = c.maps.empty() ? "(mobius(0.5)(z1), 0.5*z2)" : c.maps.front().text;
        const DomainSpec d = c.maps.empty() ? DomainSpec::polydisk(2) : c.domain;
        const SelfMapExpr m = parse_map(text, d);
        write_orbit_trace(table, iterate(m, CPoint::origin(d.dim()), c.iterations), d);
    } else {
        throw ConfigError("emit-plot --suite must be 'horosphere' or 'orbit'");
    }
    if (c.report_path.empty()) {
        std::cout << table.str();
    } else {
        std::ofstream out(c.report_path, std::ios::binary);
        if (!out) throw Error("cannot write '" + c.report_path + "'");
        out << table.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kobayashi geometry, horospheres and Wolff-Denjoy dynamics on the disk, polydisk and ball"};
    app.require_subcommand(1);
    Flags flags;
    auto add_flags = [&flags](CLI::App* sub) {
        sub->add_option("--config", flags.config, "scenario file (INI)");
        sub->add_option("--seed", flags.seed, "root seed (overrides the config)");
        sub->add_option("--out", flags.out, "output path (default: stdout)");
        sub->add_option("--suite", flags.suite, "suite guard; for emit-plot: horosphere or orbit");
        sub->add_option("--tol", flags.tol, "main tolerance of the suite");
    };
    struct Cmd {
        const char* name;
        const char* suite;
        const char* help;
    };
    const Cmd cmds[] = {
        {"verify-metric", "metric", "metric axioms, convex-combination estimates, bounds sandwich"},
        {"verify-horospheres", "horospheres", "small/large/sequence horosphere properties and weights"},
        {"wolff", "wolff", "Wolff points and horosphere invariance"},
        {"dynamics", "dynamics", "orbit classification, damped fixed points, target sets"},
        {"herve-table", "herve", "slice classification of bidisk maps"},
    };
    std::string chosen;
    for (const auto& cmd : cmds) {
        CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
        add_flags(sub);
        sub->callback([&chosen, s = std::string(cmd.suite)] { chosen = s; });
    }
    CLI::App* plot = app.add_subcommand("emit-plot", "plot tables: horosphere margin grid or orbit trace");
    add_flags(plot);
    plot->callback([&chosen] { chosen = "emit-plot"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (chosen == "emit-plot") return emit_plot(flags);
        return run_suite_command(flags, chosen);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
