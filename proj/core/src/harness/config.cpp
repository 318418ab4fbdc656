#include "wolffkit/harness/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace wolff::harness {
namespace {

namespace pt = boost::property_tree;

const std::set<std::string> kScenarioKeys{"suite", "domain", "dim", "seed"};
const std::set<std::string> kBudgetKeys{"samples", "iterations", "invariance_iterations", "bounds_budget", "starts"};
const std::set<std::string> kToleranceKeys{"margin", "wolff", "invariance", "containment"};
const std::set<std::string> kOutputKeys{"report"};

void check_keys(const pt::ptree& section, const std::string& name, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : section) {
        if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in [" + name + "]");
        if (!value.empty()) throw ConfigError("nested value under '" + key + "'");
    }
}

template <class T>
T read(const pt::ptree& section, const std::string& key, T fallback, const std::string& where) {
    const auto v = section.get_optional<std::string>(key);
    if (!v) return fallback;
    std::istringstream in(*v);
    T out{};
    in >> out;
    if (!in || !(in >> std::ws).eof()) throw ConfigError("bad value '" + *v + "' for " + where + "." + key);
    return out;
}

std::size_t read_count(const pt::ptree& section, const std::string& key, std::size_t fallback, const std::string& where) {
    const auto v = section.get_optional<std::string>(key);
    if (v && !v->empty() && v->front() == '-') throw ConfigError(where + "." + key + " must be nonnegative");
    return read<std::size_t>(section, key, fallback, where);
}

double read_tol(const pt::ptree& section, const std::string& key, double fallback) {
    const double v = read<double>(section, key, fallback, "tolerances");
    if (!(v > 0.0)) throw ConfigError("tolerances." + key + " must be positive");
    return v;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"metric", "horospheres", "wolff", "dynamics", "herve"};
    return names;
}

ScenarioConfig parse_config(const std::string& text) {
    pt::ptree tree;
    try {
        std::istringstream in(text);
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
    }

    ScenarioConfig c;
    bool have_version = false;
    const pt::ptree empty;
    const pt::ptree* scenario = &empty;
    const pt::ptree* maps = &empty;
    const pt::ptree* budgets = &empty;
    const pt::ptree* tolerances = &empty;
    const pt::ptree* output = &empty;
    for (const auto& [key, node] : tree) {
        if (node.empty()) {
            if (key != "version") throw ConfigError("unknown top-level key '" + key + "'");
            c.version = read<int>(tree, "version", 0, "top");
            have_version = true;
        } else if (key == "scenario") scenario = &node;
        else if (key == "maps") maps = &node;
        else if (key == "budgets") budgets = &node;
        else if (key == "tolerances") tolerances = &node;
        else if (key == "output") output = &node;
        else throw ConfigError("unknown section [" + key + "]");
    }
    if (!have_version) throw ConfigError("missing version key");
    if (c.version != kConfigVersion) throw ConfigError("unsupported config version " + std::to_string(c.version));

    check_keys(*scenario, "scenario", kScenarioKeys);
    check_keys(*budgets, "budgets", kBudgetKeys);
    check_keys(*tolerances, "tolerances", kToleranceKeys);
    check_keys(*output, "output", kOutputKeys);

    const auto suite = scenario->get_optional<std::string>("suite");
    if (!suite) throw ConfigError("missing scenario.suite");
    if (std::find(suite_names().begin(), suite_names().end(), *suite) == suite_names().end())
        throw ConfigError("unknown suite '" + *suite + "'");
    c.suite = *suite;

    const auto domain = scenario->get_optional<std::string>("domain");
    if (!domain) throw ConfigError("missing scenario.domain");
    try {
        const DomainKind kind = domain_kind_from_string(*domain);
        const std::size_t dim = read_count(*scenario, "dim", kind == DomainKind::UnitDisk ? 1 : 2, "scenario");
        c.domain = DomainSpec(kind, dim);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("bad domain: ") + e.what());
    }
    c.seed = read<std::uint64_t>(*scenario, "seed", c.seed, "scenario");

    for (const auto& [label, node] : *maps) {
        if (!node.empty()) throw ConfigError("nested value under map '" + label + "'");
        c.maps.push_back({label, node.data()});
    }

    c.samples = read_count(*budgets, "samples", c.samples, "budgets");
    c.iterations = read_count(*budgets, "iterations", c.iterations, "budgets");
    c.invariance_iterations = read_count(*budgets, "invariance_iterations", c.invariance_iterations, "budgets");
    c.bounds_budget = read_count(*budgets, "bounds_budget", c.bounds_budget, "budgets");
    c.starts = read_count(*budgets, "starts", c.starts, "budgets");
    if (c.bounds_budget == 0) throw ConfigError("budgets.bounds_budget must be at least 1");

    c.tol_margin = read_tol(*tolerances, "margin", c.tol_margin);
    c.tol_wolff = read_tol(*tolerances, "wolff", c.tol_wolff);
    c.tol_invariance = read_tol(*tolerances, "invariance", c.tol_invariance);
    c.tol_containment = read_tol(*tolerances, "containment", c.tol_containment);

    c.report_path = output->get<std::string>("report", "");
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string to_ini(const ScenarioConfig& c) {
    std::ostringstream os;
    os << "version = " << c.version << "\n\n[scenario]\n"
       << "suite = " << c.suite << "\n"
       << "domain = " << to_string(c.domain.kind()) << "\n"
       << "dim = " << c.domain.dim() << "\n"
       << "seed = " << c.seed << "\n";
    if (!c.maps.empty()) {
        os << "\n[maps]\n";
        for (const auto& m : c.maps) os << m.label << " = " << m.text << "\n";
    }
    os << "\n[budgets]\n"
       << "samples = " << c.samples << "\n"
       << "iterations = " << c.iterations << "\n"
       << "invariance_iterations = " << c.invariance_iterations << "\n"
       << "bounds_budget = " << c.bounds_budget << "\n"
       << "starts = " << c.starts << "\n"
       << "\n[tolerances]\n"
       << "margin = " << fmt(c.tol_margin) << "\n"
       << "wolff = " << fmt(c.tol_wolff) << "\n"
       << "invariance = " << fmt(c.tol_invariance) << "\n"
       << "containment = " << fmt(c.tol_containment) << "\n";
    if (!c.report_path.empty()) os << "\n[output]\nreport = " << c.report_path << "\n";
    return os.str();
}

}  // namespace wolff::harness
