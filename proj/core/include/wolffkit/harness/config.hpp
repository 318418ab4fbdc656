#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wolffkit/errors.hpp"
#include "wolffkit/geometry.hpp"

namespace wolff::harness {

/// Malformed or incomplete scenario file (CLI exit code 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

inline constexpr int kConfigVersion = 1;

struct NamedMap {
    std::string label;
    std::string text;

    friend bool operator==(const NamedMap&, const NamedMap&) = default;
};

/// A scenario file:
///
///   version = 1
///   [scenario]   suite, domain (disk|polydisk|ball), dim, seed
///   [maps]       label = map expression   (any number, kept in file order)
///   [budgets]    samples, iterations, invariance_iterations, bounds_budget, starts
///   [tolerances] margin, wolff, invariance, containment
///   [output]     report
///
/// Every key except version, suite and domain has a default. Unknown sections
/// and keys are rejected.
struct ScenarioConfig {
    int version = kConfigVersion;
    std::string suite = "metric";
    DomainSpec domain = DomainSpec::polydisk(2);
    std::uint64_t seed = 42;
    std::vector<NamedMap> maps;

    std::size_t samples = 10'000;
    std::size_t iterations = 10'000;
    std::size_t invariance_iterations = 50;
    std::size_t bounds_budget = 64;
    std::size_t starts = 100;

    double tol_margin = 1e-9;
    double tol_wolff = 1e-6;
    double tol_invariance = 1e-7;
    double tol_containment = 1e-3;

    std::string report_path;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);
/// Serializes so that parse_config(to_ini(c)) == c.
std::string to_ini(const ScenarioConfig& c);

/// Suite names accepted in [scenario] suite.
const std::vector<std::string>& suite_names();

}  // namespace wolff::harness
