#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wolffkit/geometry.hpp"
#include "wolffkit/harness/config.hpp"
#include "wolffkit/harness/report.hpp"

namespace wolff::harness {

struct CorpusMap {
    std::string label;
    DomainSpec domain;
    std::string text;
    std::optional<CPoint> wolff;  ///< expected Wolff point, when known in closed form
    int herve_case = -1;          ///< expected slice case for bidisk maps
};

/// Fixed-point-free maps used by the wolff and dynamics suites.
const std::vector<CorpusMap>& dynamics_corpus();
/// Bidisk maps for the slice-classification table, one per case 0, 1, 2.
const std::vector<CorpusMap>& herve_corpus();

/// Runs the suite named in the config. Records are sorted by id; the runtime
/// is measured but never written to the report file.
Report run_suite(const ScenarioConfig& c);

Report run_metric_suite(const ScenarioConfig& c);
Report run_horospheres_suite(const ScenarioConfig& c);
Report run_wolff_suite(const ScenarioConfig& c);
Report run_dynamics_suite(const ScenarioConfig& c);
Report run_herve_table(const ScenarioConfig& c);

/// Default config for a suite (the one the CLI uses without --config).
ScenarioConfig default_config(const std::string& suite);

}  // namespace wolff::harness
