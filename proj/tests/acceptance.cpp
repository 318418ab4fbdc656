// Acceptance run: one PASS/FAIL line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "wolffkit/harness/report.hpp"
#include "wolffkit/harness/suites.hpp"

using namespace wolff;
using namespace wolff::harness;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Timed {
    Report report;
    double seconds;
};

Timed timed_run(const ScenarioConfig& c) {
    const auto t0 = std::chrono::steady_clock::now();
    Report r = run_suite(c);
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    return {std::move(r), dt.count()};
}

ScenarioConfig config(const std::string& suite, const DomainSpec& d, std::size_t samples) {
    ScenarioConfig c = default_config(suite);
    c.domain = d;
    c.samples = samples;
    return c;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

// All records whose id starts with one of the prefixes must pass; at least one must match.
void require(Outcome& o, const Report& r, const std::vector<std::string>& prefixes) {
    for (const auto& prefix : prefixes) {
        std::size_t matched = 0;
        for (const auto& rec : r.records) {
            if (!starts_with(rec.id, prefix)) continue;
            ++matched;
            if (rec.status != Status::Pass) {
                o.pass = false;
                o.detail += " " + rec.id + "=" + to_string(rec.status);
            }
        }
        if (matched == 0) {
            o.pass = false;
            o.detail += " missing " + prefix + "* in " + r.suite;
        }
    }
}

void require_time(Outcome& o, double seconds, double limit) {
    std::ostringstream s;
    s.precision(3);
    s << " " << seconds << "s/" << limit << "s";
    o.detail += s.str();
    if (seconds >= limit) o.pass = false;
}

const std::string& info(const Report& r, const std::string& id, const std::string& key) {
    static const std::string none = "?";
    for (const auto& rec : r.records)
        if (rec.id == id) {
            const auto it = rec.info.find(key);
            return it == rec.info.end() ? none : it->second;
        }
    return none;
}

Outcome metric_axioms() {
    Outcome o;
    double total = 0.0;
    for (std::size_t n : {2, 3}) {
        const auto t = timed_run(config("metric", DomainSpec::polydisk(n), 10'000));
        require(o, t.report, {"metric.symmetry", "metric.nonnegativity", "metric.triangle", "metric.convex_combination"});
        total += t.seconds;
    }
    require_time(o, total, 30.0);
    return o;
}

Outcome bounds_sandwich() {
    Outcome o;
    double total = 0.0;
    for (const auto& d : {DomainSpec::polydisk(2), DomainSpec::ball(2)}) {
        const auto t = timed_run(config("metric", d, 1'000));
        require(o, t.report, {"metric.bounds_sandwich"});
        o.detail += " " + to_string(d) + ":" + info(t.report, "metric.bounds_sandwich", "checked") + " pairs";
        total += t.seconds;
    }
    require_time(o, total, 60.0);
    return o;
}

Outcome horosphere_properties() {
    Outcome o;
    const auto t = timed_run(config("horospheres", DomainSpec::polydisk(2), 10'000));
    require(o, t.report, {"horo.small.", "horo.large.", "horo.exhaustion", "horo.sequence."});
    require_time(o, t.seconds, 60.0);
    return o;
}

Outcome alpha_weights() {
    Outcome o;
    const auto t = timed_run(config("horospheres", DomainSpec::polydisk(2), 1'000));
    require(o, t.report, {"alpha.radial", "alpha.radial_sequence_equals_small", "alpha.anisotropic"});
    o.detail += " anisotropic alpha=" + info(t.report, "alpha.anisotropic", "alpha");
    return o;
}

Outcome wolff_invariance() {
    Outcome o;
    std::size_t records = 0;
    for (const auto& d : {DomainSpec::disk(), DomainSpec::polydisk(2), DomainSpec::ball(2)}) {
        auto c = config("wolff", d, 1'000);
        c.invariance_iterations = 50;
        c.tol_invariance = 1e-7;
        const auto t = timed_run(c);
        require(o, t.report, {"wolff."});
        for (const auto& rec : t.report.records) {
            if (rec.id.find(".invariance.") == std::string::npos) continue;
            ++records;
            if (info(t.report, rec.id, "violations") != "0") o.pass = false;
        }
    }
    o.detail += " " + std::to_string(records) + " invariance records";
    return o;
}

Outcome strictly_convex_convergence() {
    Outcome o;
    auto c = config("dynamics", DomainSpec::ball(2), 1'000);
    c.starts = 100;
    c.iterations = 10'000;
    const auto t = timed_run(c);
    require(o, t.report, {"dynamics.ball_push.single_limit"});
    const std::string id = "dynamics.ball_push.single_limit";
    o.detail += " clusters=" + info(t.report, id, "clusters") + " diameter=" + info(t.report, id, "diameter_bound") +
                " gap=" + info(t.report, id, "boundary_gap");
    return o;
}

Outcome polydisk_targets() {
    Outcome o;
    auto c = config("dynamics", DomainSpec::polydisk(2), 1'000);
    const auto t = timed_run(c);
    require(o, t.report, {"dynamics.phi_half.target", "dynamics.phi_psi.target"});
    for (const char* label : {"phi_half", "phi_psi"})
        o.detail += std::string(" ") + label + ":" + info(t.report, std::string("dynamics.") + label + ".target", "max_distance");
    return o;
}

Outcome herve_table() {
    Outcome o;
    const auto t = timed_run(default_config("herve"));
    require(o, t.report, {"herve.case0_phi_id", "herve.case1_phi_half", "herve.case2_phi_psi"});
    o.detail += " branch=" + info(t.report, "herve.case2_phi_psi", "branch");
    return o;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
    Outcome o;
    const auto dir = std::filesystem::temp_directory_path();
    for (const auto& name : suite_names()) {
        ScenarioConfig c = default_config(name);
        const auto a = dir / ("wolffkit_accept_" + name + "_a.jsonl");
        const auto b = dir / ("wolffkit_accept_" + name + "_b.jsonl");
        write_report(run_suite(c), a.string());
        write_report(run_suite(c), b.string());
        const std::string ta = read_file(a), tb = read_file(b);
        if (ta.empty() || ta != tb) {
            o.pass = false;
            o.detail += " " + name + " differs";
        }
        std::filesystem::remove(a);
        std::filesystem::remove(b);
    }
    o.detail += " " + std::to_string(suite_names().size()) + " suites";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"metric axioms and convex-combination estimates", metric_axioms},
        {"bounds sandwich", bounds_sandwich},
        {"horosphere properties", horosphere_properties},
        {"alpha weights", alpha_weights},
        {"horosphere invariance under corpus maps", wolff_invariance},
        {"single limit on the ball", strictly_convex_convergence},
        {"polydisk target containment", polydisk_targets},
        {"slice classification table", herve_table},
        {"byte-identical reports", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string(" error: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].name << " |"
                  << o.detail << '\n';
    }
    return failed == 0 ? 0 : 1;
}
