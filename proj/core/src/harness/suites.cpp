#include "wolffkit/harness/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "wolffkit/dynamics.hpp"
#include "wolffkit/herve.hpp"
#include "wolffkit/horospheres.hpp"
#include "wolffkit/metric.hpp"
#include "wolffkit/parallel.hpp"
#include "wolffkit/random.hpp"
#include "wolffkit/selfmap.hpp"

namespace wolff::harness {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string fmt(const CPoint& p) {
    std::ostringstream os;
    os.precision(17);
    os << p;
    return os.str();
}

std::string fmt(Complex c) { return fmt(CPoint{c}); }

/// Running worst excess (observed - allowed) of one check.
struct Worst {
    double excess = -kInf;
    std::size_t count = 0;
    std::size_t violations = 0;

    void add(double e, double tol) {
        ++count;
        if (std::isnan(e)) {
            ++violations;
            excess = kInf;
            return;
        }
        excess = std::max(excess, e);
        if (e > tol) ++violations;
    }
};

/// Evaluates excess(i) for i < n concurrently and reduces in index order.
Worst worst_over(std::size_t n, double tol, const std::function<double(std::size_t)>& excess) {
    std::vector<double> e(n);
    parallel_for(n, [&](std::size_t i) { e[i] = excess(i); });
    Worst w;
    for (double v : e) w.add(v, tol);
    return w;
}

Record judged(std::string id, const Worst& w, double tol, const std::string& inputs,
              std::map<std::string, std::string> info = {}) {
    Record r;
    r.id = std::move(id);
    r.status = w.violations == 0 ? Status::Pass : Status::Fail;
    r.margin = tol - w.excess;
    r.inputs_digest = digest(inputs);
    info["checked"] = std::to_string(w.count);
    info["violations"] = std::to_string(w.violations);
    info["tolerance"] = fmt(tol);
    r.info = std::move(info);
    return r;
}

Record flag(std::string id, bool ok, double margin, const std::string& inputs, std::map<std::string, std::string> info = {}) {
    Record r;
    r.id = std::move(id);
    r.status = ok ? Status::Pass : Status::Fail;
    r.margin = margin;
    r.inputs_digest = digest(inputs);
    r.info = std::move(info);
    return r;
}

Record failure(std::string id, const std::string& inputs, const std::string& error) {
    Record r = flag(std::move(id), false, std::numeric_limits<double>::quiet_NaN(), inputs);
    r.info["error"] = error;
    return r;
}

std::string context(const ScenarioConfig& c, const std::string& what) {
    return what + "|" + to_string(c.domain) + "|seed=" + std::to_string(c.seed) + "|n=" + std::to_string(c.samples);
}

std::vector<CPoint> interior_samples(const DomainSpec& d, std::size_t n, Rng& rng, double max_gauge = 0.999) {
    std::vector<CPoint> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(rng.in_domain(d, max_gauge));
    return out;
}

/// Boundary points; on the polydisk every other draw has all coordinates unimodular.
CPoint boundary_sample(const DomainSpec& d, Rng& rng, std::size_t i) {
    if (d.is_product() && i % 2 == 1) {
        CPoint x(d.dim());
        for (auto& c : x) c = rng.on_circle();
        return x;
    }
    return rng.on_boundary(d);
}

// ---- metric ------------------------------------------------------------------

void metric_checks(const ScenarioConfig& c, Report& rep) {
    const DomainSpec& d = c.domain;
    const std::size_t n = c.samples;
    std::uint64_t counter = 0;

    {
        Rng rng(derive_seed(c.seed, counter++));
        const auto z = interior_samples(d, n, rng), w = interior_samples(d, n, rng);
        const Worst sym = worst_over(n, 1e-12, [&](std::size_t i) {
            return std::abs(kobayashi(d, z[i], w[i]) - kobayashi(d, w[i], z[i]));
        });
        rep.add(judged("metric.symmetry", sym, 1e-12, context(c, "symmetry")));
        const Worst pos = worst_over(n, 0.0, [&](std::size_t i) {
            const double k = kobayashi(d, z[i], w[i]);
            return std::max(-k, kobayashi(d, z[i], z[i]));
        });
        rep.add(judged("metric.nonnegativity", pos, 0.0, context(c, "nonnegativity")));
    }
    {
        Rng rng(derive_seed(c.seed, counter++));
        const auto x = interior_samples(d, n, rng), y = interior_samples(d, n, rng), z = interior_samples(d, n, rng);
        const Worst tri = worst_over(n, 1e-9, [&](std::size_t i) {
            return kobayashi(d, x[i], z[i]) - kobayashi(d, x[i], y[i]) - kobayashi(d, y[i], z[i]);
        });
        rep.add(judged("metric.triangle", tri, 1e-9, context(c, "triangle")));
    }
    {
        Rng rng(derive_seed(c.seed, counter++));
        std::vector<ConvexityTuple> tuples(n);
        for (auto& t : tuples) {
            t.z1 = rng.in_domain(d, 0.999);
            t.z2 = rng.in_domain(d, 0.999);
            t.w1 = rng.in_domain(d, 0.999);
            t.w2 = rng.in_domain(d, 0.999);
            t.s = rng.uniform();
            t.t = rng.uniform();
        }
        Worst first, second;
        std::vector<double> e1(n), e2(n);
        parallel_for(n, [&](std::size_t i) {
            const auto& t = tuples[i];
            e1[i] = kobayashi(d, segment_point(t.z1, t.w1, t.s), segment_point(t.z2, t.w2, t.s)) -
                    std::max(kobayashi(d, t.z1, t.z2), kobayashi(d, t.w1, t.w2));
            e2[i] = kobayashi(d, segment_point(t.z1, t.w1, t.s), segment_point(t.z1, t.w1, t.t)) -
                    kobayashi(d, t.z1, t.w1);
        });
        for (std::size_t i = 0; i < n; ++i) {
            first.add(e1[i], 1e-9);
            second.add(e2[i], 1e-9);
        }
        rep.add(judged("metric.convex_combination.max", first, 1e-9, context(c, "convex-max")));
        rep.add(judged("metric.convex_combination.segment", second, 1e-9, context(c, "convex-segment")));
    }
    {
        Rng rng(derive_seed(c.seed, counter++));
        const std::size_t m = std::min<std::size_t>(n, 1000);
        const auto z = interior_samples(d, m, rng, 0.95), w = interior_samples(d, m, rng, 0.95);
        BoundsOptions bo;
        bo.budget = c.bounds_budget;
        const Worst sandwich = worst_over(m, kTolBounds, [&](std::size_t i) {
            const double k = kobayashi(d, z[i], w[i]);
            const BoundsPair b = bounds(d, z[i], w[i], bo);
            return std::max(b.lower - k, k - b.upper);
        });
        rep.add(judged("metric.bounds_sandwich", sandwich, kTolBounds, context(c, "bounds")));
    }
    {
        // Points at gauge 1 - 1e-12 must still give finite, positive distances.
        Rng rng(derive_seed(c.seed, counter++));
        Worst finite;
        for (std::size_t i = 0; i < 100; ++i) {
            CPoint b = rng.on_boundary(d) * (1.0 - 1e-12);
            const double k = kobayashi(d, CPoint::origin(d.dim()), b);
            finite.add(std::isfinite(k) && k > 0.0 ? 0.0 : 1.0, 0.0);
        }
        rep.add(judged("metric.near_boundary", finite, 0.0, context(c, "near-boundary")));
    }
    {
        // Holomorphic self-maps contract the distance.
        std::vector<std::pair<std::string, std::string>> maps;
        for (const auto& m : c.maps) maps.emplace_back(m.label, m.text);
        if (maps.empty())
            for (const auto& m : dynamics_corpus())
                if (m.domain == d) maps.emplace_back(m.label, m.text);
        for (const auto& [label, text] : maps) {
            const std::string id = "metric.contraction." + label;
            try {
                const SelfMapExpr f = parse_map(text, d);
                Rng rng(derive_seed(c.seed, counter++));
                const std::size_t m = std::min<std::size_t>(n, 1000);
                const auto z = interior_samples(d, m, rng, 0.99), w = interior_samples(d, m, rng, 0.99);
                const Worst contraction = worst_over(m, 1e-9, [&](std::size_t i) {
                    return kobayashi_or_inf(d, f(z[i]), f(w[i])) - kobayashi(d, z[i], w[i]);
                });
                rep.add(judged(id, contraction, 1e-9, context(c, text)));
            } catch (const Error& e) {
                rep.add(failure(id, context(c, text), e.what()));
            }
        }
    }
}

// ---- horospheres ---------------------------------------------------------------

struct HoroSample {
    CPoint z, z2, pole, xi;
    double radius, s;
};

double functional_of(const DomainSpec& d, const CPoint& pole, const CPoint& xi, HoroKind kind, const CPoint& z,
                     std::shared_ptr<const HoroSeq> seq = nullptr) {
    const auto h = HorosphereSpec::make(d, pole, xi, 1.0, kind, std::move(seq));
    const auto v = horosphere_functional(h, z);
    return v ? *v : std::numeric_limits<double>::quiet_NaN();
}

std::shared_ptr<const HoroSeq> anisotropic_seq() {
    auto seq = std::make_shared<HoroSeq>();
    seq->center = CPoint{1.0, 1.0};
    for (double nu : default_radial_schedule())
        seq->terms.push_back({nu, CPoint{std::sqrt(1.0 - 1.0 / nu), std::sqrt(1.0 - 0.5 / nu)}});
    seq->alpha = alpha_weights(*seq, seq->center);
    return seq;
}

void horosphere_checks(const ScenarioConfig& c, Report& rep) {
    const DomainSpec& d = c.domain;
    const std::size_t n = c.samples;
    const double tol = c.tol_margin;
    Rng rng(derive_seed(c.seed, 0));
    std::vector<HoroSample> S(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& s = S[i];
        s.z = rng.in_domain(d, 0.99);
        s.z2 = rng.in_domain(d, 0.99);
        s.pole = i % 2 == 0 ? CPoint::origin(d.dim()) : rng.in_domain(d, 0.6);
        s.xi = boundary_sample(d, rng, i / 2);
        s.radius = std::exp(rng.uniform(-3.0, 3.0));
        s.s = rng.uniform();
    }
    // Radial sequences per sample share the center, so G has alpha = 1 there.
    std::vector<std::shared_ptr<const HoroSeq>> radial(n);
    parallel_for(n, [&](std::size_t i) {
        auto seq = std::make_shared<HoroSeq>();
        seq->center = S[i].xi;
        for (double nu : default_radial_schedule()) seq->terms.push_back({nu, radial_point(S[i].xi, nu)});
        if (d.is_product()) seq->alpha = alpha_weights(*seq, S[i].xi);
        radial[i] = seq;
    });
    const auto aniso = d.kind() == DomainKind::Polydisk && d.dim() == 2 ? anisotropic_seq() : nullptr;

    struct Values {
        double e, f, g, ga, k, e_mid, g_mid, f_seg, f_z;
    };
    std::vector<Values> V(n);
    parallel_for(n, [&](std::size_t i) {
        const auto& s = S[i];
        Values& v = V[i];
        v.e = functional_of(d, s.pole, s.xi, HoroKind::Small, s.z);
        v.f = functional_of(d, s.pole, s.xi, HoroKind::Large, s.z);
        v.g = functional_of(d, s.pole, s.xi, HoroKind::Sequence, s.z, radial[i]);
        v.ga = aniso && i % 2 == 1 ? functional_of(d, s.pole, aniso->center, HoroKind::Sequence, s.z, aniso)
                                   : std::numeric_limits<double>::quiet_NaN();
        v.k = kobayashi(d, s.pole, s.z);
        const CPoint mid = segment_point(s.z, s.z2, 0.5);
        v.e_mid = functional_of(d, s.pole, s.xi, HoroKind::Small, mid) -
                  std::max(v.e, functional_of(d, s.pole, s.xi, HoroKind::Small, s.z2));
        v.g_mid = functional_of(d, s.pole, s.xi, HoroKind::Sequence, mid, radial[i]) -
                  std::max(v.g, functional_of(d, s.pole, s.xi, HoroKind::Sequence, s.z2, radial[i]));
        // Star shape toward the center; s in (0,1) keeps the point interior.
        const double t = std::clamp(s.s, 1e-3, 1.0);
        v.f_seg = functional_of(d, s.pole, s.xi, HoroKind::Large, segment_point(s.z, s.xi, t));
        v.f_z = v.f;
    });

    auto run = [&](const std::string& id, const std::function<double(std::size_t)>& excess) {
        Worst w;
        for (std::size_t i = 0; i < n; ++i) w.add(excess(i), tol);
        rep.add(judged(id, w, tol, context(c, id)));
    };
    run("horo.small.inside_large", [&](std::size_t i) { return V[i].f - V[i].e; });
    run("horo.small.monotone_radius", [&](std::size_t i) {
        // Membership at R implies membership at 2R: margin drops by log(2)/2.
        const double m1 = V[i].e - 0.5 * std::log(S[i].radius);
        const double m2 = V[i].e - 0.5 * std::log(2.0 * S[i].radius);
        return m1 <= 0.0 ? m2 - (m1 - 0.5 * std::log(2.0)) : -kInf;
    });
    run("horo.small.contains_kobayashi_ball", [&](std::size_t i) { return V[i].e - V[i].k; });
    run("horo.large.misses_kobayashi_ball", [&](std::size_t i) { return -V[i].k - V[i].f; });
    run("horo.exhaustion", [&](std::size_t i) {
        // Every z has a finite critical radius for E, F and G.
        return std::isfinite(V[i].e) && std::isfinite(V[i].f) && std::isfinite(V[i].g) ? -kInf : kInf;
    });
    run("horo.small.convex", [&](std::size_t i) { return V[i].e_mid; });
    run("horo.large.star_shaped", [&](std::size_t i) { return V[i].f_seg - V[i].f_z; });
    run("horo.sequence.between_small_and_large",
        [&](std::size_t i) { return std::max(V[i].g - V[i].e, V[i].f - V[i].g); });
    run("horo.sequence.convex", [&](std::size_t i) { return V[i].g_mid; });
    run("horo.sequence.contains_kobayashi_ball", [&](std::size_t i) { return V[i].g - V[i].k; });
    run("horo.sequence.misses_kobayashi_ball", [&](std::size_t i) { return -V[i].k - V[i].g; });
    if (aniso) {
        run("horo.sequence.anisotropic_between", [&](std::size_t i) {
            if (std::isnan(V[i].ga)) return -kInf;
            const auto& s = S[i];
            const double e = functional_of(d, s.pole, aniso->center, HoroKind::Small, s.z);
            const double f = functional_of(d, s.pole, aniso->center, HoroKind::Large, s.z);
            return std::max(V[i].ga - e, f - V[i].ga);
        });
    }

    if (!d.is_product()) return;

    // Weights of the radial sequence, and G = E on a grid.
    {
        Worst w;
        Rng r2(derive_seed(c.seed, 1));
        std::string inputs;
        for (std::size_t i = 0; i < 32; ++i) {
            const CPoint xi = boundary_sample(d, r2, i);
            const HoroSeq seq = make_radial_seq(d, xi);
            inputs += fmt(xi);
            if (!seq.has_converged_alpha() || seq.probe_status != ProbeStatus::Converged) {
                w.add(kInf, 1e-6);
                continue;
            }
            for (std::size_t j : seq.alpha->unimodular) w.add(std::abs(seq.alpha->alpha[j] - 1.0), 1e-6);
        }
        rep.add(judged("alpha.radial", w, 1e-6, inputs));
    }
    {
        const CPoint xi = d.dim() == 1 ? CPoint{1.0} : [&] {
            CPoint x(d.dim());
            for (auto& v : x) v = 1.0;
            return x;
        }();
        auto seq = std::make_shared<const HoroSeq>(make_radial_seq(d, xi));
        const CPoint origin = CPoint::origin(d.dim());
        std::vector<CPoint> grid;
        for (int a = 0; a < 32; ++a)
            for (int b = 0; b < 32; ++b) {
                CPoint p(d.dim());
                p[0] = Complex(-0.95 + 1.9 * a / 31.0, 0.0);
                if (d.dim() > 1) p[1] = Complex(-0.95 + 1.9 * b / 31.0, 0.0);
                else p[0] += Complex(0.0, (-0.95 + 1.9 * b / 31.0) * 0.3);
                grid.push_back(p);
            }
        Worst w;
        for (const auto& p : grid) {
            for (double R : {0.25, 1.0, 4.0}) {
                const auto e = horosphere_contains(HorosphereSpec::make(d, origin, xi, R, HoroKind::Small), p);
                const auto g =
                    horosphere_contains(HorosphereSpec::make(d, origin, xi, R, HoroKind::Sequence, seq), p);
                w.add(e.contained() == g.contained() ? std::abs(e.margin - g.margin) : kInf, tol);
            }
        }
        rep.add(judged("alpha.radial_sequence_equals_small", w, tol, context(c, "G=E grid")));
    }
    if (aniso) {
        const auto& a = aniso->alpha->alpha;
        Worst w;
        w.add(aniso->alpha->converged ? std::max(std::abs(a[0] - 0.5), std::abs(a[1] - 1.0)) : kInf, 1e-4);
        rep.add(judged("alpha.anisotropic", w, 1e-4, "anisotropic (1-1/nu, 1-1/(2nu))",
                       {{"alpha", fmt(a[0]) + "," + fmt(a[1])}}));
    }
}

// ---- wolff / dynamics --------------------------------------------------------

std::vector<CorpusMap> maps_for(const ScenarioConfig& c) {
    std::vector<CorpusMap> out;
    for (const auto& m : c.maps) out.push_back({m.label, c.domain, m.text, std::nullopt, -1});
    if (out.empty())
        for (const auto& m : dynamics_corpus())
            if (m.domain == c.domain) out.push_back(m);
    return out;
}

/// Half the samples uniform in the domain, half on segments toward the center x
/// (the region where small horospheres live).
std::vector<CPoint> invariance_samples(const DomainSpec& d, const CPoint& x, std::size_t n, Rng& rng) {
    std::vector<CPoint> out;
    for (std::size_t i = 0; i < n; ++i) {
        const CPoint z = rng.in_domain(d, 0.999);
        if (i % 2 == 0) out.push_back(z);
        else out.push_back(segment_point(z, x, rng.uniform(0.02, 1.0)));
    }
    return out;
}

void wolff_checks(const ScenarioConfig& c, Report& rep) {
    const DomainSpec& d = c.domain;
    std::uint64_t counter = 0;
    for (const auto& entry : maps_for(c)) {
        const std::string base = "wolff." + entry.label;
        const std::string inputs = context(c, entry.text);
        WolffData w;
        SelfMapExpr m = SelfMapExpr::identity(d);
        try {
            m = parse_map(entry.text, d);
            WolffOptions wo;
            wo.tol_wolff = c.tol_wolff;
            w = wolff_point(m, default_probe_grid(d), wo);
        } catch (const Error& e) {
            rep.add(failure(base + ".point", inputs, e.what()));
            continue;
        }
        const double err = entry.wolff ? distance(w.point, *entry.wolff) : 0.0;
        rep.add(flag(base + ".point", err <= 10.0 * c.tol_wolff, 10.0 * c.tol_wolff - err, inputs,
                     {{"wolff_point", fmt(w.point)},
                      {"last_increment", fmt(w.last_increment)},
                      {"sequence_terms", std::to_string(w.seq.terms.size())}}));

        auto seq = std::make_shared<const HoroSeq>(w.seq);
        const CPoint origin = CPoint::origin(d.dim());
        for (HoroKind kind : {HoroKind::Small, HoroKind::Sequence}) {
            for (double R : {0.25, 1.0, 4.0}) {
                Rng rng(derive_seed(c.seed, counter++));
                const auto samples = invariance_samples(d, w.point, c.samples, rng);
                const auto h = HorosphereSpec::make(d, origin, w.point, R, kind, seq);
                const InvarianceReport inv = check_invariance(m, h, samples, c.invariance_iterations, c.tol_invariance);
                const std::string id = base + ".invariance." + (kind == HoroKind::Small ? "small" : "sequence") +
                                       ".R=" + fmt(R);
                Record r = flag(id, inv.violations.empty() && inv.checked > 0, c.tol_invariance - inv.worst_margin,
                                inputs + "|R=" + fmt(R),
                                {{"samples", std::to_string(inv.samples)},
                                 {"checked", std::to_string(inv.checked)},
                                 {"escaped_iterates", std::to_string(inv.escaped)},
                                 {"violations", std::to_string(inv.violations.size())}});
                if (inv.checked == 0) r.status = Status::Indeterminate;
                rep.add(std::move(r));
            }
        }
    }
}

std::vector<CPoint> start_grid(const DomainSpec& d, std::size_t n, Rng& rng) {
    std::vector<CPoint> out{CPoint::origin(d.dim())};
    while (out.size() < n) out.push_back(rng.in_domain(d, 0.9));
    return out;
}

void dynamics_checks(const ScenarioConfig& c, Report& rep) {
    const DomainSpec& d = c.domain;
    std::uint64_t counter = 0;
    for (const auto& entry : maps_for(c)) {
        const std::string base = "dynamics." + entry.label;
        const std::string inputs = context(c, entry.text);
        std::optional<SelfMapExpr> parsed;
        try {
            parsed = parse_map(entry.text, d);
        } catch (const Error& e) {
            rep.add(failure(base + ".parse", inputs, e.what()));
            continue;
        }
        const SelfMapExpr& m = *parsed;

        // Same verdict from 10 starts.
        Rng rng(derive_seed(c.seed, counter++));
        const auto starts10 = start_grid(d, 10, rng);
        std::vector<OrbitVerdict> verdicts(starts10.size());
        std::vector<CPoint> estimates(starts10.size());
        parallel_for(starts10.size(), [&](std::size_t i) {
            const OrbitClass oc = classify_orbit(iterate(m, starts10[i], c.iterations), d);
            verdicts[i] = oc.verdict;
            if (oc.estimate) estimates[i] = *oc.estimate;
        });
        const bool same = std::all_of(verdicts.begin(), verdicts.end(), [&](OrbitVerdict v) { return v == verdicts[0]; });
        rep.add(flag(base + ".verdict_consistency", same, same ? 0.0 : -1.0, inputs,
                     {{"verdict", to_string(verdicts[0])}, {"starts", std::to_string(starts10.size())}}));

        {
            const std::size_t np = std::min<std::size_t>(c.samples, 1000);
            const auto z = interior_samples(d, np, rng, 0.99), w2 = interior_samples(d, np, rng, 0.99);
            const Worst ne = worst_over(np, 1e-9, [&](std::size_t i) {
                return kobayashi_or_inf(d, m(z[i]), m(w2[i])) - kobayashi(d, z[i], w2[i]);
            });
            rep.add(judged(base + ".nonexpansive", ne, 1e-9, inputs));
        }
        {
            // Damped fixed point: defining equation and independence of the start.
            const double s = 1.0 / 64.0;
            std::vector<CPoint> fps;
            Worst agree;
            std::string err;
            try {
                for (std::size_t i = 0; i < 5; ++i) fps.push_back(approx_fixed_point(m, s, rng.in_domain(d, 0.9)));
                for (const auto& p : fps) agree.add(distance(p, fps.front()), 1e-8);
            } catch (const Error& e) {
                err = e.what();
            }
            if (err.empty()) rep.add(judged(base + ".damped_fixed_point", agree, 1e-8, inputs));
            else rep.add(failure(base + ".damped_fixed_point", inputs, err));
        }

        if (verdicts[0] == OrbitVerdict::InteriorConvergent) {
            rep.add(flag(base + ".orbit_limit", true, 0.0, inputs, {{"fixed_point", fmt(estimates[0])}}));
            continue;
        }
        if (verdicts[0] == OrbitVerdict::Undetermined) {
            Record r = flag(base + ".orbit_limit", true, std::numeric_limits<double>::quiet_NaN(), inputs);
            r.status = Status::Indeterminate;
            rep.add(std::move(r));
            continue;
        }

        WolffData w;
        try {
            WolffOptions wo;
            wo.tol_wolff = c.tol_wolff;
            w = wolff_point(m, default_probe_grid(d), wo);
        } catch (const Error& e) {
            rep.add(failure(base + ".target", inputs, e.what()));
            continue;
        }
        const BoundarySetDescr predicted = predicted_superset(d, w);
        const auto starts = start_grid(d, c.starts, rng);
        TargetOptions to;
        to.iterations = c.iterations;
        const TargetReport tr = target_set_estimate(m, starts, predicted, to);
        std::ostringstream pred;
        pred << predicted;
        rep.add(flag(base + ".target", tr.max_distance <= c.tol_containment, c.tol_containment - tr.max_distance, inputs,
                     {{"wolff_point", fmt(w.point)},
                      {"predicted", pred.str()},
                      {"clusters", std::to_string(tr.clusters.size())},
                      {"tail_points", std::to_string(tr.tail_points)},
                      {"max_distance", fmt(tr.max_distance)}}));
        if (d.is_strictly_convex()) {
            double diameter = 0.0;
            for (const auto& cl : tr.clusters) diameter = std::max(diameter, cl.diameter);
            std::size_t longest = 0;
            for (const auto& o : tr.orbits) longest = std::max(longest, o.points.size() - 1);
            const bool ok = tr.clusters.size() == 1 && diameter <= 1e-4 && tr.max_boundary_gap <= 1e-6 &&
                            longest <= c.iterations;
            rep.add(flag(base + ".single_limit", ok, std::min(1e-4 - diameter, 1e-6 - tr.max_boundary_gap), inputs,
                         {{"clusters", std::to_string(tr.clusters.size())},
                          {"diameter_bound", fmt(diameter)},
                          {"boundary_gap", fmt(tr.max_boundary_gap)},
                          {"limit", fmt(tr.clusters.front().representative)},
                          {"iterations_used", std::to_string(longest)}}));
        }
    }
}

// ---- slice classification table ---------------------------------------------

void herve_rows(const ScenarioConfig& c, Report& rep) {
    const DomainSpec d = DomainSpec::polydisk(2);
    std::vector<CorpusMap> rows = herve_corpus();
    for (const auto& m : c.maps) rows.push_back({m.label, d, m.text, std::nullopt, -1});

    std::vector<Record> out(rows.size());
    parallel_for(rows.size(), [&](std::size_t i) {
        const auto& row = rows[i];
        const std::string id = "herve." + row.label;
        const std::string inputs = "herve|" + row.text + "|N=" + std::to_string(c.iterations);
        try {
            const SelfMapExpr F = parse_map(row.text, d);
            const HerveResult hr = herve_classify(F);
            const BoundarySetDescr predicted = herve_predicted_descr(hr);

            std::vector<CPoint> starts;
            for (double a : {-0.5, 0.0, 0.5})
                for (double b : {-0.5, 0.0, 0.5}) starts.push_back(CPoint{Complex(a, 0.1 * b), Complex(b, -0.1 * a)});
            TargetOptions to;
            to.iterations = c.iterations;
            const TargetReport tr = target_set_estimate(F, starts, predicted, to);

            // Case 0 predicts the limit fiberwise: (sigma, w0) from (z0, w0).
            double fiber = 0.0;
            if (hr.herve_case == 0) {
                for (const auto& o : tr.orbits) {
                    CPoint limit = o.start;
                    if (hr.swapped) limit[1] = *hr.tau;
                    else limit[0] = *hr.sigma;
                    fiber = std::max(fiber, distance(o.points.back(), limit));
                }
            }
            // Case 2 is a disjunction; report which slab holds the tails.
            std::string branch;
            if (hr.herve_case == 2) {
                const auto slab_z = pinned_slab(2, 0, *hr.sigma), slab_w = pinned_slab(2, 1, *hr.tau);
                double dz = 0.0, dw = 0.0;
                for (const auto& o : tr.orbits) {
                    dz = std::max(dz, distance_to_descr(slab_z, o.points.back()));
                    dw = std::max(dw, distance_to_descr(slab_w, o.points.back()));
                }
                const bool in_z = dz <= c.tol_containment, in_w = dw <= c.tol_containment;
                branch = in_z && in_w ? "both" : in_z ? "sigma x disk" : in_w ? "disk x tau" : "neither";
            }
            const double observed = std::max(tr.max_distance, fiber);
            const bool case_ok = row.herve_case < 0 || row.herve_case == hr.herve_case;
            const bool ok = case_ok && observed <= c.tol_containment && branch != "neither";
            std::ostringstream pred;
            pred << predicted;
            std::map<std::string, std::string> info{{"case", std::to_string(hr.herve_case)},
                                                    {"swapped", hr.swapped ? "true" : "false"},
                                                    {"predicted", pred.str()},
                                                    {"max_distance", fmt(observed)},
                                                    {"clusters", std::to_string(tr.clusters.size())}};
            if (row.herve_case >= 0) info["expected_case"] = std::to_string(row.herve_case);
            if (hr.sigma) info["sigma"] = fmt(*hr.sigma);
            if (hr.tau) info["tau"] = fmt(*hr.tau);
            if (!branch.empty()) info["branch"] = branch;
            out[i] = flag(id, ok, c.tol_containment - observed, inputs, std::move(info));
        } catch (const Error& e) {
            out[i] = failure(id, inputs, e.what());
        }
    });
    for (auto& r : out) rep.add(std::move(r));
}

}  // namespace

const std::vector<CorpusMap>& dynamics_corpus() {
    static const std::vector<CorpusMap> corpus{
        {"phi_disk", DomainSpec::disk(), "mobius(0.5)(z1)", CPoint{1.0}, -1},
        {"phi_half", DomainSpec::polydisk(2), "(mobius(0.5)(z1), 0.5*z2)", CPoint{1.0, 0.0}, 1},
        {"phi_psi", DomainSpec::polydisk(2), "(mobius(0.5)(z1), mobius(0.5)(z2))", CPoint{1.0, 1.0}, 2},
        // Hyperbolic automorphism of the ball along e1 with the transverse part halved.
        {"ball_push", DomainSpec::ball(2), "(mobius(0.5)(z1), 0.4330127018922193*z2/(1+0.5*z1))", CPoint{1.0, 0.0},
         -1},
    };
    return corpus;
}

const std::vector<CorpusMap>& herve_corpus() {
    static const std::vector<CorpusMap> corpus{
        {"case0_phi_id", DomainSpec::polydisk(2), "(mobius(0.5)(z1), z2)", CPoint{1.0, 0.0}, 0},
        {"case1_phi_half", DomainSpec::polydisk(2), "(mobius(0.5)(z1), 0.5*z2)", CPoint{1.0, 0.0}, 1},
        {"case2_phi_psi", DomainSpec::polydisk(2), "(mobius(0.5)(z1), mobius(0.5)(z2))", CPoint{1.0, 1.0}, 2},
    };
    return corpus;
}

Report run_metric_suite(const ScenarioConfig& c) {
    Report r;
    metric_checks(c, r);
    return r;
}

Report run_horospheres_suite(const ScenarioConfig& c) {
    Report r;
    horosphere_checks(c, r);
    return r;
}

Report run_wolff_suite(const ScenarioConfig& c) {
    Report r;
    wolff_checks(c, r);
    return r;
}

Report run_dynamics_suite(const ScenarioConfig& c) {
    Report r;
    dynamics_checks(c, r);
    return r;
}

Report run_herve_table(const ScenarioConfig& c) {
    Report r;
    herve_rows(c, r);
    return r;
}

Report run_suite(const ScenarioConfig& c) {
    const auto t0 = std::chrono::steady_clock::now();
    Report r;
    if (c.suite == "metric") r = run_metric_suite(c);
    else if (c.suite == "horospheres") r = run_horospheres_suite(c);
    else if (c.suite == "wolff") r = run_wolff_suite(c);
    else if (c.suite == "dynamics") r = run_dynamics_suite(c);
    else if (c.suite == "herve") r = run_herve_table(c);
    else throw ConfigError("unknown suite '" + c.suite + "'");
    r.suite = c.suite;
    r.seed = c.seed;
    r.finalize();
    r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

ScenarioConfig default_config(const std::string& suite) {
    ScenarioConfig c;
    c.suite = suite;
    if (suite == "wolff") c.samples = 1000;
    if (suite == "dynamics") c.samples = 1000;
    return c;
}

}  // namespace wolff::harness
