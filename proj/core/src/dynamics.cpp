#include "wolffkit/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "wolffkit/metric.hpp"
#include "wolffkit/parallel.hpp"

namespace wolff {

Orbit iterate(const SelfMapExpr& m, const CPoint& start, std::size_t n, IterateOptions opts) {
    const DomainSpec& d = m.domain();
    require_interior(d, start, "orbit start");
    const CPoint pole = opts.pole.value_or(CPoint::origin(d.dim()));
    Orbit o;
    o.start = start;
    o.points.push_back(start);
    o.k_from_pole.push_back(kobayashi(d, pole, start));
    CPoint cur = start;
    for (std::size_t step = 0; step < n; ++step) {
        CPoint next = m(cur);
        if (!next.is_finite() || !(gauge(d, next) < 1.0)) {
            o.stop = OrbitStop::Escaped;
            break;
        }
        const double k = kobayashi(d, pole, next);
        const double step_k = kobayashi(d, cur, next);
        o.points.push_back(next);
        o.k_from_pole.push_back(k);
        if (k > opts.escape_threshold) {
            o.stop = OrbitStop::Escaped;
            break;
        }
        if (step_k < opts.tol_fix) {
            o.stop = OrbitStop::Converged;
            break;
        }
        cur = std::move(next);
    }
    return o;
}

OrbitClass classify_orbit(const Orbit& o, const DomainSpec& d) {
    if (o.points.empty()) throw Error("classify_orbit: empty orbit");
    d.require_dim(o.points.front());
    switch (o.stop) {
        case OrbitStop::Converged: return {OrbitVerdict::InteriorConvergent, o.points.back()};
        case OrbitStop::Escaped: return {OrbitVerdict::CompactlyDivergent, o.points.back()};
        case OrbitStop::Budget: break;
    }
    return {OrbitVerdict::Undetermined, std::nullopt};
}

std::string to_string(OrbitVerdict v) {
    switch (v) {
        case OrbitVerdict::InteriorConvergent: return "InteriorConvergent";
        case OrbitVerdict::CompactlyDivergent: return "CompactlyDivergent";
        case OrbitVerdict::Undetermined: return "Undetermined";
    }
    return "?";
}

CPoint approx_fixed_point(const SelfMapExpr& m, double s, const CPoint& z_init, FixedPointOptions opts) {
    const DomainSpec& d = m.domain();
    if (!(s > 0.0 && s < 1.0)) throw Error("damping must lie in (0,1)");
    require_interior(d, z_init, "initial point");
    CPoint p = z_init;
    double step = std::numeric_limits<double>::infinity();
    for (std::size_t it = 0; it < opts.max_iterations; ++it) {
        CPoint next = m(p) * (1.0 - s);
        if (!next.is_finite()) throw ConvergenceError("damped map produced a non-finite value");
        step = kobayashi(d, p, next);
        p = std::move(next);
        if (step < opts.tol_fix) return p;
    }
    throw ConvergenceError("damped fixed point not reached within budget (last step " + std::to_string(step) + ")");
}

std::vector<double> default_wolff_schedule() {
    std::vector<double> s;
    for (int e = 1; e <= 14; ++e) s.push_back(std::ldexp(1.0, e));
    return s;
}

namespace {

/// Projects an extrapolated limit onto the boundary; coordinates (or the whole
/// point, for the ball) within `snap` of the unit circle are normalized.
CPoint snap_to_boundary(const DomainSpec& d, const CPoint& r, double snap) {
    const double g = gauge(d, r);
    if (g < 1.0 - snap) throw ConvergenceError("damped fixed points do not approach the boundary");
    if (d.kind() == DomainKind::UnitBall) return r / g;
    CPoint x = r;
    for (auto& c : x) {
        const double a = std::abs(c);
        if (a >= 1.0 - snap) c /= a;
    }
    return x;
}

}  // namespace

WolffData wolff_point(const SelfMapExpr& m, const std::vector<CPoint>& probes, WolffOptions opts) {
    const DomainSpec& d = m.domain();
    const CPoint origin = CPoint::origin(d.dim());
    if (opts.schedule.size() < 4) throw Error("wolff_point needs at least four schedule entries");

    const OrbitClass cls = classify_orbit(iterate(m, origin, opts.probe_iterations), d);
    if (cls.verdict != OrbitVerdict::CompactlyDivergent)
        throw DomainError("wolff_point: the origin orbit is " + to_string(cls.verdict) +
                          ", not compactly divergent (the map may have an interior fixed point)");

    WolffData w;
    CPoint p = origin;
    for (double nu : opts.schedule) {
        p = approx_fixed_point(m, 1.0 / nu, p, opts.fixed_point);
        w.trace.push_back({nu, p});
    }
    // x_nu = x + c / nu + O(1/nu^2): eliminate the first-order term.
    for (std::size_t i = 1; i < w.trace.size(); ++i) {
        const double r = w.trace[i].nu / w.trace[i - 1].nu;
        w.extrapolated.push_back((w.trace[i].point * r - w.trace[i - 1].point) / (r - 1.0));
    }
    const std::size_t n = w.extrapolated.size();
    double worst_tail = 0.0;
    for (std::size_t i = n - 2; i < n; ++i)
        worst_tail = std::max(worst_tail, distance(w.extrapolated[i], w.extrapolated[i - 1]));
    w.last_increment = distance(w.extrapolated[n - 1], w.extrapolated[n - 2]);
    if (worst_tail > opts.tol_wolff)
        throw ConvergenceError("extrapolated damped fixed points are not Cauchy (increment " +
                               std::to_string(worst_tail) + ")");
    w.point = snap_to_boundary(d, w.extrapolated.back(), 10.0 * opts.tol_wolff);

    HoroSeq raw;
    raw.center = w.point;
    raw.terms = w.trace;
    ExtractionOptions ex;
    ex.limit.tol = opts.tol_sequence;
    w.seq = extract_horosphere_subsequence(d, raw, probes, ex);
    return w;
}

InvarianceReport check_invariance(const SelfMapExpr& m, const HorosphereSpec& h, const std::vector<CPoint>& samples,
                                  std::size_t k_max, double tol) {
    const DomainSpec& d = h.domain;
    if (!(m.domain() == d)) throw Error("check_invariance: map and horosphere live on different domains");
    HorosphereSpec target = h;
    if (h.kind == HoroKind::Small) target.kind = HoroKind::Large;
    const double log_r = 0.5 * std::log(h.radius);

    struct PerSample {
        bool checked = false;
        std::size_t escaped = 0;
        double worst = -std::numeric_limits<double>::infinity();
        std::vector<InvarianceViolation> violations;
    };
    std::vector<PerSample> results(samples.size());
    parallel_for(samples.size(), [&](std::size_t i) {
        PerSample& r = results[i];
        const auto src = horosphere_functional(h, samples[i]);
        if (!src || !(*src - log_r < -tol)) return;
        r.checked = true;
        CPoint p = samples[i];
        for (std::size_t k = 1; k <= k_max; ++k) {
            p = m(p);
            if (!p.is_finite() || !(gauge(d, p) < 1.0)) {
                ++r.escaped;
                break;
            }
            const auto v = horosphere_functional(target, p);
            if (!v) continue;
            const double margin = *v - log_r;
            r.worst = std::max(r.worst, margin);
            if (!(margin < tol)) r.violations.push_back({i, k, margin});
        }
    });

    InvarianceReport rep;
    rep.samples = samples.size();
    for (auto& r : results) {
        rep.checked += r.checked ? 1 : 0;
        rep.escaped += r.escaped;
        rep.worst_margin = std::max(rep.worst_margin, r.worst);
        rep.violations.insert(rep.violations.end(), r.violations.begin(), r.violations.end());
    }
    return rep;
}

TargetReport target_set_estimate(const SelfMapExpr& m, const std::vector<CPoint>& starts,
                                 const BoundarySetDescr& predicted, TargetOptions opts) {
    if (starts.empty()) throw Error("target_set_estimate needs at least one start");
    if (opts.iterations == 0) throw Error("target_set_estimate needs a positive iteration budget");
    const DomainSpec& d = m.domain();
    TargetReport rep;
    rep.orbits.resize(starts.size());
    parallel_for(starts.size(), [&](std::size_t i) { rep.orbits[i] = iterate(m, starts[i], opts.iterations, opts.iterate); });

    struct Acc {
        CPoint seed, sum;
        std::vector<const CPoint*> members;
    };
    std::vector<Acc> acc;
    for (const auto& o : rep.orbits) {
        const std::size_t len = o.points.size();
        const auto tail = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(opts.tail_fraction * len)));
        for (std::size_t k = len - tail; k < len; ++k) {
            const CPoint& p = o.points[k];
            ++rep.tail_points;
            rep.max_distance = std::max(rep.max_distance, distance_to_descr(predicted, p));
            rep.max_boundary_gap = std::max(rep.max_boundary_gap, 1.0 - gauge(d, p));
            auto it = std::find_if(acc.begin(), acc.end(),
                                   [&](const Acc& a) { return distance(a.seed, p) <= opts.cluster_radius; });
            if (it == acc.end()) acc.push_back({p, p, {&p}});
            else {
                it->sum += p;
                it->members.push_back(&p);
            }
        }
    }
    for (const auto& a : acc) {
        Cluster c;
        c.members = a.members.size();
        c.representative = a.sum / static_cast<double>(c.members);
        // Twice the largest distance to the mean bounds the diameter from above.
        for (const CPoint* p : a.members) c.diameter = std::max(c.diameter, 2.0 * distance(*p, c.representative));
        rep.clusters.push_back(std::move(c));
    }
    return rep;
}

BoundarySetDescr predicted_superset(const DomainSpec& d, const WolffData& w) {
    d.require_dim(w.point);
    if (d.is_strictly_convex()) return descr::Point{normalize_boundary(d, w.point)};
    return sequence_hull_descr(d, w.point);
}

}  // namespace wolff
