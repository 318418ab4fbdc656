#include "wolffkit/horospheres.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wolffkit/metric.hpp"

namespace wolff {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double one_minus_abs2(Complex c) {
    const double r = std::abs(c);
    return (1.0 - r) * (1.0 + r);
}

/// |xi - z|^2 / (1 - |z|^2): the horocycle functional of one disk coordinate.
double horocycle_ratio(Complex z, Complex xi) { return std::norm(xi - z) / one_minus_abs2(z); }

/// 1/2 log(|1 - <z,x>|^2 / (1 - |z|^2)): pole-origin horosphere functional of the ball.
double ball_functional(const CPoint& z, const CPoint& x) {
    const double r = z.norm();
    return 0.5 * (std::log(std::norm(1.0 - inner(z, x))) - std::log((1.0 - r) * (1.0 + r)));
}

/// max (or min) over unimodular j of weight_j * ratio_j, as 1/2 log.
double product_functional(const CPoint& z, const CPoint& xi, const std::vector<std::size_t>& unimodular,
                          const std::vector<double>* weights, bool take_max) {
    double acc = take_max ? 0.0 : kInf;
    for (std::size_t j : unimodular) {
        double q = horocycle_ratio(z[j], xi[j]);
        if (weights) q *= (*weights)[j];
        acc = take_max ? std::max(acc, q) : std::min(acc, q);
    }
    return 0.5 * std::log(acc);
}

HoroMembership classify_margin(double value, double radius) {
    const double margin = value - 0.5 * std::log(radius);
    HoroState s = HoroState::OnHorosphere;
    if (margin < -kHoroTieBand) s = HoroState::Inside;
    else if (margin > kHoroTieBand) s = HoroState::Outside;
    return {s, margin};
}

bool is_origin(const CPoint& p) {
    return std::all_of(p.begin(), p.end(), [](const Complex& c) { return c == 0.0; });
}

double max_increment(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// Tracks the trailing run of increments below tol.
class CauchyTracker {
public:
    explicit CauchyTracker(LimitOptions opts) : opts_(opts) {}

    void push(double increment) {
        last_ = increment;
        run_ = increment <= opts_.tol ? run_ + 1 : 0;
    }
    bool converged() const { return run_ >= opts_.window; }
    double last_increment() const { return last_; }

private:
    LimitOptions opts_;
    std::size_t run_ = 0;
    double last_ = kInf;
};

}  // namespace

std::vector<double> default_radial_schedule() {
    std::vector<double> s;
    for (int e = 4; e <= 20; ++e) s.push_back(std::ldexp(1.0, e));
    return s;
}

std::vector<CPoint> default_probe_grid(const DomainSpec& d) {
    std::vector<CPoint> grid;
    const std::size_t n = d.dim();
    if (n == 1) {
        for (Complex c : {Complex(0, 0), Complex(0.3, 0), Complex(-0.3, 0), Complex(0, 0.3), Complex(0, -0.3),
                          Complex(0.2, 0.2), Complex(-0.2, 0.2), Complex(0.2, -0.2), Complex(-0.2, -0.2)})
            grid.push_back(CPoint{c});
        return grid;
    }
    for (double a : {-0.3, 0.0, 0.3}) {
        for (double b : {-0.3, 0.0, 0.3}) {
            CPoint p(n);
            p[0] = a;
            p[1] = b;
            grid.push_back(p);
        }
    }
    return grid;
}

CPoint radial_point(const CPoint& xi, double nu) {
    if (!(nu >= 1.0)) throw Error("radial sequence index must be >= 1");
    return xi * std::sqrt(1.0 - 1.0 / nu);
}

HoroFunctionalEstimate estimate_functional(const DomainSpec& d, const CPoint& z0, const HoroSeq& seq,
                                           const CPoint& z, LimitOptions opts) {
    require_interior(d, z0, "pole");
    require_interior(d, z, "z");
    HoroFunctionalEstimate est;
    CauchyTracker cauchy(opts);
    double prev = 0.0;
    for (const auto& term : seq.terms) {
        if (!(gauge(d, term.point) < 1.0)) break;
        const double v = kobayashi(d, z, term.point) - kobayashi(d, z0, term.point);
        if (est.terms_used > 0) cauchy.push(std::abs(v - prev));
        prev = v;
        ++est.terms_used;
        if (cauchy.converged()) break;
    }
    est.value = prev;
    est.converged = cauchy.converged();
    est.last_increment = cauchy.last_increment();
    return est;
}

AlphaEstimate alpha_weights(const HoroSeq& seq, const CPoint& xi, LimitOptions opts) {
    AlphaEstimate out;
    out.unimodular = unimodular_coordinates(xi);
    if (out.unimodular.empty()) throw DomainError("alpha weights need a center with a unimodular coordinate");
    const std::size_t n = xi.dim();
    out.alpha.assign(n, 1.0);
    CauchyTracker cauchy(opts);
    std::vector<double> prev;
    for (const auto& term : seq.terms) {
        if (term.point.dim() != n) throw DimensionMismatch(n, term.point.dim());
        std::vector<double> gaps(n);
        for (std::size_t h = 0; h < n; ++h) gaps[h] = one_minus_abs2(term.point[h]);
        if (std::any_of(gaps.begin(), gaps.end(), [](double g) { return !(g > 0.0); })) break;
        const double min_gap = *std::min_element(gaps.begin(), gaps.end());
        std::vector<double> ratios;
        for (std::size_t j : out.unimodular) ratios.push_back(min_gap / gaps[j]);
        if (!prev.empty()) cauchy.push(max_increment(ratios, prev));
        prev = std::move(ratios);
        if (cauchy.converged()) break;
    }
    for (std::size_t i = 0; i < prev.size(); ++i) out.alpha[out.unimodular[i]] = prev[i];
    out.converged = cauchy.converged();
    out.last_increment = cauchy.last_increment();
    return out;
}

HoroSeq make_radial_seq(const DomainSpec& d, const CPoint& xi, const std::vector<double>& schedule,
                        LimitOptions opts) {
    d.require_dim(xi);
    HoroSeq seq;
    seq.center = normalize_boundary(d, xi);
    for (double nu : schedule) seq.terms.push_back({nu, radial_point(seq.center, nu)});
    const CPoint origin = CPoint::origin(d.dim());
    bool all = true;
    for (const auto& probe : default_probe_grid(d))
        all = all && estimate_functional(d, origin, seq, probe, opts).converged;
    seq.probe_status = all ? ProbeStatus::Converged : ProbeStatus::NotConverged;
    if (d.is_product()) seq.alpha = alpha_weights(seq, seq.center, opts);
    return seq;
}

HoroSeq extract_horosphere_subsequence(const DomainSpec& d, const HoroSeq& raw, const std::vector<CPoint>& probes,
                                       ExtractionOptions opts) {
    if (raw.terms.empty()) throw Error("extraction needs a non-empty sequence");
    if (probes.empty()) throw Error("extraction needs at least one probe");
    const CPoint center = normalize_boundary(d, raw.center);
    if (distance(raw.terms.back().point, center) > opts.approach_tol)
        throw DomainError("raw sequence does not approach its boundary center");

    const CPoint origin = CPoint::origin(d.dim());
    std::vector<std::vector<double>> values;
    std::vector<std::size_t> usable;
    for (std::size_t i = 0; i < raw.terms.size(); ++i) {
        const CPoint& x = raw.terms[i].point;
        if (!(gauge(d, x) < 1.0)) break;
        std::vector<double> v;
        for (const auto& p : probes) v.push_back(kobayashi(d, p, x) - kobayashi(d, origin, x));
        values.push_back(std::move(v));
        usable.push_back(i);
    }
    if (usable.size() < 2) throw ConvergenceError("not enough interior terms to extract a subsequence");

    // kept indexes into `values`.
    std::vector<std::size_t> kept{0};
    double prev_inc = kInf;
    const double slack = opts.limit.tol * 1e-1;
    std::size_t i = 1;
    while (i < values.size()) {
        if (kept.size() == 1) {
            // Anchor step: the closest of the next few terms.
            std::size_t best = i;
            double best_inc = kInf;
            for (std::size_t k = i; k < std::min(values.size(), i + opts.lookahead); ++k) {
                const double inc = max_increment(values[k], values[kept.back()]);
                if (inc < best_inc) {
                    best_inc = inc;
                    best = k;
                }
            }
            kept.push_back(best);
            prev_inc = best_inc;
            i = best + 1;
            continue;
        }
        const double inc = max_increment(values[i], values[kept.back()]);
        if (inc <= prev_inc + slack) {
            kept.push_back(i);
            prev_inc = inc;
        }
        ++i;
    }

    CauchyTracker cauchy(opts.limit);
    for (std::size_t k = 1; k < kept.size(); ++k) cauchy.push(max_increment(values[kept[k]], values[kept[k - 1]]));
    if (!cauchy.converged())
        throw ConvergenceError("no subsequence with a Cauchy functional within budget (last increment " +
                               std::to_string(cauchy.last_increment()) + ")");

    HoroSeq out;
    out.center = center;
    for (std::size_t k : kept) out.terms.push_back(raw.terms[usable[k]]);
    out.probe_status = ProbeStatus::Converged;
    if (d.is_product()) out.alpha = alpha_weights(out, center, opts.limit);
    return out;
}

HorosphereSpec HorosphereSpec::make(const DomainSpec& d, const CPoint& pole, const CPoint& center, double radius,
                                    HoroKind kind, std::shared_ptr<const HoroSeq> seq) {
    require_interior(d, pole, "pole");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw Error("horosphere radius must be positive");
    if (kind == HoroKind::Sequence && !seq) throw Error("sequence horosphere needs a horosphere sequence");
    return HorosphereSpec{d, pole, normalize_boundary(d, center), radius, kind, std::move(seq)};
}

HorosphereSpec HorosphereSpec::with_radius(double r) const {
    return make(domain, pole, center, r, kind, seq);
}

HorosphereSpec HorosphereSpec::with_pole(const CPoint& p) const {
    return make(domain, p, center, radius, kind, seq);
}

std::optional<double> horosphere_functional(const HorosphereSpec& h, const CPoint& z) {
    const DomainSpec& d = h.domain;
    require_interior(d, z, "z");
    if (d.kind() == DomainKind::UnitBall) {
        // Strongly convex: small, large and sequence horospheres coincide.
        return ball_functional(z, h.center) - ball_functional(h.pole, h.center);
    }
    const auto unimodular = unimodular_coordinates(h.center);
    if (h.kind == HoroKind::Sequence) {
        if (h.seq->has_converged_alpha()) {
            const auto& a = h.seq->alpha->alpha;
            return product_functional(z, h.center, unimodular, &a, true) -
                   product_functional(h.pole, h.center, unimodular, &a, true);
        }
        const auto est = estimate_functional(d, h.pole, *h.seq, z);
        if (!est.converged) return std::nullopt;
        return est.value;
    }
    // Transport pole to the origin; unimodular coordinates of the center stay unimodular.
    CPoint zt = z, xt = h.center;
    if (!is_origin(h.pole)) {
        zt = mobius_translate(h.pole, z);
        xt = mobius_translate(h.pole, h.center);
        for (std::size_t j : unimodular) xt[j] /= std::abs(xt[j]);
    }
    return product_functional(zt, xt, unimodular, nullptr, h.kind == HoroKind::Small);
}

namespace {

HoroMembership membership(const HorosphereSpec& h, const CPoint& z) {
    const auto v = horosphere_functional(h, z);
    if (!v) return {HoroState::Indeterminate, std::numeric_limits<double>::quiet_NaN()};
    return classify_margin(*v, h.radius);
}

void require_kind(const HorosphereSpec& h, HoroKind k) {
    if (h.kind != k) throw Error("horosphere kind mismatch");
}

}  // namespace

HoroMembership small_contains(const HorosphereSpec& h, const CPoint& z) {
    require_kind(h, HoroKind::Small);
    return membership(h, z);
}

HoroMembership large_contains(const HorosphereSpec& h, const CPoint& z) {
    require_kind(h, HoroKind::Large);
    return membership(h, z);
}

HoroMembership sequence_contains(const HorosphereSpec& h, const CPoint& z) {
    require_kind(h, HoroKind::Sequence);
    return membership(h, z);
}

HoroMembership horosphere_contains(const HorosphereSpec& h, const CPoint& z) { return membership(h, z); }

BoundarySetDescr sequence_hull_descr(const DomainSpec& d, const CPoint& xi_in) {
    const CPoint xi = normalize_boundary(d, xi_in);
    if (d.is_strictly_convex()) return descr::Point{xi};
    descr::Union u;
    for (std::size_t j = 0; j < d.dim(); ++j) {
        if (std::abs(std::abs(xi[j]) - 1.0) <= kTolBoundary) u.parts.push_back(pinned_slab(d.dim(), j, xi[j]));
        else u.parts.push_back(circle_slab(d.dim(), j));
    }
    return u;
}

BoundarySetDescr boundary_intersection_descr(const HorosphereSpec& h, HullKind hull) {
    const DomainSpec& d = h.domain;
    if (d.is_strictly_convex()) return descr::Point{h.center};
    if (hull == HullKind::none)
        throw Error("the bare intersection with the polydisk boundary is not a product set; ask for ch or Ch");
    if (h.kind == HoroKind::Large) {
        const auto unimodular = unimodular_coordinates(h.center);
        if (unimodular.size() >= 2) return descr::FullBoundary{d};
        const std::size_t j0 = unimodular.front();
        descr::Union u;
        u.parts.push_back(pinned_slab(d.dim(), j0, h.center[j0]));
        for (std::size_t j = 0; j < d.dim(); ++j)
            if (j != j0) u.parts.push_back(circle_slab(d.dim(), j));
        return u;
    }
    // Small horospheres equal radial sequence horospheres in the polydisk.
    return sequence_hull_descr(d, h.center);
}

}  // namespace wolff
