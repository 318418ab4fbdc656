#include "wolffkit/metric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace wolff {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// 1 - |c|^2 without cancellation near the circle.
double one_minus_abs2(Complex c) {
    const double r = std::abs(c);
    return (1.0 - r) * (1.0 + r);
}

double one_minus_norm2(const CPoint& p) {
    const double r = p.norm();
    return (1.0 - r) * (1.0 + r);
}

/// atanh(m) given m and 1 - m^2 computed independently.
double atanh_stable(double m, double one_minus_m2) {
    if (m < 0.5) return std::atanh(m);
    return std::log1p(m) - 0.5 * std::log(one_minus_m2);
}

void require_unit_disk(Complex c, const char* what) {
    if (!(std::abs(c) < 1.0) || !std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        std::ostringstream os;
        os << what << " = " << c << " is not in the open unit disk";
        throw DomainError(os.str());
    }
}

double ball_distance(const CPoint& z, const CPoint& w) {
    const double a = one_minus_norm2(z);
    const double b = one_minus_norm2(w);
    const double den = std::norm(1.0 - inner(z, w));
    // |1-<z,w>|^2 - (1-|z|^2)(1-|w|^2) = |z-w|^2 - sum_{i<j} |z_i w_j - z_j w_i|^2
    double lagrange = 0.0;
    for (std::size_t i = 0; i < z.dim(); ++i)
        for (std::size_t j = i + 1; j < z.dim(); ++j) lagrange += std::norm(z[i] * w[j] - z[j] * w[i]);
    const double dzw = distance(z, w);
    const double m2 = std::max(0.0, (dzw * dzw - lagrange) / den);
    const double m = std::min(1.0, std::sqrt(m2));
    return atanh_stable(m, a * b / den);
}

// Largest radius of a disc centred at c (in the lambda-plane) inside the slice
// {lambda : z + lambda (w - z) in D}.
class Slice {
public:
    Slice(const DomainSpec& d, const CPoint& z, const CPoint& w) {
        const CPoint dir = w - z;
        if (d.kind() == DomainKind::UnitBall) {
            const double dn2 = std::norm(dir.norm());
            const Complex beta = inner(z, dir) / dn2;
            discs_.push_back({-beta, std::sqrt(one_minus_norm2(z) / dn2 + std::norm(beta))});
        } else {
            for (std::size_t j = 0; j < z.dim(); ++j) {
                if (dir[j] == 0.0) continue;
                discs_.push_back({-z[j] / dir[j], 1.0 / std::abs(dir[j])});
            }
        }
    }

    double radius_at(Complex c) const {
        double r = kInf;
        for (const auto& disc : discs_) r = std::min(r, disc.radius - std::abs(c - disc.center));
        return r;
    }

    /// Smallest constraint disc: bounds the whole slice.
    std::pair<Complex, double> bounding_disc() const {
        auto it = std::min_element(discs_.begin(), discs_.end(),
                                   [](const Disc& a, const Disc& b) { return a.radius < b.radius; });
        return {it->center, it->radius};
    }

private:
    struct Disc {
        Complex center;
        double radius;
    };
    std::vector<Disc> discs_;
};

double golden_min(const std::function<double(double)>& f, double lo, double hi, std::size_t iters,
                  double& arg_out) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (std::size_t i = 0; i < iters; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if (fc < fd) {
        arg_out = c;
        return fc;
    }
    arg_out = d;
    return fd;
}

constexpr double kInfeasible = 1e6;

// Best single disc: centre c in the slice, radius the distance from c to the
// slice boundary. Returns +inf when no such disc contains both 0 and 1.
double single_disc_bound(const Slice& slice, std::size_t budget) {
    // A graded penalty outside feasibility steers the line searches back.
    auto objective = [&slice](Complex c) {
        const double r = slice.radius_at(c);
        const double need = std::max(std::abs(c), std::abs(1.0 - c));
        if (!(r > need)) return kInfeasible + (need - r);
        return poincare(-c / r, (1.0 - c) / r);
    };
    const auto [bc, br] = slice.bounding_disc();
    Complex best = 0.5;
    double best_val = objective(best);
    // The centre of the smallest constraint disc is optimal when the slice is round.
    if (const double v = objective(bc); v < best_val) {
        best = bc;
        best_val = v;
    }
    for (int round = 0; round < 4; ++round) {
        double arg = 0.0;
        const double v_re = golden_min([&](double x) { return objective({x, best.imag()}); },
                                       bc.real() - br, bc.real() + br, budget, arg);
        if (v_re < best_val) {
            best_val = v_re;
            best = {arg, best.imag()};
        }
        const double v_im = golden_min([&](double y) { return objective({best.real(), y}); },
                                       bc.imag() - br, bc.imag() + br, budget, arg);
        if (v_im < best_val) {
            best_val = v_im;
            best = {best.real(), arg};
        }
    }
    return best_val >= kInfeasible ? kInf : best_val;
}

// Chain of m equal steps along [0, 1], each measured in the largest disc
// centred at its midpoint. The triangle inequality makes the sum an upper bound.
double chain_bound(const Slice& slice, std::size_t m) {
    const double h = 1.0 / static_cast<double>(m);
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double a = h * static_cast<double>(i);
        const Complex c = a + 0.5 * h;
        const double r = slice.radius_at(c);
        if (!(r > 0.5 * h)) return kInf;
        total += poincare((a - c) / r, (a + h - c) / r);
    }
    return total;
}

double disc_upper_bound(const DomainSpec& d, const CPoint& z, const CPoint& w, std::size_t budget) {
    const Slice slice(d, z, w);
    double best = single_disc_bound(slice, budget);
    if (std::isfinite(best)) return best;
    // No single disc of the line holds both points (a thin polydisk slice):
    // fall back to chains, refining while the bound improves.
    for (std::size_t m = 2; m <= (std::size_t{1} << 16); m *= 2) {
        const double v = chain_bound(slice, m);
        if (std::isfinite(best) && !(v < best * (1.0 - 1e-3))) return std::min(best, v);
        best = std::min(best, v);
    }
    return best;
}

double functional_lower_bound(const DomainSpec& d, const CPoint& z, const CPoint& w, std::size_t directions) {
    const bool ball = d.kind() == DomainKind::UnitBall;
    auto dual_norm = [ball](const std::vector<Complex>& c) {
        double s = 0.0;
        for (const auto& v : c) s += ball ? std::norm(v) : std::abs(v);
        return ball ? std::sqrt(s) : s;
    };
    double best = 0.0;
    auto try_functional = [&](std::vector<Complex> c) {
        const double nrm = dual_norm(c);
        if (nrm == 0.0) return;
        Complex sz = 0.0, sw = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j) {
            sz += c[j] * z[j] / nrm;
            sw += c[j] * w[j] / nrm;
        }
        best = std::max(best, poincare(sz, sw));
    };
    const std::size_t n = d.dim();
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Complex> c(n, 0.0);
        c[j] = 1.0;
        try_functional(std::move(c));
    }
    {
        std::vector<Complex> chord(n);
        for (std::size_t j = 0; j < n; ++j) chord[j] = std::conj(w[j] - z[j]);
        try_functional(std::move(chord));
    }
    const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(directions))));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            for (std::size_t a = 0; a < side; ++a) {
                const double theta = (static_cast<double>(a) + 0.5) / static_cast<double>(side) * std::numbers::pi / 2.0;
                for (std::size_t b = 0; b < side; ++b) {
                    const double phi = static_cast<double>(b) / static_cast<double>(side) * 2.0 * std::numbers::pi;
                    std::vector<Complex> c(n, 0.0);
                    c[j] = std::cos(theta);
                    c[k] = std::polar(std::sin(theta), phi);
                    try_functional(std::move(c));
                }
            }
        }
    }
    return best;
}

}  // namespace

double pseudo_hyperbolic(Complex zeta, Complex eta) {
    require_unit_disk(zeta, "zeta");
    require_unit_disk(eta, "eta");
    return std::min(1.0, std::abs(eta - zeta) / std::abs(1.0 - std::conj(zeta) * eta));
}

double poincare(Complex zeta, Complex eta) {
    const double m = pseudo_hyperbolic(zeta, eta);
    const double den = std::norm(1.0 - std::conj(zeta) * eta);
    return atanh_stable(m, one_minus_abs2(zeta) * one_minus_abs2(eta) / den);
}

CPoint mobius_translate(const CPoint& z, const CPoint& w) {
    if (z.dim() != w.dim()) throw DimensionMismatch(z.dim(), w.dim());
    CPoint out(z.dim());
    for (std::size_t j = 0; j < z.dim(); ++j) {
        require_unit_disk(z[j], "translation centre coordinate");
        if (!(std::abs(w[j]) <= 1.0 + kTolBoundary)) throw DomainError("mobius_translate argument outside the closed polydisk");
        out[j] = (w[j] - z[j]) / (1.0 - std::conj(z[j]) * w[j]);
    }
    return out;
}

CPoint mobius_translate_inverse(const CPoint& z, const CPoint& u) {
    if (z.dim() != u.dim()) throw DimensionMismatch(z.dim(), u.dim());
    CPoint out(z.dim());
    for (std::size_t j = 0; j < z.dim(); ++j) {
        require_unit_disk(z[j], "translation centre coordinate");
        out[j] = (u[j] + z[j]) / (1.0 + std::conj(z[j]) * u[j]);
    }
    return out;
}

double kobayashi(const DomainSpec& d, const CPoint& z, const CPoint& w) {
    require_interior(d, z, "z");
    require_interior(d, w, "w");
    if (d.kind() == DomainKind::UnitBall) return ball_distance(z, w);
    double k = 0.0;
    for (std::size_t j = 0; j < d.dim(); ++j) k = std::max(k, poincare(z[j], w[j]));
    return k;
}

double kobayashi_or_inf(const DomainSpec& d, const CPoint& z, const CPoint& w) {
    d.require_dim(z);
    d.require_dim(w);
    if (!z.is_finite() || !w.is_finite() || !(gauge(d, z) < 1.0) || !(gauge(d, w) < 1.0)) return kInf;
    return kobayashi(d, z, w);
}

BoundsPair bounds(const DomainSpec& d, const CPoint& z, const CPoint& w, BoundsOptions opts) {
    require_interior(d, z, "z");
    require_interior(d, w, "w");
    if (opts.budget == 0) throw Error("bounds: budget must be at least 1");
    if (z == w) return {0.0, 0.0};
    return {functional_lower_bound(d, z, w, opts.directions), disc_upper_bound(d, z, w, opts.budget)};
}

bool kobayashi_ball_contains(const DomainSpec& d, const CPoint& center, double radius, const CPoint& z) {
    if (radius < 0.0) throw Error("Kobayashi ball radius must be nonnegative");
    return kobayashi(d, center, z) < radius;
}

ConvexityReport convexity_estimates_check(const DomainSpec& d, const std::vector<ConvexityTuple>& samples,
                                          double tol) {
    ConvexityReport rep;
    auto note = [&rep, tol](std::size_t i, int which, double excess) {
        rep.worst_excess = std::max(rep.worst_excess, excess);
        if (excess > tol) rep.violations.push_back({i, which, excess});
    };
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& t = samples[i];
        const double lhs1 = kobayashi(d, segment_point(t.z1, t.w1, t.s), segment_point(t.z2, t.w2, t.s));
        note(i, 1, lhs1 - std::max(kobayashi(d, t.z1, t.z2), kobayashi(d, t.w1, t.w2)));
        const double lhs2 = kobayashi(d, segment_point(t.z1, t.w1, t.s), segment_point(t.z1, t.w1, t.t));
        note(i, 2, lhs2 - kobayashi(d, t.z1, t.w1));
        ++rep.checked;
    }
    return rep;
}

}  // namespace wolff
