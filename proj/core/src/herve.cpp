#include "wolffkit/herve.hpp"

#include <algorithm>
#include <cmath>

#include "wolffkit/dynamics.hpp"
#include "wolffkit/parallel.hpp"
#include "wolffkit/random.hpp"

namespace wolff {

std::string to_string(SliceFix f) {
    switch (f) {
        case SliceFix::Empty: return "empty";
        case SliceFix::Interior: return "interior";
        case SliceFix::Undetermined: return "undetermined";
    }
    return "?";
}

namespace {

std::vector<double> schedule_or_default(const HerveOptions& opts) {
    return opts.schedule.empty() ? default_wolff_schedule() : opts.schedule;
}

bool is_coordinate_identity(const SelfMapExpr& F, std::size_t j, std::size_t samples) {
    Rng rng(derive_seed(0x4e7e, j));
    for (std::size_t i = 0; i < samples; ++i) {
        const CPoint z = rng.in_domain(F.domain(), 0.999);
        if (std::abs(F(z)[j] - z[j]) > 1e-12) return false;
    }
    return true;
}

/// All slices must share one state; Empty slices must share their Wolff point.
SliceFix aggregate(const std::vector<SliceVerdict>& slices, double agreement, const char* family,
                   std::optional<Complex>& wolff) {
    const SliceFix state = slices.front().fix;
    for (const auto& s : slices) {
        if (s.fix == SliceFix::Undetermined)
            throw ConvergenceError(std::string(family) + " slice is undetermined");
        if (s.fix != state) throw ConvergenceError(std::string(family) + " slices disagree across probes");
    }
    if (state == SliceFix::Empty) {
        for (const auto& s : slices)
            if (std::abs(s.limit - slices.front().limit) > agreement)
                throw ConvergenceError(std::string(family) + " slices have different Wolff points");
        wolff = slices.front().limit;
    }
    return state;
}

}  // namespace

SliceVerdict classify_slice(const SelfMapExpr& slice, Complex parameter, const HerveOptions& opts) {
    if (!(slice.domain() == DomainSpec::disk())) throw DomainError("slice maps live on the unit disk");
    SliceVerdict v;
    v.parameter = parameter;
    const auto schedule = schedule_or_default(opts);
    if (schedule.size() < 4) throw Error("slice classification needs at least four schedule entries");

    CPoint x{0.0};
    bool escaped = true;
    bool tested = false;
    for (double nu : schedule) {
        x = approx_fixed_point(slice, 1.0 / nu, x);
        v.trace.push_back(x[0]);
        if (nu >= opts.escape_from) {
            tested = true;
            escaped = escaped && std::abs(x[0]) > 1.0 - opts.escape_factor / nu;
        }
    }
    std::vector<Complex> extrapolated;
    for (std::size_t i = 1; i < schedule.size(); ++i) {
        const double r = schedule[i] / schedule[i - 1];
        extrapolated.push_back((r * v.trace[i] - v.trace[i - 1]) / (r - 1.0));
    }
    const std::size_t n = extrapolated.size();
    double tail = 0.0;
    for (std::size_t i = n - 3; i < n; ++i) tail = std::max(tail, std::abs(extrapolated[i] - extrapolated[i - 1]));
    const double last_nu = schedule.back();

    if (tested && escaped) {
        v.fix = SliceFix::Empty;
        v.limit = extrapolated.back() / std::abs(extrapolated.back());
    } else if (!escaped && tail <= opts.tol && std::abs(v.trace.back()) <= 1.0 - opts.escape_factor / last_nu) {
        v.fix = SliceFix::Interior;
        v.limit = extrapolated.back();
    }
    return v;
}

HerveResult herve_classify(const SelfMapExpr& F, const HerveOptions& opts) {
    if (!(F.domain() == DomainSpec::polydisk(2))) throw DomainError("the slice classification needs a map of the bidisk");
    const CPoint origin = CPoint::origin(2);
    const OrbitClass cls = classify_orbit(iterate(F, origin, opts.probe_iterations), F.domain());
    if (cls.verdict != OrbitVerdict::CompactlyDivergent)
        throw DomainError("slice classification needs a fixed-point-free map; origin orbit is " + to_string(cls.verdict));

    HerveResult r;
    r.f_is_identity = is_coordinate_identity(F, 0, opts.identity_samples);
    r.g_is_identity = is_coordinate_identity(F, 1, opts.identity_samples);

    const std::size_t np = opts.probes.size();
    if (np == 0) throw Error("slice classification needs at least one probe");
    r.f_slices.resize(np);
    r.g_slices.resize(np);
    parallel_for(2 * np, [&](std::size_t i) {
        const Complex c = opts.probes[i % np];
        if (i < np) r.f_slices[i] = classify_slice(F.slice(0, CPoint{0.0, c}), c, opts);
        else r.g_slices[i - np] = classify_slice(F.slice(1, CPoint{c, 0.0}), c, opts);
    });

    const double agreement = 100.0 * opts.tol;
    if (r.g_is_identity || r.f_is_identity) {
        r.herve_case = 0;
        r.swapped = !r.g_is_identity;
        const auto& family = r.swapped ? r.g_slices : r.f_slices;
        auto& wolff = r.swapped ? r.tau : r.sigma;
        if (aggregate(family, agreement, r.swapped ? "g_z" : "f_w", wolff) != SliceFix::Empty)
            throw ConvergenceError("identity coordinate but the other slices have fixed points");
        return r;
    }

    const SliceFix f = aggregate(r.f_slices, agreement, "f_w", r.sigma);
    const SliceFix g = aggregate(r.g_slices, agreement, "g_z", r.tau);
    if (f == SliceFix::Empty && g == SliceFix::Interior) {
        r.herve_case = 1;
    } else if (f == SliceFix::Interior && g == SliceFix::Empty) {
        r.herve_case = 1;
        r.swapped = true;
    } else if (f == SliceFix::Empty && g == SliceFix::Empty) {
        r.herve_case = 2;
    } else {
        r.herve_case = 3;
        // The iterates converge to a boundary point; read it off the origin orbit.
        const CPoint& p = *cls.estimate;
        r.sigma = p[0] / std::abs(p[0]);
        r.tau = p[1] / std::abs(p[1]);
    }
    return r;
}

BoundarySetDescr herve_predicted_descr(const HerveResult& r) {
    switch (r.herve_case) {
        case 0:
        case 1: return r.swapped ? pinned_slab(2, 1, *r.tau) : pinned_slab(2, 0, *r.sigma);
        case 2: return descr::Union{{pinned_slab(2, 0, *r.sigma), pinned_slab(2, 1, *r.tau)}};
        case 3: return descr::Point{CPoint{*r.sigma, *r.tau}};
        default: break;
    }
    throw Error("no prediction for an unclassified map");
}

}  // namespace wolff
