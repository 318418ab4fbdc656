#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "wolffkit/boundary_set.hpp"
#include "wolffkit/geometry.hpp"
#include "wolffkit/horospheres.hpp"
#include "wolffkit/selfmap.hpp"

namespace wolff {

/// k_D(pole, f^k(start)) beyond which an orbit counts as escaping.
inline constexpr double kEscapeThreshold = 20.0;
/// Step size k_D(f^k, f^{k+1}) below which an orbit counts as converged.
inline constexpr double kTolFix = 1e-10;

enum class OrbitStop {
    Budget,     ///< ran the full iteration budget
    Escaped,    ///< passed the escape threshold or reached the boundary in floating point
    Converged,  ///< successive step below tol_fix
};

struct Orbit {
    CPoint start;
    std::vector<CPoint> points;      ///< points[0] = start; all interior
    std::vector<double> k_from_pole; ///< k_D(pole, points[k])
    OrbitStop stop = OrbitStop::Budget;
};

struct IterateOptions {
    double escape_threshold = kEscapeThreshold;
    double tol_fix = kTolFix;
    std::optional<CPoint> pole;  ///< origin when unset
};

/// Iterates m from start for at most n steps (so at most n + 1 points).
/// The first image that is not strictly inside the domain ends the orbit as
/// Escaped without being recorded: double precision cannot represent points
/// at Kobayashi distance much beyond 18 from the origin, so the threshold of
/// 20 is usually reached in this form.
Orbit iterate(const SelfMapExpr& m, const CPoint& start, std::size_t n, IterateOptions opts = {});

enum class OrbitVerdict { InteriorConvergent, CompactlyDivergent, Undetermined };

struct OrbitClass {
    OrbitVerdict verdict = OrbitVerdict::Undetermined;
    /// Fixed point estimate (InteriorConvergent) or last orbit point (CompactlyDivergent).
    std::optional<CPoint> estimate;
};

OrbitClass classify_orbit(const Orbit& o, const DomainSpec& d);

std::string to_string(OrbitVerdict v);

struct FixedPointOptions {
    double tol_fix = kTolFix;
    std::size_t max_iterations = 5'000'000;
};

/// Fixed point of the damped map z -> (1 - s) m(z) by Picard iteration.
/// Throws ConvergenceError when the budget runs out.
CPoint approx_fixed_point(const SelfMapExpr& m, double s, const CPoint& z_init, FixedPointOptions opts = {});

/// nu = 2, 4, ..., 2^14.
std::vector<double> default_wolff_schedule();

struct WolffOptions {
    std::vector<double> schedule = default_wolff_schedule();
    double tol_wolff = 1e-6;
    /// Cauchy tolerance for the horosphere functional along the fixed points.
    /// Their distance to the boundary is of order 1/nu, which bounds how
    /// closely the functional can settle on this schedule.
    double tol_sequence = 1e-3;
    std::size_t probe_iterations = 10'000;
    FixedPointOptions fixed_point{};
};

struct WolffData {
    CPoint point;                      ///< Wolff point, on the boundary
    HoroSeq seq;                       ///< extracted horosphere sequence
    std::vector<SeqTerm> trace;        ///< damped fixed points x_nu
    std::vector<CPoint> extrapolated;  ///< 2 x_nu - x_{nu/2}
    double last_increment = 0.0;       ///< of the extrapolated sequence
};

/// Wolff point from the damped fixed points x_nu (s = 1/nu). x_nu approaches
/// the boundary at rate 1/nu, so the limit is read off the Richardson
/// extrapolation 2 x_nu - x_{nu/2}, which must be Cauchy within tol_wolff.
/// Throws DomainError when an origin orbit is not compactly divergent and
/// ConvergenceError when either limit fails to settle.
WolffData wolff_point(const SelfMapExpr& m, const std::vector<CPoint>& probes, WolffOptions opts = {});

struct InvarianceViolation {
    std::size_t sample;
    std::size_t iterate;
    double margin;
};

struct InvarianceReport {
    std::size_t samples = 0;
    std::size_t checked = 0;        ///< samples inside the source horosphere
    std::size_t escaped = 0;        ///< iterates that numerically reached the boundary
    double worst_margin = -std::numeric_limits<double>::infinity();
    std::vector<InvarianceViolation> violations;
};

/// For every sample inside h (margin < -tol) checks that the first k_max
/// iterates lie in the target horosphere (margin < tol): the large horosphere
/// with the same data when h is small, h itself otherwise.
InvarianceReport check_invariance(const SelfMapExpr& m, const HorosphereSpec& h, const std::vector<CPoint>& samples,
                                  std::size_t k_max, double tol = 1e-7);

struct Cluster {
    CPoint representative;  ///< mean of the members
    std::size_t members = 0;
    double diameter = 0.0;
};

struct TargetReport {
    std::vector<Cluster> clusters;
    std::size_t tail_points = 0;
    double max_distance = 0.0;       ///< over tail points, to the predicted descriptor
    double max_boundary_gap = 0.0;   ///< 1 - gauge over tail points
    std::vector<Orbit> orbits;
};

struct TargetOptions {
    std::size_t iterations = 10'000;
    double cluster_radius = 1e-3;
    double tail_fraction = 0.1;
    IterateOptions iterate{};
};

/// Tail points (last 10% of each orbit) clustered greedily at cluster_radius
/// and measured against `predicted`.
TargetReport target_set_estimate(const SelfMapExpr& m, const std::vector<CPoint>& starts,
                                 const BoundarySetDescr& predicted, TargetOptions opts = {});

/// Point(x) on strictly convex domains; union over j of the slabs with
/// coordinate j equal to x_j when |x_j| = 1, on the circle otherwise.
BoundarySetDescr predicted_superset(const DomainSpec& d, const WolffData& w);

}  // namespace wolff
