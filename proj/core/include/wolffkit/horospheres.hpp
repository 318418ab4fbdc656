#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "wolffkit/boundary_set.hpp"
#include "wolffkit/geometry.hpp"

namespace wolff {

/// Tie band around a horosphere: |margin| <= this is reported as OnHorosphere.
inline constexpr double kHoroTieBand = 1e-9;

/// Cauchy test used for every limit along a boundary-approaching sequence.
struct LimitOptions {
    double tol = 1e-6;        ///< successive values must differ by at most this
    std::size_t window = 3;   ///< ... for this many consecutive increments
};

/// One term x_nu of a boundary-approaching sequence.
struct SeqTerm {
    double nu;
    CPoint point;
};

struct AlphaEstimate {
    /// Per-coordinate weight; only entries of unimodular coordinates of the
    /// center are meaningful (others hold 1 and are ignored).
    std::vector<double> alpha;
    std::vector<std::size_t> unimodular;
    bool converged = false;
    double last_increment = 0.0;
};

enum class ProbeStatus { Unvalidated, Converged, NotConverged };

/// Sampled boundary-approaching sequence {x_nu} together with its cached
/// weights. Treated as immutable once built by one of the factories below.
struct HoroSeq {
    CPoint center;
    std::vector<SeqTerm> terms;
    std::optional<AlphaEstimate> alpha;
    ProbeStatus probe_status = ProbeStatus::Unvalidated;

    bool has_converged_alpha() const { return alpha && alpha->converged; }
};

struct HoroFunctionalEstimate {
    double value = 0.0;
    bool converged = false;
    double last_increment = 0.0;
    std::size_t terms_used = 0;
};

/// nu = 2^4, ..., 2^20.
std::vector<double> default_radial_schedule();

/// Default probe grid (9 points) for horosphere-sequence validation.
std::vector<CPoint> default_probe_grid(const DomainSpec& d);

/// (1 - 1/nu)^{1/2} * xi.
CPoint radial_point(const CPoint& xi, double nu);

/// Radial sequence toward a boundary point, validated on the probe grid.
HoroSeq make_radial_seq(const DomainSpec& d, const CPoint& xi,
                        const std::vector<double>& schedule = default_radial_schedule(),
                        LimitOptions opts = {});

/// lim_nu [k(z, x_nu) - k(z0, x_nu)] estimated along the sampled terms.
HoroFunctionalEstimate estimate_functional(const DomainSpec& d, const CPoint& z0, const HoroSeq& seq,
                                           const CPoint& z, LimitOptions opts = {});

/// alpha_j = lim min_h (1 - |x_{nu,h}|^2) / (1 - |x_{nu,j}|^2) for |xi_j| = 1.
AlphaEstimate alpha_weights(const HoroSeq& seq, const CPoint& xi, LimitOptions opts = {});

struct ExtractionOptions {
    LimitOptions limit{};
    std::size_t lookahead = 3;
    double approach_tol = 1e-2;  ///< last raw term must be this close to the center
};

/// Greedy diagonal extraction of a subsequence along which the functional is
/// Cauchy on every probe simultaneously. Throws ConvergenceError on failure.
HoroSeq extract_horosphere_subsequence(const DomainSpec& d, const HoroSeq& raw, const std::vector<CPoint>& probes,
                                       ExtractionOptions opts = {});

enum class HoroKind { Small, Large, Sequence };

struct HorosphereSpec {
    DomainSpec domain;
    CPoint pole;
    CPoint center;
    double radius;
    HoroKind kind;
    std::shared_ptr<const HoroSeq> seq;  ///< required for HoroKind::Sequence

    /// Validates pole (interior), center (boundary, renormalized) and radius.
    static HorosphereSpec make(const DomainSpec& d, const CPoint& pole, const CPoint& center, double radius,
                               HoroKind kind, std::shared_ptr<const HoroSeq> seq = nullptr);

    HorosphereSpec with_radius(double r) const;
    HorosphereSpec with_pole(const CPoint& p) const;
};

enum class HoroState { Inside, Outside, OnHorosphere, Indeterminate };

struct HoroMembership {
    HoroState state;
    double margin;  ///< functional - (1/2) log R; negative inside

    bool contained() const { return state == HoroState::Inside; }
};

/// Value of the defining functional of the horosphere at z (its margin at R = 1).
/// Returns nullopt when a sequence functional did not converge.
std::optional<double> horosphere_functional(const HorosphereSpec& h, const CPoint& z);

HoroMembership small_contains(const HorosphereSpec& h, const CPoint& z);
HoroMembership large_contains(const HorosphereSpec& h, const CPoint& z);
HoroMembership sequence_contains(const HorosphereSpec& h, const CPoint& z);
/// Dispatches on h.kind.
HoroMembership horosphere_contains(const HorosphereSpec& h, const CPoint& z);

enum class HullKind { ch, Ch, none };

/// ch / Ch of (closure of the horosphere) intersected with the boundary.
BoundarySetDescr boundary_intersection_descr(const HorosphereSpec& h, HullKind hull);

/// Union over j of closed-polydisk slabs whose j-th coordinate is xi_j when
/// |xi_j| = 1 and ranges over the circle otherwise; Point(xi) when strictly convex.
BoundarySetDescr sequence_hull_descr(const DomainSpec& d, const CPoint& xi);

}  // namespace wolff
