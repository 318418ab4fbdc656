#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wolffkit/boundary_set.hpp"
#include "wolffkit/selfmap.hpp"

namespace wolff {

/// Fixed-point structure of a one-variable slice map of the unit disk.
enum class SliceFix {
    Empty,         ///< damped fixed points escape to the circle
    Interior,      ///< damped fixed points converge inside the disk
    Undetermined,  ///< neither test is conclusive
};

std::string to_string(SliceFix f);

struct SliceVerdict {
    Complex parameter;  ///< w for f_w, z for g_z
    SliceFix fix = SliceFix::Undetermined;
    /// Limit of the damped fixed points: the fixed point (Interior) or the
    /// Wolff point on the circle (Empty).
    Complex limit{};
    std::vector<Complex> trace;
};

struct HerveOptions {
    std::vector<Complex> probes = {0.0, 0.3, -0.3, {0.0, 0.3}, {0.0, -0.3}, {0.2, 0.2}, {-0.5, 0.1}};
    std::vector<double> schedule;   ///< 2, 4, ..., 2^14 when empty
    double escape_from = 1024.0;    ///< escape test only uses nu >= this
    double escape_factor = 10.0;    ///< escaped when |x_nu| > 1 - escape_factor / nu
    double tol = 1e-6;              ///< Cauchy tolerance and Wolff-point agreement
    std::size_t identity_samples = 256;
    std::size_t probe_iterations = 10'000;
};

struct HerveResult {
    int herve_case = -1;  ///< 0..3
    /// The symmetric variant of cases 0 and 1 (roles of the coordinates swapped).
    bool swapped = false;
    std::optional<Complex> sigma;  ///< common Wolff point of the f_w
    std::optional<Complex> tau;    ///< common Wolff point of the g_z
    bool f_is_identity = false;    ///< f(z,w) == z
    bool g_is_identity = false;    ///< g(z,w) == w
    std::vector<SliceVerdict> f_slices;
    std::vector<SliceVerdict> g_slices;
};

/// One-variable decision for a self-map of the disk.
SliceVerdict classify_slice(const SelfMapExpr& slice, Complex parameter, const HerveOptions& opts = {});

/// Decides which of the four mutually exclusive regimes a fixed-point-free
/// self-map F = (f, g) of the bidisk belongs to, from the slices
/// f_w = f(., w) and g_z = g(z, .). Throws DomainError when F is not on the
/// bidisk or its origin orbit is not compactly divergent, and ConvergenceError
/// when slices are undetermined or disagree across probes.
HerveResult herve_classify(const SelfMapExpr& F, const HerveOptions& opts = {});

/// Boundary set that contains the target set: {sigma} x closed disk (case 1),
/// the union of both slabs (case 2), the point (sigma, tau) (case 3). Case 0
/// has a fiberwise limit (sigma, w) and is described by {sigma} x closed disk.
BoundarySetDescr herve_predicted_descr(const HerveResult& r);

}  // namespace wolff
