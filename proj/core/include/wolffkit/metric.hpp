#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "wolffkit/geometry.hpp"

namespace wolff {

/// Slack used by the numerical bounds oracle (it is an optimization, not a closed form).
inline constexpr double kTolBounds = 1e-6;

/// Poincare distance on the unit disk, 1/2 log((1+m)/(1-m)) with m the
/// pseudo-hyperbolic distance. Stable for m near 1.
double poincare(Complex zeta, Complex eta);

/// Pseudo-hyperbolic distance |(eta - zeta) / (1 - conj(zeta) eta)|.
double pseudo_hyperbolic(Complex zeta, Complex eta);

/// Componentwise disk automorphism gamma_z(w)_j = (w_j - z_j)/(1 - conj(z_j) w_j).
/// Accepts |w_j| = 1 (boundary transport); z must be interior.
CPoint mobius_translate(const CPoint& z, const CPoint& w);

/// Inverse of mobius_translate(z, .): w_j = (u_j + z_j)/(1 + conj(z_j) u_j).
CPoint mobius_translate_inverse(const CPoint& z, const CPoint& u);

/// Kobayashi distance of the domain. Polydisk: max of coordinate Poincare
/// distances. Ball: atanh of the pseudo-hyperbolic distance of the ball.
double kobayashi(const DomainSpec& d, const CPoint& z, const CPoint& w);

/// Same as kobayashi() but returns +inf instead of throwing when either point
/// has numerically reached the boundary. Used when tracking escaping orbits.
double kobayashi_or_inf(const DomainSpec& d, const CPoint& z, const CPoint& w);

struct BoundsPair {
    double lower;  ///< Caratheodory-type: max over linear functionals into the disk
    double upper;  ///< Lempert-type: discs inside the complex line through z, w (a chain of them when no single disc fits)
};

struct BoundsOptions {
    std::size_t budget = 64;      ///< golden-section iterations per search
    std::size_t directions = 256; ///< complex directions swept for the lower bound
};

/// Independent numerical bracket of the Kobayashi distance.
BoundsPair bounds(const DomainSpec& d, const CPoint& z, const CPoint& w, BoundsOptions opts = {});

/// True iff kobayashi(d, center, z) < radius.
bool kobayashi_ball_contains(const DomainSpec& d, const CPoint& center, double radius, const CPoint& z);

/// One sample for the convex-combination estimates:
///   k(s z1 + (1-s) w1, s z2 + (1-s) w2) <= max{k(z1,z2), k(w1,w2)}
///   k(s z + (1-s) w, t z + (1-t) w) <= k(z,w)   (z := z1, w := w1)
struct ConvexityTuple {
    CPoint z1, z2, w1, w2;
    double s = 0.0;
    double t = 0.0;
};

struct ConvexityViolation {
    std::size_t index;
    int inequality;  ///< 1 or 2
    double excess;   ///< lhs - rhs
};

struct ConvexityReport {
    std::size_t checked = 0;
    double worst_excess = -std::numeric_limits<double>::infinity();
    std::vector<ConvexityViolation> violations;
};

ConvexityReport convexity_estimates_check(const DomainSpec& d, const std::vector<ConvexityTuple>& samples,
                                          double tol = 1e-9);

}  // namespace wolff
