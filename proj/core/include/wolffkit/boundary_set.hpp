#pragma once

#include <cstddef>
#include <iosfwd>
#include <variant>
#include <vector>

#include "wolffkit/geometry.hpp"

namespace wolff {

class Rng;
class BoundarySetDescr;

namespace descr {

struct Point {
    CPoint x;
};

/// Product set: coordinate j of each pin is fixed to `value`; coordinates listed
/// in `circles` range over the unit circle; every other coordinate ranges over
/// the closed unit disk.
struct PinnedCoords {
    struct Pin {
        std::size_t index;
        Complex value;
    };
    std::size_t dim = 0;
    std::vector<Pin> pins;
    std::vector<std::size_t> circles;
};

struct Union {
    std::vector<BoundarySetDescr> parts;
};

struct Intersection {
    std::vector<BoundarySetDescr> parts;
};

/// The whole boundary of the given domain.
struct FullBoundary {
    DomainSpec domain;
};

}  // namespace descr

/// Symbolic description of a closed subset of the boundary of a domain.
/// Distances are exact: products decompose coordinatewise, unions take the
/// minimum, intersections are reduced to products before measuring.
class BoundarySetDescr {
public:
    using Variant = std::variant<descr::Point, descr::PinnedCoords, descr::Union,
                                 descr::Intersection, descr::FullBoundary>;

    BoundarySetDescr(descr::Point v) : v_(std::move(v)) {}
    BoundarySetDescr(descr::PinnedCoords v) : v_(std::move(v)) {}
    BoundarySetDescr(descr::Union v) : v_(std::move(v)) {}
    BoundarySetDescr(descr::Intersection v) : v_(std::move(v)) {}
    BoundarySetDescr(descr::FullBoundary v) : v_(std::move(v)) {}

    const Variant& variant() const noexcept { return v_; }

    template <class T>
    bool is() const noexcept { return std::holds_alternative<T>(v_); }
    template <class T>
    const T& as() const { return std::get<T>(v_); }

private:
    Variant v_;
};

std::ostream& operator<<(std::ostream& os, const BoundarySetDescr& s);

/// {eta : eta_j = value, other coordinates in the closed disk}.
BoundarySetDescr pinned_slab(std::size_t dim, std::size_t j, Complex value);
/// {eta : |eta_j| = 1, other coordinates in the closed disk}.
BoundarySetDescr circle_slab(std::size_t dim, std::size_t j);

/// ch(x): boundary points y with [x,y] contained in the boundary.
BoundarySetDescr ch_set(const DomainSpec& d, const CPoint& x, double tol_boundary = kTolBoundary);
/// Ch(x): closed domain intersected with every complex supporting hyperplane at x.
BoundarySetDescr Ch_set(const DomainSpec& d, const CPoint& x, double tol_boundary = kTolBoundary);

/// Euclidean distance from p to the closure of the described set (+inf if empty).
double distance_to_descr(const BoundarySetDescr& s, const CPoint& p);

/// Draws a member of the set; used by sampling-based containment checks.
CPoint sample_member(const BoundarySetDescr& s, Rng& rng);

}  // namespace wolff
