#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wolffkit/errors.hpp"

namespace wolff {

using Complex = std::complex<double>;

/// Membership classification tolerance on gauge(p) - 1.
inline constexpr double kTolBoundary = 1e-9;

/// A point of C^n. Coordinates are always finite.
class CPoint {
public:
    CPoint() = default;
    explicit CPoint(std::size_t n) : coords_(n) {}
    CPoint(std::initializer_list<Complex> coords);
    explicit CPoint(std::vector<Complex> coords);

    static CPoint origin(std::size_t n) { return CPoint(n); }

    std::size_t dim() const noexcept { return coords_.size(); }
    bool empty() const noexcept { return coords_.empty(); }

    Complex& operator[](std::size_t j) { return coords_[j]; }
    const Complex& operator[](std::size_t j) const { return coords_[j]; }

    auto begin() noexcept { return coords_.begin(); }
    auto end() noexcept { return coords_.end(); }
    auto begin() const noexcept { return coords_.begin(); }
    auto end() const noexcept { return coords_.end(); }

    std::span<const Complex> coords() const noexcept { return coords_; }

    /// Euclidean norm in C^n = R^{2n}.
    double norm() const;
    bool is_finite() const;

    CPoint& operator+=(const CPoint& other);
    CPoint& operator-=(const CPoint& other);
    CPoint& operator*=(Complex s);
    CPoint& operator/=(Complex s);

    friend CPoint operator+(CPoint a, const CPoint& b) { return a += b; }
    friend CPoint operator-(CPoint a, const CPoint& b) { return a -= b; }
    friend CPoint operator*(Complex s, CPoint a) { return a *= s; }
    friend CPoint operator*(CPoint a, Complex s) { return a *= s; }
    friend CPoint operator/(CPoint a, Complex s) { return a /= s; }
    friend bool operator==(const CPoint&, const CPoint&) = default;

private:
    std::vector<Complex> coords_;
};

std::ostream& operator<<(std::ostream& os, const CPoint& p);

/// Euclidean distance |p - q|.
double distance(const CPoint& p, const CPoint& q);

/// Hermitian product sum_j a_j conj(b_j).
Complex inner(const CPoint& a, const CPoint& b);

enum class DomainKind { UnitDisk, Polydisk, UnitBall };

/// The ambient bounded convex domain: the unit ball of a norm on C^n.
class DomainSpec {
public:
    DomainSpec(DomainKind kind, std::size_t dim);

    static DomainSpec disk() { return {DomainKind::UnitDisk, 1}; }
    static DomainSpec polydisk(std::size_t n) { return {DomainKind::Polydisk, n}; }
    static DomainSpec ball(std::size_t n) { return {DomainKind::UnitBall, n}; }

    DomainKind kind() const noexcept { return kind_; }
    std::size_t dim() const noexcept { return dim_; }

    /// Disk and polydisk share every closed form (max-norm unit ball).
    bool is_product() const noexcept { return kind_ != DomainKind::UnitBall; }
    /// Strictly convex: every boundary point is a strictly convex point.
    bool is_strictly_convex() const noexcept {
        return kind_ == DomainKind::UnitBall || dim_ == 1;
    }

    void require_dim(const CPoint& p) const;

    friend bool operator==(const DomainSpec&, const DomainSpec&) = default;

private:
    DomainKind kind_;
    std::size_t dim_;
};

std::string to_string(DomainKind kind);
DomainKind domain_kind_from_string(const std::string& name);
std::string to_string(const DomainSpec& d);

/// Minkowski functional of the domain: max |z_j| (disk/polydisk) or |z| (ball).
double gauge(const DomainSpec& d, const CPoint& p);

enum class Region { Interior, Boundary, Exterior };

struct MembershipClass {
    Region region;
    double margin;  ///< gauge(p) - 1
};

MembershipClass classify(const DomainSpec& d, const CPoint& p, double tol_boundary = kTolBoundary);

bool is_interior(const DomainSpec& d, const CPoint& p, double tol_boundary = kTolBoundary);

/// Throws DomainError unless p is Interior.
void require_interior(const DomainSpec& d, const CPoint& p, const char* what = "point");

/// Returns p / gauge(p) when p classifies Boundary; throws DomainError otherwise.
CPoint normalize_boundary(const DomainSpec& d, const CPoint& p, double tol_boundary = kTolBoundary);

/// s*x + (1-s)*y for s in [0,1].
CPoint segment_point(const CPoint& x, const CPoint& y, double s);

/// True iff the open segment (x,y) between two distinct boundary points lies in the boundary.
bool open_segment_in_boundary(const DomainSpec& d, const CPoint& x, const CPoint& y,
                              double tol_boundary = kTolBoundary);

/// Indices j with |x_j| = 1 (within tol). For a polydisk boundary point this is never empty.
std::vector<std::size_t> unimodular_coordinates(const CPoint& x, double tol_boundary = kTolBoundary);

}  // namespace wolff
