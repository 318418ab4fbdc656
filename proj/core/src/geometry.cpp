#include "wolffkit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace wolff {

CPoint::CPoint(std::initializer_list<Complex> coords) : coords_(coords) {}

CPoint::CPoint(std::vector<Complex> coords) : coords_(std::move(coords)) {}

double CPoint::norm() const {
    double scale = 0.0;
    for (const auto& c : coords_) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return 0.0;
    double sum = 0.0;
    for (const auto& c : coords_) {
        const double r = std::abs(c) / scale;
        sum += r * r;
    }
    return scale * std::sqrt(sum);
}

bool CPoint::is_finite() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Complex& c) {
        return std::isfinite(c.real()) && std::isfinite(c.imag());
    });
}

CPoint& CPoint::operator+=(const CPoint& other) {
    if (other.dim() != dim()) throw DimensionMismatch(dim(), other.dim());
    for (std::size_t j = 0; j < coords_.size(); ++j) coords_[j] += other.coords_[j];
    return *this;
}

CPoint& CPoint::operator-=(const CPoint& other) {
    if (other.dim() != dim()) throw DimensionMismatch(dim(), other.dim());
    for (std::size_t j = 0; j < coords_.size(); ++j) coords_[j] -= other.coords_[j];
    return *this;
}

CPoint& CPoint::operator*=(Complex s) {
    for (auto& c : coords_) c *= s;
    return *this;
}

CPoint& CPoint::operator/=(Complex s) {
    for (auto& c : coords_) c /= s;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const CPoint& p) {
    os << '(';
    for (std::size_t j = 0; j < p.dim(); ++j) {
        if (j) os << ", ";
        const Complex c = p[j];
        os << c.real();
        if (c.imag() != 0.0) os << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << 'i';
    }
    return os << ')';
}

double distance(const CPoint& p, const CPoint& q) { return (p - q).norm(); }

Complex inner(const CPoint& a, const CPoint& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
    Complex s = 0.0;
    for (std::size_t j = 0; j < a.dim(); ++j) s += a[j] * std::conj(b[j]);
    return s;
}

DomainSpec::DomainSpec(DomainKind kind, std::size_t dim) : kind_(kind), dim_(dim) {
    if (dim == 0) throw Error("domain dimension must be positive");
    if (kind == DomainKind::UnitDisk && dim != 1) throw Error("the unit disk has dimension 1");
}

void DomainSpec::require_dim(const CPoint& p) const {
    if (p.dim() != dim_) throw DimensionMismatch(dim_, p.dim());
}

std::string to_string(DomainKind kind) {
    switch (kind) {
        case DomainKind::UnitDisk: return "disk";
        case DomainKind::Polydisk: return "polydisk";
        case DomainKind::UnitBall: return "ball";
    }
    return "?";
}

DomainKind domain_kind_from_string(const std::string& name) {
    if (name == "disk") return DomainKind::UnitDisk;
    if (name == "polydisk") return DomainKind::Polydisk;
    if (name == "ball") return DomainKind::UnitBall;
    throw Error("unknown domain kind '" + name + "'");
}

std::string to_string(const DomainSpec& d) {
    std::ostringstream os;
    os << to_string(d.kind()) << '/' << d.dim();
    return os.str();
}

double gauge(const DomainSpec& d, const CPoint& p) {
    d.require_dim(p);
    if (d.kind() == DomainKind::UnitBall) return p.norm();
    double m = 0.0;
    for (const auto& c : p) m = std::max(m, std::abs(c));
    return m;
}

MembershipClass classify(const DomainSpec& d, const CPoint& p, double tol_boundary) {
    if (!(tol_boundary > 0.0)) throw Error("tol_boundary must be positive");
    const double margin = gauge(d, p) - 1.0;
    Region r = Region::Boundary;
    if (margin < -tol_boundary) r = Region::Interior;
    else if (margin > tol_boundary) r = Region::Exterior;
    return {r, margin};
}

bool is_interior(const DomainSpec& d, const CPoint& p, double tol_boundary) {
    return p.is_finite() && classify(d, p, tol_boundary).region == Region::Interior;
}

void require_interior(const DomainSpec& d, const CPoint& p, const char* what) {
    d.require_dim(p);
    // Interior means gauge < 1 here; the tolerance band only matters for boundary input.
    if (!p.is_finite() || !(gauge(d, p) < 1.0)) {
        std::ostringstream os;
        os << what << ' ' << p << " is not in the open domain " << to_string(d);
        throw DomainError(os.str());
    }
}

CPoint normalize_boundary(const DomainSpec& d, const CPoint& p, double tol_boundary) {
    const auto m = classify(d, p, tol_boundary);
    if (m.region != Region::Boundary) {
        std::ostringstream os;
        os << "point " << p << " is not on the boundary of " << to_string(d)
           << " (gauge - 1 = " << m.margin << ')';
        throw DomainError(os.str());
    }
    CPoint q = p / (m.margin + 1.0);
    // Snap unimodular coordinates of product domains exactly onto the circle.
    if (d.is_product()) {
        for (auto& c : q) {
            const double r = std::abs(c);
            if (std::abs(r - 1.0) <= tol_boundary) c /= r;
        }
    }
    return q;
}

CPoint segment_point(const CPoint& x, const CPoint& y, double s) {
    if (x.dim() != y.dim()) throw DimensionMismatch(x.dim(), y.dim());
    if (!(s >= 0.0 && s <= 1.0)) throw Error("segment parameter outside [0,1]");
    CPoint out(x.dim());
    for (std::size_t j = 0; j < x.dim(); ++j) out[j] = s * x[j] + (1.0 - s) * y[j];
    return out;
}

std::vector<std::size_t> unimodular_coordinates(const CPoint& x, double tol_boundary) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < x.dim(); ++j)
        if (std::abs(std::abs(x[j]) - 1.0) <= tol_boundary) out.push_back(j);
    return out;
}

bool open_segment_in_boundary(const DomainSpec& d, const CPoint& x, const CPoint& y,
                              double tol_boundary) {
    d.require_dim(x);
    d.require_dim(y);
    if (classify(d, x, tol_boundary).region != Region::Boundary ||
        classify(d, y, tol_boundary).region != Region::Boundary)
        throw DomainError("open_segment_in_boundary needs two boundary points");
    if (distance(x, y) <= tol_boundary) throw DomainError("degenerate segment: x == y");
    if (d.kind() == DomainKind::UnitBall) return false;
    // Polydisk: a shared unimodular coordinate keeps the whole segment on the boundary.
    for (std::size_t j : unimodular_coordinates(x, tol_boundary))
        if (std::abs(x[j] - y[j]) <= tol_boundary) return true;
    return false;
}

}  // namespace wolff
