#include "wolffkit/boundary_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>

#include "wolffkit/random.hpp"

namespace wolff {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCellTol = 1e-9;

// Normal form: every descriptor is a finite union of cells.
struct Coord {
    enum class Kind { Fixed, Circle, Disk } kind = Kind::Disk;
    Complex value{};
};

struct ProductCell {
    std::vector<Coord> coords;
};

struct SphereCell {
    std::size_t dim;
};

using Cell = std::variant<ProductCell, SphereCell>;

std::optional<Coord> intersect(const Coord& a, const Coord& b) {
    using K = Coord::Kind;
    if (a.kind == K::Fixed && b.kind == K::Fixed)
        return std::abs(a.value - b.value) <= kCellTol ? std::optional(a) : std::nullopt;
    if (a.kind == K::Fixed || b.kind == K::Fixed) {
        const Coord& f = a.kind == K::Fixed ? a : b;
        const Coord& o = a.kind == K::Fixed ? b : a;
        const double r = std::abs(f.value);
        const bool ok = o.kind == K::Circle ? std::abs(r - 1.0) <= kCellTol : r <= 1.0 + kCellTol;
        return ok ? std::optional(f) : std::nullopt;
    }
    if (a.kind == K::Circle || b.kind == K::Circle) return Coord{K::Circle, {}};
    return Coord{K::Disk, {}};
}

std::optional<Cell> intersect(const Cell& a, const Cell& b) {
    if (const auto* pa = std::get_if<ProductCell>(&a)) {
        if (const auto* pb = std::get_if<ProductCell>(&b)) {
            if (pa->coords.size() != pb->coords.size())
                throw DimensionMismatch(pa->coords.size(), pb->coords.size());
            ProductCell out;
            for (std::size_t j = 0; j < pa->coords.size(); ++j) {
                auto c = intersect(pa->coords[j], pb->coords[j]);
                if (!c) return std::nullopt;
                out.coords.push_back(*c);
            }
            return out;
        }
    }
    // Sphere intersected with a single point is the only non-product case needed.
    auto as_point = [](const Cell& c) -> std::optional<CPoint> {
        const auto* p = std::get_if<ProductCell>(&c);
        if (!p) return std::nullopt;
        CPoint x(p->coords.size());
        for (std::size_t j = 0; j < p->coords.size(); ++j) {
            if (p->coords[j].kind != Coord::Kind::Fixed) return std::nullopt;
            x[j] = p->coords[j].value;
        }
        return x;
    };
    if (std::holds_alternative<SphereCell>(a) && std::holds_alternative<SphereCell>(b)) return a;
    const Cell& other = std::holds_alternative<SphereCell>(a) ? b : a;
    if (auto x = as_point(other)) {
        if (std::abs(x->norm() - 1.0) <= kCellTol) return other;
        return std::nullopt;
    }
    throw Error("intersection of a sphere with a non-point set is not supported");
}

std::vector<Cell> cells(const BoundarySetDescr& s);

ProductCell point_cell(const CPoint& x) {
    ProductCell c;
    for (const auto& v : x) c.coords.push_back({Coord::Kind::Fixed, v});
    return c;
}

std::vector<Cell> cells(const BoundarySetDescr& s) {
    return std::visit(
        [](const auto& v) -> std::vector<Cell> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, descr::Point>) {
                return {point_cell(v.x)};
            } else if constexpr (std::is_same_v<T, descr::PinnedCoords>) {
                ProductCell c;
                c.coords.assign(v.dim, Coord{});
                for (std::size_t j : v.circles) c.coords.at(j) = {Coord::Kind::Circle, {}};
                for (const auto& pin : v.pins) c.coords.at(pin.index) = {Coord::Kind::Fixed, pin.value};
                return {c};
            } else if constexpr (std::is_same_v<T, descr::Union>) {
                std::vector<Cell> out;
                for (const auto& part : v.parts) {
                    auto cs = cells(part);
                    out.insert(out.end(), cs.begin(), cs.end());
                }
                return out;
            } else if constexpr (std::is_same_v<T, descr::Intersection>) {
                if (v.parts.empty()) throw Error("empty intersection descriptor");
                std::vector<Cell> acc = cells(v.parts.front());
                for (std::size_t i = 1; i < v.parts.size(); ++i) {
                    std::vector<Cell> next;
                    for (const auto& a : acc)
                        for (const auto& b : cells(v.parts[i]))
                            if (auto c = intersect(a, b)) next.push_back(*c);
                    acc = std::move(next);
                }
                return acc;
            } else {
                const DomainSpec& d = v.domain;
                if (d.kind() == DomainKind::UnitBall) return {SphereCell{d.dim()}};
                std::vector<Cell> out;
                for (std::size_t j = 0; j < d.dim(); ++j) {
                    ProductCell c;
                    c.coords.assign(d.dim(), Coord{});
                    c.coords[j] = {Coord::Kind::Circle, {}};
                    out.push_back(c);
                }
                return out;
            }
        },
        s.variant());
}

double cell_distance(const Cell& cell, const CPoint& p) {
    if (const auto* sphere = std::get_if<SphereCell>(&cell)) {
        if (sphere->dim != p.dim()) throw DimensionMismatch(sphere->dim, p.dim());
        return std::abs(p.norm() - 1.0);
    }
    const auto& pc = std::get<ProductCell>(cell);
    if (pc.coords.size() != p.dim()) throw DimensionMismatch(pc.coords.size(), p.dim());
    double sum = 0.0;
    for (std::size_t j = 0; j < p.dim(); ++j) {
        const Coord& c = pc.coords[j];
        double dj = 0.0;
        switch (c.kind) {
            case Coord::Kind::Fixed: dj = std::abs(p[j] - c.value); break;
            case Coord::Kind::Circle: dj = std::abs(std::abs(p[j]) - 1.0); break;
            case Coord::Kind::Disk: dj = std::max(0.0, std::abs(p[j]) - 1.0); break;
        }
        sum += dj * dj;
    }
    return std::sqrt(sum);
}

void print(std::ostream& os, const BoundarySetDescr& s) {
    std::visit(
        [&os](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, descr::Point>) {
                os << "Point" << v.x;
            } else if constexpr (std::is_same_v<T, descr::PinnedCoords>) {
                os << "Pinned[";
                for (std::size_t j = 0; j < v.dim; ++j) {
                    if (j) os << " x ";
                    auto pin = std::find_if(v.pins.begin(), v.pins.end(),
                                            [j](const auto& p) { return p.index == j; });
                    if (pin != v.pins.end()) os << '{' << CPoint{pin->value} << '}';
                    else if (std::find(v.circles.begin(), v.circles.end(), j) != v.circles.end()) os << "circle";
                    else os << "disk";
                }
                os << ']';
            } else if constexpr (std::is_same_v<T, descr::FullBoundary>) {
                os << "Boundary(" << to_string(v.domain) << ')';
            } else {
                os << (std::is_same_v<T, descr::Union> ? "Union(" : "Intersection(");
                for (std::size_t i = 0; i < v.parts.size(); ++i) {
                    if (i) os << ", ";
                    print(os, v.parts[i]);
                }
                os << ')';
            }
        },
        s.variant());
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const BoundarySetDescr& s) {
    print(os, s);
    return os;
}

BoundarySetDescr pinned_slab(std::size_t dim, std::size_t j, Complex value) {
    return descr::PinnedCoords{dim, {{j, value}}, {}};
}

BoundarySetDescr circle_slab(std::size_t dim, std::size_t j) {
    return descr::PinnedCoords{dim, {}, {j}};
}

BoundarySetDescr ch_set(const DomainSpec& d, const CPoint& x, double tol_boundary) {
    const CPoint xi = normalize_boundary(d, x, tol_boundary);
    if (d.is_strictly_convex()) return descr::Point{xi};
    descr::Union u;
    for (std::size_t j : unimodular_coordinates(xi, tol_boundary)) u.parts.push_back(pinned_slab(d.dim(), j, xi[j]));
    return u;
}

BoundarySetDescr Ch_set(const DomainSpec& d, const CPoint& x, double tol_boundary) {
    const CPoint xi = normalize_boundary(d, x, tol_boundary);
    if (d.is_strictly_convex()) return descr::Point{xi};
    const auto unimodular = unimodular_coordinates(xi, tol_boundary);
    if (unimodular.size() == d.dim()) return descr::Point{xi};
    descr::PinnedCoords pc{d.dim(), {}, {}};
    for (std::size_t j : unimodular) pc.pins.push_back({j, xi[j]});
    return pc;
}

double distance_to_descr(const BoundarySetDescr& s, const CPoint& p) {
    double best = kInf;
    for (const auto& c : cells(s)) best = std::min(best, cell_distance(c, p));
    return best;
}

CPoint sample_member(const BoundarySetDescr& s, Rng& rng) {
    const auto cs = cells(s);
    if (cs.empty()) throw Error("cannot sample from an empty set");
    const Cell& c = cs[rng.index(cs.size())];
    if (const auto* sphere = std::get_if<SphereCell>(&c))
        return rng.on_boundary(DomainSpec::ball(sphere->dim));
    const auto& pc = std::get<ProductCell>(c);
    CPoint out(pc.coords.size());
    for (std::size_t j = 0; j < out.dim(); ++j) {
        switch (pc.coords[j].kind) {
            case Coord::Kind::Fixed: out[j] = pc.coords[j].value; break;
            case Coord::Kind::Circle: out[j] = rng.on_circle(); break;
            case Coord::Kind::Disk: out[j] = rng.in_disk(); break;
        }
    }
    return out;
}

}  // namespace wolff
