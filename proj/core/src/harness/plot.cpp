#include "wolffkit/harness/plot.hpp"

#include <cstdio>
#include <string>

namespace wolff::harness {
namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

void write_horosphere_grid(std::ostream& out, const HorosphereSpec& h, const RealSlice& slice) {
    const DomainSpec& d = h.domain;
    if (slice.axis_x >= d.dim() || slice.axis_y >= d.dim() || slice.axis_x == slice.axis_y)
        throw Error("plot slice needs two distinct coordinates of a domain of dimension >= 2");
    if (slice.resolution < 2 || !(slice.hi > slice.lo)) throw Error("plot slice needs a nondegenerate grid");
    CPoint base = slice.base.empty() ? CPoint::origin(d.dim()) : slice.base;
    d.require_dim(base);

    out << "x,y,margin\n";
    const double step = (slice.hi - slice.lo) / static_cast<double>(slice.resolution - 1);
    for (std::size_t i = 0; i < slice.resolution; ++i) {
        const double x = slice.lo + step * static_cast<double>(i);
        for (std::size_t j = 0; j < slice.resolution; ++j) {
            const double y = slice.lo + step * static_cast<double>(j);
            CPoint p = base;
            p[slice.axis_x] = x;
            p[slice.axis_y] = y;
            out << num(x) << ',' << num(y) << ',';
            if (gauge(d, p) < 1.0) out << num(horosphere_contains(h, p).margin);
            else out << "nan";
            out << '\n';
        }
    }
}

void write_orbit_trace(std::ostream& out, const Orbit& o, const DomainSpec& d) {
    out << 'k';
    for (std::size_t j = 0; j < d.dim(); ++j) out << ",re_z" << j + 1;
    out << ",k_from_pole\n";
    for (std::size_t k = 0; k < o.points.size(); ++k) {
        d.require_dim(o.points[k]);
        out << k;
        for (const auto& c : o.points[k]) out << ',' << num(c.real());
        out << ',' << num(o.k_from_pole[k]) << '\n';
    }
}

}  // namespace wolff::harness
