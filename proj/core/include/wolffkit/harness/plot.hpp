#pragma once

#include <cstddef>
#include <ostream>

#include "wolffkit/dynamics.hpp"
#include "wolffkit/horospheres.hpp"

namespace wolff::harness {

/// Real 2-D slice: Re z_{axis_x} x Re z_{axis_y} over [lo, hi]^2, other
/// coordinates taken from `base` (origin when empty).
struct RealSlice {
    std::size_t axis_x = 0;
    std::size_t axis_y = 1;
    CPoint base;
    double lo = -1.0;
    double hi = 1.0;
    std::size_t resolution = 201;
};

/// CSV with header "x,y,margin"; margin is "nan" outside the domain.
void write_horosphere_grid(std::ostream& out, const HorosphereSpec& h, const RealSlice& slice);

/// CSV with header "k,re_z1,...,re_zn,k_from_pole"; header only for an empty orbit.
void write_orbit_trace(std::ostream& out, const Orbit& o, const DomainSpec& d);

}  // namespace wolff::harness
