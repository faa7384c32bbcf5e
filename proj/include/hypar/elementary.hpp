#pragma once

#include <utility>

#include <gmpxx.h>

#include "hypar/interval.hpp"

namespace hypar::ival {

/// Enclosure of pi at `digits`, cached per thread and precision.
const Interval& pi(int digits);

/// (sin, cos) of an exact angle given in degrees. Any rational angle is
/// accepted; multiples of 90 degrees come back as exact point intervals.
std::pair<Interval, Interval> sincos_deg(const mpq_class& theta_deg, int digits);

/// Enclosure (in degrees, within [0, 180]) of acos(x) for every x in c
/// clipped to [-1, 1]. Endpoints are double guesses widened until a
/// certified cosine evaluation at `digits` confirms them.
Interval acos_deg(const Interval& c, int digits);

}  // namespace hypar::ival
