#pragma once

#include "opdyn/levelset.hpp"

namespace opdyn {

// Closed-form unit-level arcs of the catalog symbols, sampled as LevelArcs
// in arg-increasing orientation.

// |cos z| = 1: the graph y = asinh(sin x), 0 < x < pi.
LevelArc cos_level_one_arc(double x_lo, double x_hi, int n);

// |sin z| = 1: the graph y = asinh(cos x), -pi/2 < x < pi/2.
LevelArc sin_level_one_arc(double x_lo, double x_hi, int n);

// |z e^z| = 1: the graph y = sqrt(exp(-2x) - x^2) up to the real-axis
// crossing where exp(-x) = x.
LevelArc zexp_level_one_arc(double x_lo, double x_hi, int n);

// |e^z - a| = 1: the graph x = log(a cos y + sqrt(1 - a^2 sin^2 y)),
// parametrized by y in [y_lo, y_hi] within [0, pi/4].
LevelArc exp_minus_level_one_arc(double a, double y_lo, double y_hi, int n);

}  // namespace opdyn
