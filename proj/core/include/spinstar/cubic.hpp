#pragma once

#include <vector>

namespace spinstar {

/// Real roots of c3 x^3 + c2 x^2 + c1 x + c0, ascending, from the closed-form
/// trigonometric/Cardano solution. Degrades to the quadratic or linear
/// formula when leading coefficients vanish. Repeated roots appear once.
std::vector<double> real_cubic_roots(double c3, double c2, double c1, double c0);

}  // namespace spinstar
