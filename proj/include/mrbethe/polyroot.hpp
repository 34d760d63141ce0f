// polyroot.hpp — Roots of a complex-coefficient polynomial via eigenvalues of
// the companion matrix.

#pragma once

#include "mrbethe/types.hpp"

#include <vector>

namespace mrbethe {

// Coefficients ascending: p(x) = c0 + c1 x + ... + cn x^n. Leading zeros are
// trimmed at tolerance `lead_tol` relative to the largest coefficient.
std::vector<Complex> poly_roots(const Eigen::VectorXcd& coeffs, double lead_tol = 1e-12);

} // namespace mrbethe
