#include "mrbethe/polyroot.hpp"

#include <Eigen/Eigenvalues>

namespace mrbethe {

std::vector<Complex> poly_roots(const Eigen::VectorXcd& coeffs, double lead_tol) {
    double biggest = 0.0;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k)
        biggest = std::max(biggest, std::abs(coeffs(k)));
    require(biggest > 0.0, "poly_roots: zero polynomial");

    Eigen::Index deg = coeffs.size() - 1;
    while (deg > 0 && std::abs(coeffs(deg)) <= lead_tol * biggest) --deg;
    if (deg == 0) return {};

    Matrix companion = Matrix::Zero(deg, deg);
    for (Eigen::Index k = 1; k < deg; ++k) companion(k, k - 1) = 1.0;
    for (Eigen::Index k = 0; k < deg; ++k)
        companion(k, deg - 1) = -coeffs(k) / coeffs(deg);

    Eigen::ComplexEigenSolver<Matrix> es(companion, false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("poly_roots: companion eigensolve failed");

    std::vector<Complex> roots(static_cast<size_t>(deg));
    for (Eigen::Index k = 0; k < deg; ++k) roots[static_cast<size_t>(k)] = es.eigenvalues()(k);
    return roots;
}

} // namespace mrbethe
