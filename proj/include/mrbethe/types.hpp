// types.hpp — Shared scalar/matrix aliases and small dense-matrix helpers

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace mrbethe {

using Complex = std::complex<double>;
using Matrix  = Eigen::MatrixXcd;
using Vector  = Eigen::VectorXcd;

inline constexpr Complex kImag{0.0, 1.0};

inline Matrix comm(const Matrix& a, const Matrix& b) { return a * b - b * a; }

inline double max_abs(const Matrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline double fro_norm(const Matrix& a) { return a.norm(); }

inline bool is_hermitian(const Matrix& a, double tol = 1e-12) {
    return max_abs(a - a.adjoint()) <= tol;
}

// Kronecker product without pulling the unsupported header into every TU.
inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

} // namespace mrbethe
