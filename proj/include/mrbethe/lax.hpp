// lax.hpp — R-matrices, Lax/monodromy/transfer construction, Yang-Baxter
// verification, conserved-charge extraction, and vacuum eigenvalue functions.

#pragma once

#include "mrbethe/models.hpp"

#include <functional>

namespace mrbethe::lax {

using hilbert::ModeKind;
using hilbert::SpaceSpec;
using models::MRParams;

enum class RKind { Rational, Trigonometric };

// 4x4 R-matrix on C^2 (x) C^2.
//   rational:      R(u) = u I + eta P
//   trigonometric: symmetric 6-vertex with weights sin(u+eta), sin u, sin eta
// The RTT audit pins eta = 1 for the Lax normalization used here; the f-ratio
// (u+eta)/u then matches the rational weight at unit coupling.
struct RMatrix {
    RKind kind = RKind::Rational;
    double eta = 1.0;

    Eigen::Matrix4cd operator()(Complex u) const;
};

// Pure Yang-Baxter residual || R12 R13 R23 - R23 R13 R12 || at (lambda, mu).
double pure_ybe_residual(const RMatrix& r, Complex lambda, Complex mu);

// 2x2 auxiliary-space matrix of quantum operators evaluated at one lambda.
struct LaxOperator {
    Matrix a11, a12, a21, a22;
    Complex lambda{};
    SpaceSpec space;

    const Matrix& entry(int i, int j) const;
};

// Ancestor Lax operator: [ c10(lambda+s3)+c11 , s- ; s+ , c20(lambda-s3)-c21 ].
LaxOperator lax_ancestor(Complex lambda, const MRParams& params, ModeKind kind,
                         const SpaceSpec& spec);

// Spin Lax at atom slot j: [ lambda+Sz+c_j , S- ; S+ , lambda-Sz+c_j ].
LaxOperator lax_spin(Complex lambda, double c_j, int atom_slot, const SpaceSpec& spec);

// T(lambda) = L_mode(lambda) * prod_j L_spin_j(lambda). Entry (1,2) lowers the
// conserved charge by one, (2,1) raises it.
LaxOperator monodromy(Complex lambda, const MRParams& params, ModeKind kind,
                      const SpaceSpec& spec);

// tau(lambda) = T11 + T22.
Matrix transfer(Complex lambda, const MRParams& params, ModeKind kind,
                const SpaceSpec& spec);

// Quantum determinant qdet T(lambda) = T11(lambda) T22(lambda-eta)
//                                     - T12(lambda) T21(lambda-eta).
Matrix quantum_determinant(Complex lambda, const MRParams& params, ModeKind kind,
                           const SpaceSpec& spec, double eta = 1.0);

struct YbeReport {
    double rtt_residual = 0.0;      // || R T1 T2 - T2 T1 R || on safe sectors
    double tau_comm_residual = 0.0; // || [tau(lambda), tau(mu)] || on safe sectors
};

// RTT check at (lambda, mu), projected onto sectors with total excitation
// <= safe_excitation (default: boson_cutoff/2).
YbeReport check_ybe(Complex lambda, Complex mu, const MRParams& params, ModeKind kind,
                    const SpaceSpec& spec, int safe_excitation = -1);

// Expansion tau(lambda) = sum_a C_a lambda^a recovered by Chebyshev-node
// interpolation, plus the affine fit H = alpha C_{Na-1} + a C_{Na} + b I.
struct TransferCharges {
    std::vector<Matrix> coeff;        // C_0 .. C_{Na+1}
    double fit_a = 0.0;               // weight of C_{Na} in the H fit
    double fit_b = 0.0;               // identity offset in the H fit
    double fit_residual = 0.0;        // || H - alpha C_{Na-1} - a C_{Na} - b I ||
    double charge_comm_residual = 0.0; // max || [C_a, C_b] || (safe sectors)
};
TransferCharges charges_from_transfer(const MRParams& params, ModeKind kind,
                                      const SpaceSpec& spec, const Matrix& H_target,
                                      double node_scale = 0.0);

// Vacuum eigenvalue polynomials alpha(lambda), beta(lambda) of T11, T22 on the
// pseudovacuum. The numerically derived pair is authoritative; the closed form
//   alpha = (c10(lambda+r)+c11) prod_j (lambda-s+c_j)
//   beta  = (c20(lambda-r)-c21) prod_j (lambda+s+c_j)
// is cross-checked (a variant with c10 in the beta prefactor is also
// evaluated and reported as matching or not).
struct VacuumEigenPair {
    Eigen::VectorXcd alpha_coeffs; // ascending powers
    Eigen::VectorXcd beta_coeffs;
    double r = 0.0;                // <0|s3|0>
    double s = 0.5;                // atomic spin
    double closed_form_mismatch = 0.0;  // numeric vs corrected closed form
    double c10_prefactor_mismatch = 0.0; // numeric vs the c10-prefactor variant

    Complex alpha(Complex lambda) const;
    Complex beta(Complex lambda) const;
    int degree() const { return static_cast<int>(alpha_coeffs.size()) - 1; }
};
VacuumEigenPair vacuum_eigen(const MRParams& params, ModeKind kind,
                             const SpaceSpec& spec);

// Polynomial helpers shared with the Bethe layer (ascending coefficients).
Complex poly_eval(const Eigen::VectorXcd& coeffs, Complex x);
Eigen::VectorXcd poly_mul(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);
Eigen::VectorXcd poly_from_roots(const std::vector<Complex>& roots, Complex lead = 1.0);

} // namespace mrbethe::lax
