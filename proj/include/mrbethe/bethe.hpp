// bethe.hpp — Bethe equation solvers, transfer eigenvalue Lambda(lambda),
// symmetric-root reduction for the BS family, and degenerate-state detection.

#pragma once

#include "mrbethe/lax.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace mrbethe::bethe {

using lax::RKind;
using lax::VacuumEigenPair;

// f defined through the R-matrix weights: (u+eta)/u rational,
// sin(u+eta)/sin(u) trigonometric.
Complex f_factor(Complex u, RKind kind, double eta = 1.0);

// Energy extraction from Lambda's polynomial coefficients, calibrated once per
// model instance from the transfer-charge fit:
//   E_rel = alpha (c[Na-1] - c0[Na-1]) + fit_a (c[Na] - c0[Na]),
// measured from the pseudovacuum.
struct EnergyMap {
    double alpha = 1.0;
    double fit_a = 0.0;
    int n_atoms = 1;
    Eigen::VectorXcd vacuum_coeffs; // Lambda_0 = alpha(lambda) + beta(lambda)

    static EnergyMap from(const VacuumEigenPair& vac, double alpha, int n_atoms,
                          double fit_a = 0.0);
    Complex energy(const Eigen::VectorXcd& lambda_coeffs) const;
};

struct BetheSolution {
    std::vector<Complex> roots;
    std::vector<Complex> residuals;     // log-form Bethe residuals (when defined)
    Complex energy{};                   // vacuum-referenced
    Eigen::VectorXcd lambda_coeffs;     // Lambda as a polynomial in lambda
    double pole_remainder = 0.0;        // residue-cancellation defect
    bool degenerate = false;            // repeated root backed by alpha=beta=0
    double certificate_residual = 0.0;  // |alpha(root)|, |beta(root)| when degenerate
};

// Log-form residuals of eq. alpha(l_a)/beta(l_a) = prod_{b!=a} f(l_b-l_a)/f(l_a-l_b).
std::vector<Complex> bethe_residual(const std::vector<Complex>& roots,
                                    const VacuumEigenPair& vac, RKind kind,
                                    double eta = 1.0);

// Lambda(lambda) = alpha(lambda) prod f(lambda-l_a) + beta(lambda) prod f(l_a-lambda).
Complex eigenvalue_Lambda(Complex lambda, const std::vector<Complex>& roots,
                          const VacuumEigenPair& vac, RKind kind, double eta = 1.0);

// Lambda as a polynomial (rational kind): exact when the roots satisfy the
// Bethe equations; `remainder` reports the pole-cancellation defect.
struct LambdaPoly {
    Eigen::VectorXcd coeffs;
    double remainder = 0.0;
};
LambdaPoly lambda_poly(const std::vector<Complex>& roots, const VacuumEigenPair& vac,
                       double eta = 1.0);

// Residue of Lambda at each root (simple poles, rational kind):
//   res_a = eta [ alpha(l_a) prod f(l_a-l_b) - beta(l_a) prod f(l_b-l_a) ];
// vanishes exactly when the Bethe equations hold.
std::vector<Complex> lambda_residues(const std::vector<Complex>& roots,
                                     const VacuumEigenPair& vac, double eta = 1.0);

// All M=1 solutions: roots of alpha(lambda) - beta(lambda) via companion matrix.
std::vector<BetheSolution> solve_M1(const VacuumEigenPair& vac, const EnergyMap& emap,
                                    double eta = 1.0);

struct SolveOptions {
    int restarts = 200;
    int max_iter = 80;
    double tol = 1e-12;
    double dedup_tol = 1e-7;
    std::uint64_t seed = 1234;
    std::vector<std::vector<Complex>> extra_seeds{};
};

// Multi-root Newton on the log-form system with analytic Jacobian, multi-start
// from perturbed M=1 roots plus random seeds; degenerate candidates (repeated
// common roots of alpha and beta) are appended with their certificates.
struct SolveReport {
    std::vector<BetheSolution> solutions;
    int converged_runs = 0;
    int attempted_runs = 0;
};
SolveReport solve_M_general(const VacuumEigenPair& vac, int m, const EnergyMap& emap,
                            const SolveOptions& opts = {}, double eta = 1.0);

// Closed-form spectrum of the one-atom BS family through the symmetric-root
// variables. `delta` is the half-detuning: the model built with physical
// detuning d has this closed form at delta = d/2, E_M = M omega_f +- sqrt(delta^2 + M^2).
struct SymmetricBSSolution {
    int m = 1;
    double delta = 0.0;   // half-detuning (closed-form parameter)
    double omega_f = 1.0;
    double kappa = 0.0;   // Y/X; satisfies M k^2 + (2 delta) k - M = 0
    Complex x{1.0, 0.0};
    Complex y{};
    double energy = 0.0;             // Delta_+ + M kappa (raw-block convention)
    double energy_from_vacuum = 0.0; // energy - delta; the solver/oracle reference
    std::vector<Complex> symmetric_roots{}; // s_1..s_M when roots were supplied
};
std::pair<SymmetricBSSolution, SymmetricBSSolution> symmetric_bs(
    int m, double delta, double omega_f,
    const std::vector<Complex>& roots = {});

// Common roots of alpha and beta within tol; each is a degenerate-state seed.
struct DegenerateRoot {
    Complex lambda1{};
    double alpha_residual = 0.0;
    double beta_residual = 0.0;
};
std::vector<DegenerateRoot> degeneracy_check(const VacuumEigenPair& vac,
                                             double tol = 1e-6);

// Degenerate M-particle candidate: M copies of a common root.
std::optional<BetheSolution> degenerate_solution(const DegenerateRoot& root, int m,
                                                 const VacuumEigenPair& vac,
                                                 const EnergyMap& emap, double eta = 1.0);

} // namespace mrbethe::bethe
