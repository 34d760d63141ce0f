// dynamics.hpp — Time evolution on conserved-charge sectors, Rabi frequency
// classification, and vacuum-Rabi-splitting detuning scans.

#pragma once

#include "mrbethe/oracle.hpp"

#include <vector>

namespace mrbethe::dynamics {

using oracle::SectorBasis;
using oracle::SpectrumReport;

struct EvolutionResult {
    std::vector<double> t_grid;
    std::vector<std::vector<double>> probabilities; // one series per projector
    SpectrumReport eigen;
    bool jordan_fallback = false; // defective sector; exp(-iHt) computed directly
    std::vector<double> norms;    // ||psi(t)|| (grows/decays when non-Hermitian)
};

// psi(t) = sum_k exp(-i E_k t) |R_k><L_k|psi0> on the sector block;
// P_phi(t) = |<phi|psi(t)>|^2, unnormalized (biorthogonal convention).
EvolutionResult evolve(const models::OperatorMatrix& H, const SectorBasis& sector,
                       const Vector& psi0, const std::vector<Vector>& projectors,
                       const std::vector<double>& t_grid);

enum class RabiRegime { Regular, Irregular };

struct RabiPeak {
    double frequency = 0.0;
    double weight = 0.0;
};

struct RabiSpectrum {
    std::vector<RabiPeak> peaks;  // significant transition pairs
    int n_transitions = 0;
    RabiRegime regime = RabiRegime::Regular;
};

struct RabiOptions {
    double weight_tol = 1e-3;       // relative significance threshold
    double freq_resolution = 0.0;   // levels closer than this merge; 0 -> 2*pi/T
    double imag_tol = 1e-8;         // beyond this the spectrum counts as complex
    double window = 7.0;            // classification window length
};

// Bohr transition analysis between merged levels, weights from the
// biorthogonal amplitudes w_k = <phi|R_k><L_k|psi0>. Complex spectrum beyond
// tolerance classifies as Irregular.
RabiSpectrum rabi_spectrum(const SpectrumReport& eigen, const Vector& psi0,
                           const Vector& phi, const RabiOptions& opts = {});

struct VrsRow {
    double delta = 0.0;
    Eigen::VectorXcd eigenvalues; // kappa0-referenced M=1 energies
    double discriminant = 0.0;    // of the characteristic polynomial
};

struct VrsScan {
    std::vector<VrsRow> rows;
    std::vector<double> exceptional_deltas; // discriminant zero crossings
};

// Sector-1 eigenvalues of the multi-atom BS model versus detuning, with the
// characteristic-polynomial discriminant tracked and its sign changes located
// by bisection.
VrsScan vrs_scan(double omega_f, double alpha, const std::vector<double>& deltas,
                 const hilbert::SpaceSpec& spec, double bisect_tol = 1e-6);

// Discriminant of det(E I - A) for a small real-spectrum-symmetric block.
double char_poly_discriminant(const Matrix& block);

} // namespace mrbethe::dynamics
