// models.hpp — Hamiltonians of the unified matter-radiation family (multi-atom
// BS, JC, trapped-ion, q-deformed variants) and the parameter-to-frequency map.

#pragma once

#include "mrbethe/hilbert.hpp"
#include "mrbethe/types.hpp"

#include <vector>

namespace mrbethe::models {

using hilbert::ModeKind;
using hilbert::OperatorMatrix;
using hilbert::SpaceSpec;

// Ancestor Lax parameters: diagonal weights c10, c20, affine offsets c11, c21,
// overall coupling alpha, and one inhomogeneity per atom site.
struct MRParams {
    double c10 = 1.0;
    double c20 = -1.0;
    double c11 = 0.0;
    double c21 = 0.0;
    double alpha = 1.0;
    std::vector<double> inhom{};

    double m_plus() const { return c10 * c20; }
    double m_minus() const { return c11 * c20 + c10 * c21; }
    int n_atoms() const { return static_cast<int>(inhom.size()); }
};

// Mode/atom frequencies derived from the Lax data:
//   w_j = alpha (c10 - c20) c_j,  omega_f = sum_j w_j,
//   omega_aj = omega_f - w_j + alpha (c11 + c21).
struct Frequencies {
    double omega_f = 0.0;
    std::vector<double> w{};
    std::vector<double> omega_a{};
};
Frequencies frequencies(const MRParams& params);

// Throws if the params' central elements disagree with the kind.
void check_kind_consistency(const MRParams& params, ModeKind kind);

// Parameter recipes with all atomic frequencies equal; delta = omega_f - omega_a.
MRParams bs_params(double omega_f, double alpha, double delta, int n_atoms);
MRParams jc_params(double omega_f, double alpha, double delta, int n_atoms);

// H = H_d + H_Ss + H_SS with
//   H_d  = omega_f s3 + sum_j omega_aj Sz_j
//   H_Ss = alpha sum_j ( s+ S-_j + s- S+_j + (c10+c20) s3 Sz_j )
//   H_SS = alpha sum_{i<j} ( (c10+c20) Sz_i Sz_j + c10 S-_i S+_j + c20 S+_i S-_j )
OperatorMatrix build_H_MR(const MRParams& params, ModeKind kind, const SpaceSpec& spec);

// Multi-atom BS Hamiltonian assembled directly (independent route from
// build_H_MR): omega_f s3 + sum_j [ omega_a Sz_j + alpha (s+ S-_j + s- S+_j) ]
//              + alpha sum_{i<j} ( S-_i S+_j - S+_i S-_j ).
// The inter-atomic term is anti-Hermitian: H is non-Hermitian for n_atoms >= 2.
OperatorMatrix build_H_BS(double omega_f, double alpha, double delta,
                          const SpaceSpec& spec);

// Multi-atom JC Hamiltonian, direct assembly of the reduction-iii model.
OperatorMatrix build_H_JC(double omega_f, double alpha, double delta,
                          const SpaceSpec& spec);

// Trapped-ion model at one atom site, literally
//   (omega_a - omega_f) Sz + Sz^2 + alpha (e^{-ix} S+ + e^{ix} S-) + H_xp,
//   H_xp = (p^2 + x^2)/2 + xp   (the xp term makes H_xp non-Hermitian).
OperatorMatrix build_H_TI(double omega_f, double omega_a, double alpha,
                          const SpaceSpec& spec);

enum class QReduction { QBS, QJC, QTI, General };

struct QMRParams {
    Complex c0{0.0, 0.0};
    double c = 1.0;
    double alpha = 1.0;
    double omega = 0.0; // offset inside X; the source never assigns it
    double q = 1.0;
};

// q-deformed family: H = -i c0 cos(alpha X) + c sin(alpha X)
//                        + (sq+ Sq- + sq- Sq+) sin(alpha),
// with X = sq3 + Sz + omega (the commuting charge; see README note on sign).
// Reductions: qBS (c0=0), qJC (c0=i, c=1), qTI (c0=i, c=0). Atoms must be
// spin-1/2; the quantum-group spin spreads over all atom sites by coproduct.
OperatorMatrix build_H_qMR(const QMRParams& qparams, QReduction reduction,
                           const SpaceSpec& spec);

// Conserved charge C = s3 + sum_j Sz_j for the given mode kind.
OperatorMatrix conserved_charge(ModeKind kind, const SpaceSpec& spec);

// Additive calibration aligning raw eigenvalues with the vacuum-referenced
// energy convention of the Bethe layer: kappa0 = -<0|H|0>.
double kappa0(const OperatorMatrix& H);

// X charge used by the q family (needed by tests and the CLI).
Matrix q_charge(const QMRParams& qparams, QReduction reduction, const SpaceSpec& spec);

} // namespace mrbethe::models
