// hilbert.hpp — Truncated operator representations (boson, su(1,1), canonical,
// q-oscillator, su(2), quantum-group coproduct spin) and tensor embedding.

#pragma once

#include "mrbethe/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mrbethe::hilbert {

// Truncated Hilbert space: one mode factor (Fock states |0..boson_cutoff>)
// times n_atoms spin-s factors. Atom basis is ordered m = -s .. +s, so index
// 0 is the lowest weight state and the pseudovacuum is global index 0.
struct SpaceSpec {
    int boson_cutoff = 1;
    int n_atoms = 0;
    double atom_spin = 0.5;
    std::optional<double> deformation{};

    int mode_dim() const { return boson_cutoff + 1; }
    int atom_dim() const { return static_cast<int>(2.0 * atom_spin + 1.5); }
    long total_dim() const {
        long d = mode_dim();
        for (int j = 0; j < n_atoms; ++j) d *= atom_dim();
        return d;
    }
    int n_slots() const { return n_atoms + 1; }
    int slot_dim(int slot) const { return slot == 0 ? mode_dim() : atom_dim(); }

    void validate() const;
};

// Full-space operator tagged with the layout it acts on.
struct OperatorMatrix {
    Matrix mat;
    SpaceSpec space;
};

enum class ModeKind {
    Su11Boson,   // BS: s+ = sqrt(N) b+, s- = b sqrt(N), s3 = N + 1/2
    Boson,       // JC: s+ = b+, s- = b, s3 = N
    Canonical,   // TI: s+- = exp(+-ix), s3 = p + x
    QOscillator, // qBS/qJC: q-boson ladder, s3 = N + 1/2
    SpinSu2,     // spin-j mode, j = boson_cutoff/2 (auxiliary reduction i)
    QGeneral,    // trigonometric ancestor; algebra not available here
};

std::string to_string(ModeKind kind);

// Central elements (m+, m-) of the quadratic algebra for the rational kinds.
// Throws for q kinds, whose algebra is not part of this artifact.
struct CentralElements {
    double m_plus;
    double m_minus;
};
CentralElements central_elements(ModeKind kind);

struct ModeOps {
    Matrix sp; // raising
    Matrix sm; // lowering
    Matrix s3; // weight
    ModeKind kind;
};

// Ladder/number triple on the mode factor, <n-1|b|n> = sqrt(n).
struct BosonOps {
    Matrix b;
    Matrix b_dag;
    Matrix n;
};
BosonOps boson_ops(const SpaceSpec& spec);

ModeOps mode_realization(ModeKind kind, const SpaceSpec& spec);

// Standard su(2) spin-s matrices, dimension 2s+1, basis m = -s..s.
struct SpinOps {
    Matrix sp;
    Matrix sm;
    Matrix sz;
};
SpinOps spin_ops(double s);

// U_q(su(2)) generators on (C^2)^{n_sites} built from the coproduct
//   S+_q = sum_j q^{-sum_{k<j} sigma^z_k} sigma^+_j q^{+sum_{l>j} sigma^z_l}.
// S_z is the undeformed half-sum of Pauli z's.
SpinOps coproduct_spin_q(int n_sites, double q);

// Embed a factor operator at the given slot (0 = mode, 1..n_atoms = atoms).
Matrix embed(const Matrix& op, int slot, const SpaceSpec& spec);

// x and p quadratures used by the canonical realization.
struct Quadratures {
    Matrix x;
    Matrix p;
};
Quadratures quadratures(const SpaceSpec& spec);

// Projector onto basis states whose mode excitation is <= n_max. Used to
// quarantine the truncation edge in algebra checks.
Matrix mode_projector(const SpaceSpec& spec, int n_max);

// q-bracket [x]_q = (q^x - q^{-x})/(q - q^{-1}).
double q_bracket(double x, double q);

} // namespace mrbethe::hilbert
