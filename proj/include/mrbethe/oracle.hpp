// oracle.hpp — Independent ground truth: sector enumeration and dense
// (non-)Hermitian diagonalization, plus the Bethe-vs-exact comparison harness.

#pragma once

#include "mrbethe/bethe.hpp"
#include "mrbethe/models.hpp"

#include <vector>

namespace mrbethe::oracle {

using hilbert::SpaceSpec;

// Basis of one conserved-charge sector: states (n, m_1..m_Na) with
// n + sum_j (m_j + s) = M, ordered lexicographically in (n, m_1, ...).
// Atom projections are stored as indices 0..2s (0 = lowest weight).
struct SectorBasis {
    int excitation = 0; // pseudoparticle number M
    std::vector<int> boson_occ;
    std::vector<std::vector<int>> atom_idx;
    std::vector<long> full_index;

    int dim() const { return static_cast<int>(full_index.size()); }
};

SectorBasis sector_basis(const SpaceSpec& spec, int m);

struct SpectrumReport {
    Eigen::VectorXcd eigenvalues;  // sorted by real part
    Matrix right;                  // right eigenvectors (columns)
    Matrix left;                   // left eigenvectors (rows), <L_k|R_j> = delta
    double max_pair_residual = 0.0; // max ||H v - E v|| / ||H||
    double block_leakage = 0.0;    // norm of H outside the sector block
    bool defective = false;        // eigenvector matrix numerically singular
    double kappa0 = 0.0;           // shift that was applied to eigenvalues
};

// Dense eigen-decomposition of one sector block; eigenvalues shifted by
// kappa0 on request. Flags (near-)defective blocks and falls back to Schur
// values with invalid eigenvectors.
SpectrumReport diag_sector(const models::OperatorMatrix& H, const SectorBasis& sector,
                           double kappa0 = 0.0);

// Extract the dense sector block of H.
Matrix sector_block(const Matrix& H, const SectorBasis& sector);

struct MatchRow {
    Complex bethe_energy{};
    Complex oracle_energy{};
    double abs_diff = 0.0;
};

struct ComparisonReport {
    std::vector<MatchRow> matched;
    std::vector<Complex> unmatched_oracle;
    std::vector<Complex> unmatched_bethe;
    double max_diff = 0.0;
    bool complete = false; // equal counts and all matched within tolerance
};

// Greedy bipartite matching of Bethe energies against kappa0-shifted oracle
// eigenvalues by absolute difference.
ComparisonReport compare_bethe_vs_exact(const std::vector<bethe::BetheSolution>& solutions,
                                        const SpectrumReport& spectrum, double tol);

} // namespace mrbethe::oracle
