#include "mrbethe/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <functional>

namespace mrbethe::oracle {

SectorBasis sector_basis(const SpaceSpec& spec, int m) {
    spec.validate();
    require(m >= 0, "sector_basis: M must be >= 0");
    require(m < spec.boson_cutoff,
            "sector_basis: sector touches the boson cutoff; raise boson_cutoff");

    const int ad = spec.atom_dim();
    const int na = spec.n_atoms;

    SectorBasis basis;
    basis.excitation = m;

    // lexicographic enumeration in (n, m_1, ..): atom indices count m_j + s
    std::vector<int> atom(na, 0);
    for (int n = 0; n <= std::min(m, spec.boson_cutoff); ++n) {
        const int rem = m - n;
        // distribute rem over na atoms, each 0..2s
        std::fill(atom.begin(), atom.end(), 0);
        if (na == 0) {
            if (rem != 0) continue;
            basis.boson_occ.push_back(n);
            basis.atom_idx.push_back({});
            basis.full_index.push_back(n);
            continue;
        }
        // odometer over atom occupation patterns summing to rem
        std::function<void(int, int)> rec = [&](int slot, int left) {
            if (slot == na) {
                if (left != 0) return;
                basis.boson_occ.push_back(n);
                basis.atom_idx.push_back(atom);
                long idx = n;
                for (int j = 0; j < na; ++j) idx = idx * ad + atom[j];
                basis.full_index.push_back(idx);
                return;
            }
            for (int k = 0; k <= std::min(left, ad - 1); ++k) {
                atom[slot] = k;
                rec(slot + 1, left - k);
            }
            atom[slot] = 0;
        };
        rec(0, rem);
    }
    return basis;
}

Matrix sector_block(const Matrix& H, const SectorBasis& sector) {
    const int d = sector.dim();
    Matrix block(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            block(i, j) = H(sector.full_index[i], sector.full_index[j]);
    return block;
}

SpectrumReport diag_sector(const models::OperatorMatrix& H, const SectorBasis& sector,
                           double kappa0) {
    const int d = sector.dim();
    require(d > 0, "diag_sector: empty sector");
    Matrix block = sector_block(H.mat, sector);

    // leakage of H out of the block over the sector columns
    double leak = 0.0;
    for (int j = 0; j < d; ++j) {
        Vector col = H.mat.col(sector.full_index[j]);
        for (int i = 0; i < d; ++i) col(sector.full_index[i]) = 0.0;
        leak = std::max(leak, col.cwiseAbs().maxCoeff());
    }

    SpectrumReport rep;
    rep.block_leakage = leak;
    rep.kappa0 = kappa0;

    const double hnorm = std::max(1.0, max_abs(block));

    if (is_hermitian(block, 1e-12 * hnorm)) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(block);
        if (es.info() != Eigen::Success) throw std::runtime_error("diag_sector: eigensolve failed");
        rep.eigenvalues = es.eigenvalues().cast<Complex>();
        rep.right = es.eigenvectors();
        rep.left = es.eigenvectors().adjoint();
    } else {
        Eigen::ComplexEigenSolver<Matrix> es(block, true);
        if (es.info() != Eigen::Success) throw std::runtime_error("diag_sector: eigensolve failed");
        rep.eigenvalues = es.eigenvalues();
        rep.right = es.eigenvectors();
        Eigen::FullPivLU<Matrix> lu(rep.right);
        if (lu.isInvertible() && lu.rcond() > 1e-12) {
            rep.left = rep.right.inverse();
        } else {
            // exceptional point: eigenvectors coalesce; keep Schur eigenvalues
            rep.defective = true;
            rep.left = Matrix::Zero(d, d);
        }
    }

    // sort by real part, then imaginary
    std::vector<int> order(d);
    for (int i = 0; i < d; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Complex ea = rep.eigenvalues(a), eb = rep.eigenvalues(b);
        if (std::abs(ea.real() - eb.real()) > 1e-13) return ea.real() < eb.real();
        return ea.imag() < eb.imag();
    });
    Eigen::VectorXcd ev(d);
    Matrix r(d, d), l(d, d);
    for (int i = 0; i < d; ++i) {
        ev(i) = rep.eigenvalues(order[i]);
        r.col(i) = rep.right.col(order[i]);
        l.row(i) = rep.left.row(order[i]);
    }
    rep.eigenvalues = ev;
    rep.right = r;
    rep.left = l;

    if (!rep.defective) {
        for (int k = 0; k < d; ++k) {
            const double res = (block * rep.right.col(k) - rep.eigenvalues(k) * rep.right.col(k))
                                   .norm();
            rep.max_pair_residual = std::max(rep.max_pair_residual, res / hnorm);
        }
    }

    rep.eigenvalues.array() += kappa0;
    return rep;
}

ComparisonReport compare_bethe_vs_exact(const std::vector<bethe::BetheSolution>& solutions,
                                        const SpectrumReport& spectrum, double tol) {
    ComparisonReport rep;
    std::vector<Complex> oracle(spectrum.eigenvalues.data(),
                                spectrum.eigenvalues.data() + spectrum.eigenvalues.size());
    std::vector<bool> used(oracle.size(), false);

    for (const auto& sol : solutions) {
        int best = -1;
        double best_d = 1e300;
        for (size_t k = 0; k < oracle.size(); ++k) {
            if (used[k]) continue;
            const double d = std::abs(sol.energy - oracle[k]);
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(k);
            }
        }
        if (best < 0) {
            rep.unmatched_bethe.push_back(sol.energy);
            continue;
        }
        used[best] = true;
        rep.matched.push_back({sol.energy, oracle[best], best_d});
        rep.max_diff = std::max(rep.max_diff, best_d);
    }
    for (size_t k = 0; k < oracle.size(); ++k)
        if (!used[k]) rep.unmatched_oracle.push_back(oracle[k]);

    rep.complete = rep.unmatched_oracle.empty() && rep.unmatched_bethe.empty() &&
                   rep.max_diff <= tol;
    return rep;
}

} // namespace mrbethe::oracle
