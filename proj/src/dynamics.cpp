#include "mrbethe/dynamics.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace mrbethe::dynamics {

using oracle::sector_block;

EvolutionResult evolve(const models::OperatorMatrix& H, const SectorBasis& sector,
                       const Vector& psi0, const std::vector<Vector>& projectors,
                       const std::vector<double>& t_grid) {
    const int d = sector.dim();
    require(psi0.size() == d, "evolve: psi0 must live on the sector");
    for (const auto& phi : projectors)
        require(phi.size() == d, "evolve: projector must live on the sector");

    EvolutionResult out;
    out.t_grid = t_grid;
    out.eigen = oracle::diag_sector(H, sector, 0.0);
    out.probabilities.assign(projectors.size(), std::vector<double>(t_grid.size(), 0.0));
    out.norms.assign(t_grid.size(), 0.0);

    const Matrix block = sector_block(H.mat, sector);

    if (!out.eigen.defective) {
        const Vector amps = out.eigen.left * psi0; // <L_k|psi0>
        for (size_t ti = 0; ti < t_grid.size(); ++ti) {
            Vector phase(d);
            for (int k = 0; k < d; ++k)
                phase(k) = std::exp(-kImag * out.eigen.eigenvalues(k) * t_grid[ti]) * amps(k);
            const Vector psi = out.eigen.right * phase;
            out.norms[ti] = psi.norm();
            for (size_t p = 0; p < projectors.size(); ++p)
                out.probabilities[p][ti] = std::norm(projectors[p].dot(psi));
        }
    } else {
        // exceptional point: spectral decomposition unavailable; evolve by the
        // matrix exponential, which carries the polynomial-in-t secular terms
        out.jordan_fallback = true;
        for (size_t ti = 0; ti < t_grid.size(); ++ti) {
            const Matrix u = ((-kImag * t_grid[ti]) * block).exp();
            const Vector psi = u * psi0;
            out.norms[ti] = psi.norm();
            for (size_t p = 0; p < projectors.size(); ++p)
                out.probabilities[p][ti] = std::norm(projectors[p].dot(psi));
        }
    }
    return out;
}

RabiSpectrum rabi_spectrum(const SpectrumReport& eigen, const Vector& psi0,
                           const Vector& phi, const RabiOptions& opts) {
    RabiSpectrum spec;
    const int d = static_cast<int>(eigen.eigenvalues.size());
    const double freq_res =
        opts.freq_resolution > 0.0 ? opts.freq_resolution : 2.0 * M_PI / opts.window;

    double scale = 1.0;
    for (int k = 0; k < d; ++k) scale = std::max(scale, std::abs(eigen.eigenvalues(k)));
    for (int k = 0; k < d; ++k) {
        if (std::abs(eigen.eigenvalues(k).imag()) > opts.imag_tol * scale) {
            spec.regime = RabiRegime::Irregular;
            return spec;
        }
    }

    // biorthogonal amplitudes
    Vector w(d);
    if (!eigen.defective) {
        for (int k = 0; k < d; ++k)
            w(k) = phi.dot(eigen.right.col(k)) * (eigen.left.row(k) * psi0)(0);
    } else {
        w.setOnes();
    }

    // merge levels that the window cannot resolve
    std::vector<int> order(d);
    for (int i = 0; i < d; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return eigen.eigenvalues(a).real() < eigen.eigenvalues(b).real();
    });
    std::vector<double> level;
    std::vector<Complex> amp;
    for (int i : order) {
        const double e = eigen.eigenvalues(i).real();
        if (!level.empty() && e - level.back() < freq_res) {
            // weighted position update keeps the cluster centred
            level.back() = 0.5 * (level.back() + e);
            amp.back() += w(i);
        } else {
            level.push_back(e);
            amp.push_back(w(i));
        }
    }

    double total = 0.0;
    for (const Complex& a : amp) total += std::abs(a);
    total = std::max(total * total, 1e-300);

    for (size_t i = 0; i < level.size(); ++i) {
        for (size_t j = i + 1; j < level.size(); ++j) {
            const double freq = level[j] - level[i];
            if (freq < freq_res) continue;
            const double weight = std::abs(amp[i]) * std::abs(amp[j]);
            if (weight / total < opts.weight_tol) continue;
            spec.peaks.push_back({freq, weight});
        }
    }
    std::sort(spec.peaks.begin(), spec.peaks.end(),
              [](const RabiPeak& a, const RabiPeak& b) { return a.frequency < b.frequency; });
    spec.n_transitions = static_cast<int>(spec.peaks.size());
    return spec;
}

namespace {

// characteristic polynomial of A, ascending coefficients, monic
Eigen::VectorXd char_poly(const Matrix& a) {
    const int n = static_cast<int>(a.rows());
    // Faddeev-LeVerrier
    std::vector<Complex> c(n + 1, Complex{0.0, 0.0});
    c[n] = 1.0;
    Matrix m = Matrix::Zero(n, n);
    for (int k = 1; k <= n; ++k) {
        m = a * m + c[n - k + 1] * Matrix::Identity(n, n);
        c[n - k] = -(a * m).trace() / static_cast<double>(k);
    }
    Eigen::VectorXd out(n + 1);
    for (int k = 0; k <= n; ++k) out(k) = c[k].real();
    return out;
}

// resultant of p and q via the Sylvester matrix determinant
double resultant(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
    const int dp = static_cast<int>(p.size()) - 1;
    const int dq = static_cast<int>(q.size()) - 1;
    const int n = dp + dq;
    Eigen::MatrixXd syl = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < dq; ++i)
        for (int k = 0; k <= dp; ++k) syl(i, i + dp - k) = p(k);
    for (int i = 0; i < dp; ++i)
        for (int k = 0; k <= dq; ++k) syl(dq + i, i + dq - k) = q(k);
    return syl.fullPivLu().determinant();
}

} // namespace

double char_poly_discriminant(const Matrix& block) {
    const Eigen::VectorXd p = char_poly(block);
    const int n = static_cast<int>(p.size()) - 1;
    Eigen::VectorXd dp(n);
    for (int k = 1; k <= n; ++k) dp(k - 1) = k * p(k);
    const double res = resultant(p, dp);
    const int sign_exp = (n * (n - 1)) / 2;
    const double sign = (sign_exp % 2 == 0) ? 1.0 : -1.0;
    return sign * res / p(n);
}

namespace {

double discriminant_at(double omega_f, double alpha, double delta,
                       const hilbert::SpaceSpec& spec, const oracle::SectorBasis& sector) {
    const auto h = models::build_H_BS(omega_f, alpha, delta, spec);
    return char_poly_discriminant(sector_block(h.mat, sector));
}

} // namespace

VrsScan vrs_scan(double omega_f, double alpha, const std::vector<double>& deltas,
                 const hilbert::SpaceSpec& spec, double bisect_tol) {
    VrsScan scan;
    const auto sector = oracle::sector_basis(spec, 1);

    for (double delta : deltas) {
        const auto h = models::build_H_BS(omega_f, alpha, delta, spec);
        const auto rep = oracle::diag_sector(h, sector, models::kappa0(h));
        VrsRow row;
        row.delta = delta;
        row.eigenvalues = rep.eigenvalues;
        row.discriminant = char_poly_discriminant(sector_block(h.mat, sector));
        scan.rows.push_back(std::move(row));
    }

    for (size_t i = 0; i + 1 < scan.rows.size(); ++i) {
        double lo = scan.rows[i].delta;
        double hi = scan.rows[i + 1].delta;
        double flo = scan.rows[i].discriminant;
        double fhi = scan.rows[i + 1].discriminant;
        if (flo == 0.0) {
            scan.exceptional_deltas.push_back(lo);
            continue;
        }
        if (flo * fhi > 0.0) continue;
        while (hi - lo > bisect_tol) {
            const double mid = 0.5 * (lo + hi);
            const double fm = discriminant_at(omega_f, alpha, mid, spec, sector);
            if (fm == 0.0) {
                lo = hi = mid;
                break;
            }
            if (flo * fm < 0.0) {
                hi = mid;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        scan.exceptional_deltas.push_back(0.5 * (lo + hi));
    }
    return scan;
}

} // namespace mrbethe::dynamics
