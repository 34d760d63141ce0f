#include "mrbethe/bethe.hpp"

#include "mrbethe/polyroot.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <random>

namespace mrbethe::bethe {

using lax::poly_eval;
using lax::poly_from_roots;
using lax::poly_mul;

Complex f_factor(Complex u, RKind kind, double eta) {
    if (kind == RKind::Rational) {
        require(std::abs(u) > 0.0, "f_factor: pole at u = 0");
        return (u + eta) / u;
    }
    const Complex s = std::sin(u);
    require(std::abs(s) > 0.0, "f_factor: pole at sin(u) = 0");
    return std::sin(u + eta) / s;
}

EnergyMap EnergyMap::from(const VacuumEigenPair& vac, double alpha, int n_atoms,
                          double fit_a) {
    EnergyMap m;
    m.alpha = alpha;
    m.fit_a = fit_a;
    m.n_atoms = n_atoms;
    m.vacuum_coeffs = vac.alpha_coeffs + vac.beta_coeffs;
    return m;
}

namespace {

Complex coeff_at(const Eigen::VectorXcd& c, int k) {
    return (k >= 0 && k < c.size()) ? c(k) : Complex{0.0, 0.0};
}

} // namespace

Complex EnergyMap::energy(const Eigen::VectorXcd& lambda_coeffs) const {
    Complex e = alpha * (coeff_at(lambda_coeffs, n_atoms - 1) -
                         coeff_at(vacuum_coeffs, n_atoms - 1));
    if (fit_a != 0.0)
        e += fit_a * (coeff_at(lambda_coeffs, n_atoms) - coeff_at(vacuum_coeffs, n_atoms));
    return e;
}

std::vector<Complex> bethe_residual(const std::vector<Complex>& roots,
                                    const VacuumEigenPair& vac, RKind kind,
                                    double eta) {
    const size_t m = roots.size();
    const double collision_tol = 1e-10;
    const double scale = std::max(vac.alpha_coeffs.cwiseAbs().maxCoeff(),
                                  vac.beta_coeffs.cwiseAbs().maxCoeff());
    std::vector<Complex> res(m);
    for (size_t a = 0; a < m; ++a) {
        const Complex la = roots[a];
        const Complex av = vac.alpha(la);
        const Complex bv = vac.beta(la);
        if (std::abs(av) < 1e-12 * scale && std::abs(bv) < 1e-12 * scale) {
            // common zero of alpha and beta: the equation holds in the limit
            // sense (degeneracy certificate)
            res[a] = Complex{0.0, 0.0};
            continue;
        }
        if (std::abs(bv) < 1e-14 && std::abs(av) > 1e-12)
            throw std::invalid_argument("bethe_residual: beta vanishes at a root "
                                        "while alpha does not");
        Complex num = av;
        Complex den = bv;
        for (size_t b = 0; b < m; ++b) {
            if (b == a) continue;
            const Complex d = la - roots[b];
            if (std::abs(d) < collision_tol)
                throw std::invalid_argument(
                    "bethe_residual: coinciding roots without a degeneracy certificate");
            if (kind == RKind::Rational) {
                num *= d + eta;
                den *= d - eta;
            } else {
                num *= std::sin(d + eta);
                den *= std::sin(d - eta);
            }
        }
        res[a] = std::log(num / den);
    }
    return res;
}

Complex eigenvalue_Lambda(Complex lambda, const std::vector<Complex>& roots,
                          const VacuumEigenPair& vac, RKind kind, double eta) {
    double min_dist = 1e300;
    for (Complex r : roots) min_dist = std::min(min_dist, std::abs(lambda - r));
    if (kind == RKind::Rational && min_dist < 1e-6) {
        // evaluate the residue-cancelled polynomial form instead
        return poly_eval(lambda_poly(roots, vac, eta).coeffs, lambda);
    }
    Complex acc_a = vac.alpha(lambda);
    Complex acc_b = vac.beta(lambda);
    for (Complex r : roots) {
        acc_a *= f_factor(lambda - r, kind, eta);
        acc_b *= f_factor(r - lambda, kind, eta);
    }
    return acc_a + acc_b;
}

LambdaPoly lambda_poly(const std::vector<Complex>& roots, const VacuumEigenPair& vac,
                       double eta) {
    // Lambda = [ p_alpha prod(l - l_a + eta) + p_beta prod(l - l_a - eta) ] / prod(l - l_a)
    std::vector<Complex> up, down;
    up.reserve(roots.size());
    down.reserve(roots.size());
    for (Complex r : roots) {
        up.push_back(r - eta);
        down.push_back(r + eta);
    }
    Eigen::VectorXcd num = poly_mul(vac.alpha_coeffs, poly_from_roots(up)) +
                           poly_mul(vac.beta_coeffs, poly_from_roots(down));
    const Eigen::VectorXcd den = poly_from_roots(roots);

    // long division, descending powers
    const Eigen::Index nd = den.size() - 1;
    Eigen::VectorXcd work = num;
    Eigen::VectorXcd quot = Eigen::VectorXcd::Zero(std::max<Eigen::Index>(num.size() - nd, 1));
    for (Eigen::Index k = num.size() - 1; k >= nd; --k) {
        const Complex q = work(k); // den is monic
        quot(k - nd) = q;
        if (q == Complex{0.0, 0.0}) continue;
        for (Eigen::Index j = 0; j < den.size(); ++j) work(k - nd + j) -= q * den(j);
    }
    double rem = 0.0;
    for (Eigen::Index k = 0; k < nd; ++k) rem = std::max(rem, std::abs(work(k)));
    const double scale = std::max(1.0, num.cwiseAbs().maxCoeff());

    LambdaPoly out;
    out.coeffs = quot;
    out.remainder = rem / scale;
    return out;
}

std::vector<Complex> lambda_residues(const std::vector<Complex>& roots,
                                     const VacuumEigenPair& vac, double eta) {
    const size_t m = roots.size();
    std::vector<Complex> res(m);
    for (size_t a = 0; a < m; ++a) {
        Complex acc_a = vac.alpha(roots[a]);
        Complex acc_b = vac.beta(roots[a]);
        for (size_t b = 0; b < m; ++b) {
            if (b == a) continue;
            acc_a *= f_factor(roots[a] - roots[b], RKind::Rational, eta);
            acc_b *= f_factor(roots[b] - roots[a], RKind::Rational, eta);
        }
        res[a] = eta * (acc_a - acc_b);
    }
    return res;
}

namespace {

BetheSolution package_solution(const std::vector<Complex>& roots,
                               const VacuumEigenPair& vac, const EnergyMap& emap,
                               double eta) {
    BetheSolution sol;
    sol.roots = roots;
    auto lp = lambda_poly(roots, vac, eta);
    sol.lambda_coeffs = lp.coeffs;
    sol.pole_remainder = lp.remainder;
    sol.energy = emap.energy(lp.coeffs);
    sol.residuals = bethe_residual(roots, vac, RKind::Rational, eta);

    // multiplicity is declared when roots (nearly) coincide AND the
    // degeneracy certificate alpha = beta = 0 backs the coincidence
    const double scale = std::max(vac.alpha_coeffs.cwiseAbs().maxCoeff(),
                                  vac.beta_coeffs.cwiseAbs().maxCoeff());
    for (size_t a = 0; a < roots.size() && !sol.degenerate; ++a) {
        for (size_t b = a + 1; b < roots.size(); ++b) {
            if (std::abs(roots[a] - roots[b]) > 1e-6) continue;
            const double ares = std::abs(vac.alpha(roots[a])) / scale;
            const double bres = std::abs(vac.beta(roots[a])) / scale;
            if (ares < 1e-8 && bres < 1e-8) {
                sol.degenerate = true;
                sol.certificate_residual = std::max(ares, bres);
                break;
            }
        }
    }
    return sol;
}

} // namespace

std::vector<BetheSolution> solve_M1(const VacuumEigenPair& vac, const EnergyMap& emap,
                                    double eta) {
    Eigen::VectorXcd diff = vac.alpha_coeffs - vac.beta_coeffs;
    require(diff.cwiseAbs().maxCoeff() > 1e-14, "solve_M1: alpha - beta vanishes identically");
    std::vector<BetheSolution> out;
    for (Complex root : poly_roots(diff)) out.push_back(package_solution({root}, vac, emap, eta));
    std::sort(out.begin(), out.end(), [](const BetheSolution& a, const BetheSolution& b) {
        return a.energy.real() < b.energy.real();
    });
    return out;
}

namespace {

struct NewtonResult {
    std::vector<Complex> roots;
    double residual = 1e300;
    bool ok = false;
};

NewtonResult newton_log_form(std::vector<Complex> roots, const VacuumEigenPair& vac,
                             double eta, int max_iter, double tol) {
    const int m = static_cast<int>(roots.size());
    const auto& pa = vac.alpha_coeffs;
    const auto& pb = vac.beta_coeffs;
    Eigen::VectorXcd da(pa.size() - 1), db(pb.size() - 1);
    for (Eigen::Index k = 1; k < pa.size(); ++k) da(k - 1) = static_cast<double>(k) * pa(k);
    for (Eigen::Index k = 1; k < pb.size(); ++k) db(k - 1) = static_cast<double>(k) * pb(k);

    auto eval_F = [&](const std::vector<Complex>& x, Eigen::VectorXcd& F) -> bool {
        for (int a = 0; a < m; ++a) {
            Complex num = poly_eval(pa, x[a]);
            Complex den = poly_eval(pb, x[a]);
            if (std::abs(num) < 1e-300 || std::abs(den) < 1e-300) return false;
            for (int b = 0; b < m; ++b) {
                if (b == a) continue;
                const Complex d = x[a] - x[b];
                if (std::abs(d - eta) < 1e-300 || std::abs(d + eta) < 1e-300) return false;
                if (std::abs(d) < 1e-9) return false; // collision: not this solver's case
                num *= d + eta;
                den *= d - eta;
            }
            F(a) = std::log(num / den);
        }
        return true;
    };

    Eigen::VectorXcd F(m), Fnew(m);
    if (!eval_F(roots, F)) return {};
    double fnorm = F.cwiseAbs().maxCoeff();

    for (int iter = 0; iter < max_iter; ++iter) {
        if (fnorm < tol) break;
        Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(m, m);
        for (int a = 0; a < m; ++a) {
            const Complex la = roots[a];
            J(a, a) = poly_eval(da, la) / poly_eval(pa, la) -
                      poly_eval(db, la) / poly_eval(pb, la);
            for (int b = 0; b < m; ++b) {
                if (b == a) continue;
                const Complex d = la - roots[b];
                const Complex term_p = 1.0 / (d + eta);
                const Complex term_m = 1.0 / (d - eta);
                J(a, a) += term_p - term_m;
                J(a, b) += -term_p + term_m;
            }
        }
        // SVD solve tolerates the rank-deficient solution manifolds that this
        // system develops for small sector dimensions.
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
        svd.setThreshold(1e-13);
        Eigen::VectorXcd step = svd.solve(-F);

        double damp = 1.0;
        bool accepted = false;
        for (int tries = 0; tries < 12; ++tries) {
            std::vector<Complex> cand(roots);
            for (int a = 0; a < m; ++a) cand[a] = roots[a] + damp * step(a);
            bool finite = true;
            for (Complex c : cand)
                if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) || std::abs(c) > 1e8)
                    finite = false;
            if (finite && eval_F(cand, Fnew)) {
                const double fn = Fnew.cwiseAbs().maxCoeff();
                if (fn < fnorm || (tries == 0 && fn < 10.0 * fnorm && fnorm > 1e-3)) {
                    roots = std::move(cand);
                    F = Fnew;
                    fnorm = fn;
                    accepted = true;
                    break;
                }
            }
            damp *= 0.5;
        }
        if (!accepted) break;
    }

    NewtonResult res;
    res.roots = std::move(roots);
    res.residual = fnorm;
    res.ok = fnorm < 1e-10;
    return res;
}

// Newton on the cleared-denominator polynomial system
//   G_a = alpha(l_a) prod(d_ab + eta) - beta(l_a) prod(d_ab - eta).
// Wider basins than the log form near zeros of alpha or beta.
NewtonResult newton_poly_form(std::vector<Complex> roots, const VacuumEigenPair& vac,
                              double eta, int max_iter, double tol) {
    const int m = static_cast<int>(roots.size());
    const auto& pa = vac.alpha_coeffs;
    const auto& pb = vac.beta_coeffs;
    Eigen::VectorXcd da(pa.size() - 1), db(pb.size() - 1);
    for (Eigen::Index k = 1; k < pa.size(); ++k) da(k - 1) = static_cast<double>(k) * pa(k);
    for (Eigen::Index k = 1; k < pb.size(); ++k) db(k - 1) = static_cast<double>(k) * pb(k);

    auto eval_G = [&](const std::vector<Complex>& x, Eigen::VectorXcd& G, double& scale) {
        scale = 0.0;
        for (int a = 0; a < m; ++a) {
            Complex pav = poly_eval(pa, x[a]);
            Complex pbv = poly_eval(pb, x[a]);
            Complex pprod{1.0, 0.0}, qprod{1.0, 0.0};
            for (int b = 0; b < m; ++b) {
                if (b == a) continue;
                const Complex d = x[a] - x[b];
                pprod *= d + eta;
                qprod *= d - eta;
            }
            G(a) = pav * pprod - pbv * qprod;
            scale = std::max(scale, std::abs(pav * pprod) + std::abs(pbv * qprod));
        }
        scale = std::max(scale, 1e-12);
    };

    Eigen::VectorXcd G(m), Gnew(m);
    double scale = 1.0;
    eval_G(roots, G, scale);
    double gnorm = G.cwiseAbs().maxCoeff() / scale;

    for (int iter = 0; iter < max_iter && gnorm >= tol; ++iter) {
        Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(m, m);
        for (int a = 0; a < m; ++a) {
            const Complex la = roots[a];
            const Complex pav = poly_eval(pa, la);
            const Complex pbv = poly_eval(pb, la);
            Complex pprod{1.0, 0.0}, qprod{1.0, 0.0};
            for (int b = 0; b < m; ++b) {
                if (b == a) continue;
                const Complex d = la - roots[b];
                pprod *= d + eta;
                qprod *= d - eta;
            }
            J(a, a) = poly_eval(da, la) * pprod - poly_eval(db, la) * qprod;
            for (int c = 0; c < m; ++c) {
                if (c == a) continue;
                const Complex d = la - roots[c];
                if (std::abs(d + eta) < 1e-14 || std::abs(d - eta) < 1e-14) return {};
                J(a, a) += pav * pprod / (d + eta) - pbv * qprod / (d - eta);
                J(a, c) += -pav * pprod / (d + eta) + pbv * qprod / (d - eta);
            }
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
        svd.setThreshold(1e-13);
        Eigen::VectorXcd step = svd.solve(-G);

        double damp = 1.0;
        bool accepted = false;
        for (int tries = 0; tries < 12; ++tries) {
            std::vector<Complex> cand(roots);
            for (int a = 0; a < m; ++a) cand[a] = roots[a] + damp * step(a);
            bool finite = true;
            for (Complex c : cand)
                if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) || std::abs(c) > 1e8)
                    finite = false;
            if (finite) {
                double new_scale = 1.0;
                eval_G(cand, Gnew, new_scale);
                const double gn = Gnew.cwiseAbs().maxCoeff() / new_scale;
                if (gn < gnorm) {
                    roots = std::move(cand);
                    G = Gnew;
                    gnorm = gn;
                    accepted = true;
                    break;
                }
            }
            damp *= 0.5;
        }
        if (!accepted) break;
    }

    NewtonResult res;
    res.roots = std::move(roots);
    res.residual = gnorm;
    res.ok = gnorm < 1e-11;
    return res;
}

std::vector<Complex> canonical_order(std::vector<Complex> roots) {
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        if (std::abs(a.real() - b.real()) > 1e-11) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

double multiset_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double d = 0.0;
    for (size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return d;
}

} // namespace

SolveReport solve_M_general(const VacuumEigenPair& vac, int m, const EnergyMap& emap,
                            const SolveOptions& opts, double eta) {
    require(m >= 1, "solve_M_general: M must be >= 1");
    SolveReport report;

    if (m == 1) {
        report.solutions = solve_M1(vac, emap, eta);
        report.converged_runs = static_cast<int>(report.solutions.size());
        report.attempted_runs = report.converged_runs;
        return report;
    }

    // Base points: M=1 roots; their spread sets the seeding scale.
    std::vector<Complex> base;
    for (Complex r : poly_roots(vac.alpha_coeffs - vac.beta_coeffs)) base.push_back(r);
    double scale = 0.5;
    for (Complex r : base) scale = std::max(scale, std::abs(r));

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_root = [&](Complex center, double radius) {
        return center + radius * Complex(gauss(rng), gauss(rng));
    };

    std::vector<std::vector<Complex>> seeds = opts.extra_seeds;

    // Continuation: converged (m-1)-root configurations extended by one root.
    // The physical solutions organize into string-like towers, so the new
    // root goes either onto the real axis near an existing root or on top of
    // the tower, plus conjugate symmetrization.
    if (m >= 2) {
        SolveOptions sub = opts;
        sub.restarts = std::max(40, opts.restarts / 2);
        sub.extra_seeds.clear();
        sub.seed = opts.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(m);
        const auto prev = solve_M_general(vac, m - 1, emap, sub, eta);
        for (const auto& sol : prev.solutions) {
            if (sol.degenerate) continue;
            double top = 0.0;
            Complex mean{0.0, 0.0};
            for (Complex r : sol.roots) {
                top = std::max(top, std::abs(r.imag()));
                mean += r;
            }
            mean /= static_cast<double>(sol.roots.size());
            for (double off : {0.9, 1.4, 2.0}) {
                std::vector<Complex> up(sol.roots);
                up.push_back(Complex(mean.real(), top + off));
                seeds.push_back(up);
                std::vector<Complex> down(sol.roots);
                down.push_back(Complex(mean.real(), -top - off));
                seeds.push_back(down);
            }
            for (int rep = 0; rep < 4; ++rep) {
                std::vector<Complex> s(sol.roots);
                s.push_back(random_root(mean, 0.4));
                seeds.push_back(std::move(s));
            }
            // a real root can pair up with the newcomer into a conjugate pair
            for (size_t k = 0; k < sol.roots.size(); ++k) {
                if (std::abs(sol.roots[k].imag()) > 0.1) continue;
                for (double split : {0.45, 1.0}) {
                    std::vector<Complex> s(sol.roots);
                    s[k] = Complex(sol.roots[k].real(), split);
                    s.push_back(Complex(sol.roots[k].real(), -split));
                    seeds.push_back(std::move(s));
                }
            }
        }
    }

    // Conjugate-symmetric towers anchored at the M=1 roots: a few real roots
    // around the anchor plus vertically stacked conjugate pairs. This is the
    // shape the converged solutions take for the rational models here.
    for (Complex anchor : base) {
        for (int n_real : {m % 2, m % 2 + 2, m % 2 + 4}) {
            if (n_real > m || (m - n_real) % 2 != 0) continue;
            const int n_pair = (m - n_real) / 2;
            for (int jit = 0; jit < 8; ++jit) {
                std::vector<Complex> s;
                for (int r = 0; r < n_real; ++r)
                    s.push_back(random_root(
                        anchor + Complex(0.35 * (r - 0.5 * (n_real - 1)), 0.0), 0.05));
                for (int k = 0; k < n_pair; ++k) {
                    const Complex top =
                        random_root(Complex(anchor.real(), 0.55 + 1.2 * k), 0.1);
                    s.push_back(top);
                    s.push_back(std::conj(top));
                }
                seeds.push_back(std::move(s));
            }
        }
    }

    // perturbed combinations of M=1 roots (with repetition)
    for (int rep = 0; rep < std::max(1, opts.restarts / 4); ++rep) {
        std::vector<Complex> s(m);
        for (int a = 0; a < m; ++a) {
            const Complex c = base.empty() ? Complex{0.0, 0.0}
                                           : base[rng() % base.size()];
            s[a] = random_root(c, 0.15 + 0.1 * rep / std::max(1, opts.restarts / 4));
        }
        seeds.push_back(std::move(s));
    }
    // fully random seeds around the root cloud
    Complex centroid{0.0, 0.0};
    for (Complex r : base) centroid += r;
    if (!base.empty()) centroid /= static_cast<double>(base.size());
    while (static_cast<int>(seeds.size()) < opts.restarts) {
        std::vector<Complex> s(m);
        for (int a = 0; a < m; ++a) s[a] = random_root(centroid, 0.8 * scale + 0.5);
        seeds.push_back(std::move(s));
    }

    std::vector<std::vector<Complex>> found;
    auto try_accept = [&](const std::vector<Complex>& roots) {
        const auto canon = canonical_order(roots);
        BetheSolution sol;
        try {
            sol = package_solution(canon, vac, emap, eta);
        } catch (const std::invalid_argument&) {
            return; // collision or vanishing beta: not a regular solution
        }
        if (sol.pole_remainder > 1e-8) return;
        for (Complex r : sol.residuals)
            if (std::abs(r) > 1e-9) return;
        for (size_t k = 0; k < found.size(); ++k) {
            const double dist = multiset_distance(canon, found[k]);
            if (dist < opts.dedup_tol * (1.0 + scale)) return;
            // near-coincident clusters drift; the energy disambiguates
            if (dist < 1e-4 &&
                std::abs(sol.energy - report.solutions[k].energy) < 1e-9)
                return;
        }
        found.push_back(canon);
        report.solutions.push_back(std::move(sol));
    };

    for (const auto& seed : seeds) {
        ++report.attempted_runs;
        auto res = newton_log_form(seed, vac, eta, opts.max_iter, opts.tol);
        if (!res.ok) res = newton_poly_form(seed, vac, eta, opts.max_iter, opts.tol);
        if (!res.ok) continue;
        ++report.converged_runs;
        try_accept(res.roots);
        // real-coefficient system: the conjugate multiset is also a solution
        std::vector<Complex> conj(res.roots);
        for (Complex& c : conj) c = std::conj(c);
        try_accept(conj);
    }

    // Degenerate candidates: repeated common roots of alpha and beta.
    for (const auto& droot : degeneracy_check(vac)) {
        if (auto sol = degenerate_solution(droot, m, vac, emap, eta)) {
            const auto canon = canonical_order(sol->roots);
            bool dup = false;
            for (const auto& f : found)
                if (multiset_distance(canon, f) < opts.dedup_tol * (1.0 + scale)) dup = true;
            if (!dup) {
                found.push_back(canon);
                report.solutions.push_back(std::move(*sol));
            }
        }
    }

    std::sort(report.solutions.begin(), report.solutions.end(),
              [](const BetheSolution& a, const BetheSolution& b) {
                  return a.energy.real() < b.energy.real();
              });
    return report;
}

std::pair<SymmetricBSSolution, SymmetricBSSolution> symmetric_bs(
    int m, double delta, double omega_f, const std::vector<Complex>& roots) {
    require(m >= 1, "symmetric_bs: M must be >= 1");
    const double md = static_cast<double>(m);
    const double disc = std::sqrt(delta * delta + md * md);

    auto make = [&](double sign) {
        SymmetricBSSolution s;
        s.m = m;
        s.delta = delta;
        s.omega_f = omega_f;
        s.kappa = (-delta + sign * disc) / md;
        s.energy = md * omega_f + sign * disc; // = Delta_+ + M kappa
        s.energy_from_vacuum = s.energy - delta;
        s.x = Complex{1.0, 0.0};
        s.y = Complex{s.kappa, 0.0};
        return s;
    };
    auto plus = make(+1.0);
    auto minus = make(-1.0);

    if (!roots.empty()) {
        require(static_cast<int>(roots.size()) == m, "symmetric_bs: need M roots");
        // elementary symmetric polynomials s_1..s_M
        std::vector<Complex> esym(m + 1, Complex{0.0, 0.0});
        esym[0] = 1.0;
        for (int k = 0; k < m; ++k)
            for (int j = k + 1; j >= 1; --j) esym[j] += roots[k] * esym[j - 1];
        Complex tail{1.0, 0.0};
        for (int k = 1; k <= m - 1; ++k) tail += esym[k];
        const Complex x = md * esym[m];
        const Complex y = -md * esym[m] + delta * tail;
        SymmetricBSSolution& target =
            (std::abs(y / x - plus.kappa) <= std::abs(y / x - minus.kappa)) ? plus : minus;
        target.x = x;
        target.y = y;
        target.symmetric_roots.assign(esym.begin() + 1, esym.end());
    }
    return {plus, minus};
}

std::vector<DegenerateRoot> degeneracy_check(const VacuumEigenPair& vac, double tol) {
    const auto ra = poly_roots(vac.alpha_coeffs);
    const auto rb = poly_roots(vac.beta_coeffs);
    const double scale_a = vac.alpha_coeffs.cwiseAbs().maxCoeff();
    const double scale_b = vac.beta_coeffs.cwiseAbs().maxCoeff();

    Eigen::VectorXcd da(vac.alpha_coeffs.size() - 1), db(vac.beta_coeffs.size() - 1);
    for (Eigen::Index k = 1; k < vac.alpha_coeffs.size(); ++k)
        da(k - 1) = static_cast<double>(k) * vac.alpha_coeffs(k);
    for (Eigen::Index k = 1; k < vac.beta_coeffs.size(); ++k)
        db(k - 1) = static_cast<double>(k) * vac.beta_coeffs(k);

    std::vector<DegenerateRoot> out;
    for (Complex a : ra) {
        for (Complex b : rb) {
            if (std::abs(a - b) > tol) continue;
            // refine on whichever polynomial is better conditioned here; the
            // companion matrix only resolves multiple roots to sqrt(eps)
            Complex root = 0.5 * (a + b);
            for (int it = 0; it < 4; ++it) {
                const Complex fa = poly_eval(vac.alpha_coeffs, root);
                const Complex fb = poly_eval(vac.beta_coeffs, root);
                const Complex ga = poly_eval(da, root);
                const Complex gb = poly_eval(db, root);
                if (std::abs(ga) >= std::abs(gb) && std::abs(ga) > 1e-12) {
                    root -= fa / ga;
                } else if (std::abs(gb) > 1e-12) {
                    root -= fb / gb;
                }
            }
            if (std::abs(root.imag()) < 1e-9) root = Complex(root.real(), 0.0);
            bool dup = false;
            for (const auto& d : out)
                if (std::abs(d.lambda1 - root) < 10.0 * tol) dup = true;
            if (dup) continue;
            DegenerateRoot d;
            d.lambda1 = root;
            d.alpha_residual = std::abs(vac.alpha(root)) / scale_a;
            d.beta_residual = std::abs(vac.beta(root)) / scale_b;
            out.push_back(d);
        }
    }
    return out;
}

std::optional<BetheSolution> degenerate_solution(const DegenerateRoot& root, int m,
                                                 const VacuumEigenPair& vac,
                                                 const EnergyMap& emap, double eta) {
    if (std::max(root.alpha_residual, root.beta_residual) > 1e-8) return std::nullopt;
    // The E_M = M E_1 ladder over a repeated root is a one-atom statement;
    // for multi-atom models the common root certifies the degeneracy
    // condition but does not label an eigenstate of every sector.
    if (m >= 2 && emap.n_atoms != 1) return std::nullopt;
    // The repeated-root state carries M times the one-particle energy; the
    // product form of Lambda is singular at coinciding roots, so the energy
    // comes from the ladder over the valid M=1 solution at the same root.
    auto lp1 = lambda_poly({root.lambda1}, vac, eta);
    if (lp1.remainder > 1e-8) return std::nullopt;

    BetheSolution sol;
    sol.roots.assign(static_cast<size_t>(m), root.lambda1);
    sol.lambda_coeffs = lp1.coeffs;
    sol.pole_remainder = lp1.remainder;
    sol.energy = static_cast<double>(m) * emap.energy(lp1.coeffs);
    sol.degenerate = true;
    sol.certificate_residual = std::max(root.alpha_residual, root.beta_residual);
    return sol;
}

} // namespace mrbethe::bethe
