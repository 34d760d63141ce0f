#include "mrbethe/commands.hpp"

#include <json.hpp>

#include <Eigen/Eigenvalues>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace mrbethe::cli {

using nlohmann::json;

namespace {

// ------------------------------- CSV writer ---------------------------------

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path) {
        if (!out_) throw std::runtime_error("cannot open output file " + path);
    }

    void row(const std::vector<std::string>& fields) {
        for (size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ',';
            out_ << quoted(fields[i]);
        }
        out_ << '\n';
    }

private:
    static std::string quoted(const std::string& f) {
        if (f.find_first_of(",\"\n") == std::string::npos) return f;
        std::string q = "\"";
        for (char c : f) {
            if (c == '"') q += '"';
            q += c;
        }
        return q + "\"";
    }
    std::ofstream out_;
};

std::string fmt(double v) { return format_double(v); }

json config_echo(const RunConfig& cfg) {
    json j;
    j["model"] = to_string(cfg.model);
    j["na"] = cfg.n_atoms;
    j["spin"] = cfg.spin;
    j["omega_f"] = cfg.omega_f;
    j["alpha"] = cfg.alpha;
    if (cfg.delta) j["delta"] = *cfg.delta;
    if (cfg.omega_a) j["omega_a"] = *cfg.omega_a;
    if (cfg.raw_c) j["raw_c"] = *cfg.raw_c;
    j["cutoff"] = cfg.boson_cutoff;
    if (cfg.q) j["q"] = *cfg.q;
    j["sectors"] = cfg.sectors;
    j["t_max"] = cfg.t_max;
    j["steps"] = cfg.t_steps;
    j["out"] = cfg.out;
    j["seed"] = cfg.seed;
    j["delta_min"] = cfg.delta_min;
    j["delta_max"] = cfg.delta_max;
    j["delta_steps"] = cfg.delta_steps;
    return j;
}

void write_record(const RunConfig& cfg, const std::string& command, json results) {
    json rec;
    rec["version"] = kVersion;
    rec["command"] = command;
    rec["config"] = config_echo(cfg);
    rec["results"] = std::move(results);
    std::ofstream out(cfg.out + ".json");
    if (!out) throw std::runtime_error("cannot open record file " + cfg.out + ".json");
    out << rec.dump(2) << '\n';
}

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

models::MRParams params_from_omega_list(ModelId id, double omega_f, double alpha,
                                        const std::vector<double>& omega_a) {
    const int na = static_cast<int>(omega_a.size());
    models::MRParams p;
    double sum_wa = 0.0;
    for (double w : omega_a) sum_wa += w;
    if (id == ModelId::BS) {
        p.c10 = 1.0;
        p.c20 = -1.0;
        const double c = (omega_f * (1.0 - na) + sum_wa) / (2.0 * na * alpha);
        p.c11 = p.c21 = c;
        for (double wa : omega_a)
            p.inhom.push_back((omega_f - wa + 2.0 * alpha * c) / (2.0 * alpha));
    } else { // JC
        p.c10 = alpha;
        p.c20 = 0.0;
        p.c21 = -1.0 / alpha;
        const double shift = (omega_f * (1.0 - na) + sum_wa) / na; // alpha*c11 - 1
        p.c11 = (shift + 1.0) / alpha;
        for (double wa : omega_a)
            p.inhom.push_back((omega_f - wa + shift) / (alpha * alpha));
    }
    p.alpha = alpha;
    return p;
}

hilbert::ModeKind kind_from_central(const models::MRParams& p) {
    const double mp = p.m_plus();
    const double mm = p.m_minus();
    auto close = [](double a, double b) { return std::abs(a - b) < 1e-9; };
    if (close(mp, 1.0) && close(mm, 0.0)) return hilbert::ModeKind::SpinSu2;
    if (close(mp, -1.0) && close(mm, 0.0)) return hilbert::ModeKind::Su11Boson;
    if (close(mp, 0.0) && close(mm, -1.0)) return hilbert::ModeKind::Boson;
    if (close(mp, 0.0) && close(mm, 0.0)) return hilbert::ModeKind::Canonical;
    throw std::invalid_argument(
        "raw c-parameters do not reduce to a supported mode algebra");
}

} // namespace

ModelInstance build_model(const RunConfig& cfg) {
    hilbert::SpaceSpec space;
    space.boson_cutoff = cfg.boson_cutoff;
    space.n_atoms = cfg.n_atoms;
    space.atom_spin = cfg.spin;
    if (cfg.q) space.deformation = cfg.q;

    ModelInstance inst{models::OperatorMatrix{Matrix{}, space}, space};

    switch (cfg.model) {
        case ModelId::BS: {
            inst.kind = hilbert::ModeKind::Su11Boson;
            if (cfg.delta) {
                inst.params = models::bs_params(cfg.omega_f, cfg.alpha, *cfg.delta, cfg.n_atoms);
                inst.H = models::build_H_BS(cfg.omega_f, cfg.alpha, *cfg.delta, space);
            } else if (cfg.omega_a) {
                inst.params = params_from_omega_list(ModelId::BS, cfg.omega_f, cfg.alpha, *cfg.omega_a);
                inst.H = models::build_H_MR(*inst.params, inst.kind, space);
            } else {
                throw std::invalid_argument("bs model: provide delta or omega_a");
            }
            inst.bethe_solvable = true;
            break;
        }
        case ModelId::JC: {
            inst.kind = hilbert::ModeKind::Boson;
            if (cfg.delta) {
                inst.params = models::jc_params(cfg.omega_f, cfg.alpha, *cfg.delta, cfg.n_atoms);
                inst.H = models::build_H_JC(cfg.omega_f, cfg.alpha, *cfg.delta, space);
            } else if (cfg.omega_a) {
                inst.params = params_from_omega_list(ModelId::JC, cfg.omega_f, cfg.alpha, *cfg.omega_a);
                inst.H = models::build_H_MR(*inst.params, inst.kind, space);
            } else {
                throw std::invalid_argument("jc model: provide delta or omega_a");
            }
            inst.bethe_solvable = true;
            break;
        }
        case ModelId::TI: {
            inst.kind = hilbert::ModeKind::Canonical;
            const double omega_a =
                cfg.omega_a ? cfg.omega_a->front() : cfg.omega_f - cfg.delta.value_or(0.0);
            inst.H = models::build_H_TI(cfg.omega_f, omega_a, cfg.alpha, space);
            inst.sectored = false;
            break;
        }
        case ModelId::QBS:
        case ModelId::QJC:
        case ModelId::QTI: {
            models::QMRParams qp;
            qp.alpha = cfg.alpha;
            qp.q = *cfg.q;
            const auto red = cfg.model == ModelId::QBS   ? models::QReduction::QBS
                             : cfg.model == ModelId::QJC ? models::QReduction::QJC
                                                         : models::QReduction::QTI;
            inst.kind = cfg.model == ModelId::QTI ? hilbert::ModeKind::Canonical
                                                  : hilbert::ModeKind::QOscillator;
            inst.H = models::build_H_qMR(qp, red, space);
            inst.sectored = cfg.model != ModelId::QTI;
            break;
        }
        case ModelId::RawMR: {
            const auto& c = *cfg.raw_c;
            models::MRParams p;
            p.c10 = c[0];
            p.c20 = c[1];
            p.c11 = c[2];
            p.c21 = c[3];
            p.alpha = cfg.alpha;
            p.inhom.assign(c.begin() + 4, c.end());
            inst.kind = kind_from_central(p);
            inst.params = p;
            inst.H = models::build_H_MR(p, inst.kind, space);
            inst.bethe_solvable = inst.kind != hilbert::ModeKind::Canonical;
            inst.sectored = inst.kind != hilbert::ModeKind::Canonical;
            break;
        }
    }
    inst.kappa0 = models::kappa0(inst.H);
    return inst;
}

BetheEngine make_bethe_engine(const ModelInstance& inst) {
    require(inst.bethe_solvable && inst.params.has_value(),
            "Bethe machinery is available for rational sectored models only");
    BetheEngine eng{lax::vacuum_eigen(*inst.params, inst.kind, inst.space), {}};
    const auto charges =
        lax::charges_from_transfer(*inst.params, inst.kind, inst.space, inst.H.mat);
    eng.emap = bethe::EnergyMap::from(eng.vac, inst.params->alpha, inst.space.n_atoms,
                                      std::abs(charges.fit_a) > 1e-9 ? charges.fit_a : 0.0);
    return eng;
}

namespace {

std::vector<bethe::BetheSolution> solve_sector(const BetheEngine& eng, int m,
                                               std::uint64_t seed, int* attempted = nullptr,
                                               int* converged = nullptr) {
    if (m == 0) return {};
    if (m == 1) return bethe::solve_M1(eng.vac, eng.emap);
    bethe::SolveOptions opts;
    opts.seed = seed + static_cast<std::uint64_t>(m);
    auto rep = bethe::solve_M_general(eng.vac, m, eng.emap, opts);
    if (attempted) *attempted += rep.attempted_runs;
    if (converged) *converged += rep.converged_runs;
    return std::move(rep.solutions);
}

} // namespace

int cmd_spectrum(const RunConfig& cfg) {
    const auto inst = build_model(cfg);
    CsvWriter csv(cfg.out);
    csv.row({"sector_M", "index", "energy_re", "energy_im", "source", "abs_diff"});

    json results;
    results["kappa0"] = inst.kappa0;
    json sectors_json = json::array();

    if (!inst.sectored) {
        Eigen::ComplexEigenSolver<Matrix> es(inst.H.mat, false);
        if (es.info() != Eigen::Success) return kExitNumerical;
        Eigen::VectorXcd ev = es.eigenvalues();
        std::vector<Complex> sorted(ev.data(), ev.data() + ev.size());
        std::sort(sorted.begin(), sorted.end(), [](Complex a, Complex b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });
        for (size_t i = 0; i < sorted.size(); ++i)
            csv.row({"-1", std::to_string(i), fmt(sorted[i].real()), fmt(sorted[i].imag()),
                     "oracle", ""});
        results["note"] = "canonical-mode model: full spectrum, no charge sectors";
        write_record(cfg, "spectrum", results);
        return kExitOk;
    }

    std::optional<BetheEngine> eng;
    if (inst.bethe_solvable) eng = make_bethe_engine(inst);

    for (int m : cfg.sectors) {
        const auto sector = oracle::sector_basis(inst.space, m);
        const auto rep = oracle::diag_sector(inst.H, sector, inst.kappa0);

        json sj;
        sj["M"] = m;
        sj["dim"] = sector.dim();

        if (eng && m >= 1) {
            auto sols = solve_sector(*eng, m, cfg.seed);
            const auto cmp = oracle::compare_bethe_vs_exact(sols, rep, 1e-8);
            int idx = 0;
            for (const auto& row : cmp.matched) {
                csv.row({std::to_string(m), std::to_string(idx), fmt(row.oracle_energy.real()),
                         fmt(row.oracle_energy.imag()), "oracle", fmt(row.abs_diff)});
                csv.row({std::to_string(m), std::to_string(idx), fmt(row.bethe_energy.real()),
                         fmt(row.bethe_energy.imag()), "bethe", fmt(row.abs_diff)});
                ++idx;
            }
            for (const auto& e : cmp.unmatched_oracle) {
                csv.row({std::to_string(m), std::to_string(idx++), fmt(e.real()), fmt(e.imag()),
                         "oracle", ""});
            }
            sj["bethe_solutions"] = sols.size();
            sj["max_diff"] = cmp.max_diff;
            sj["complete"] = cmp.complete;
        } else {
            for (int i = 0; i < rep.eigenvalues.size(); ++i)
                csv.row({std::to_string(m), std::to_string(i), fmt(rep.eigenvalues(i).real()),
                         fmt(rep.eigenvalues(i).imag()), "oracle", ""});
        }
        sectors_json.push_back(sj);
    }
    results["sectors"] = sectors_json;
    write_record(cfg, "spectrum", results);
    return kExitOk;
}

int cmd_bethe(const RunConfig& cfg) {
    const auto inst = build_model(cfg);
    if (!inst.bethe_solvable) {
        std::cerr << "bethe: model has no rational Bethe solver (pseudovacuum unavailable)\n";
        return kExitConfig;
    }
    const auto eng = make_bethe_engine(inst);

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> box(-2.0, 2.0);

    json results;
    results["kappa0"] = inst.kappa0;
    results["degenerate_roots"] = json::array();
    for (const auto& d : bethe::degeneracy_check(eng.vac)) {
        results["degenerate_roots"].push_back({{"lambda1", complex_json(d.lambda1)},
                                               {"alpha_residual", d.alpha_residual},
                                               {"beta_residual", d.beta_residual}});
    }

    int attempted = 0, converged = 0;
    json sols_json = json::array();
    for (int m : cfg.sectors) {
        if (m == 0) continue;
        auto sols = solve_sector(eng, m, cfg.seed, &attempted, &converged);
        for (const auto& sol : sols) {
            json sj;
            sj["M"] = m;
            sj["energy"] = complex_json(sol.energy);
            sj["degenerate"] = sol.degenerate;
            sj["pole_remainder"] = sol.pole_remainder;
            sj["roots"] = json::array();
            for (Complex r : sol.roots) sj["roots"].push_back(complex_json(r));
            sj["residuals"] = json::array();
            for (Complex r : sol.residuals) sj["residuals"].push_back(std::abs(r));
            sj["lambda_spot_checks"] = json::array();
            for (int k = 0; k < 3; ++k) {
                const Complex L(box(rng), box(rng));
                const Complex val =
                    bethe::eigenvalue_Lambda(L, sol.roots, eng.vac, lax::RKind::Rational);
                sj["lambda_spot_checks"].push_back(
                    {{"lambda", complex_json(L)}, {"value", complex_json(val)}});
            }
            sols_json.push_back(std::move(sj));
        }
    }
    results["solutions"] = std::move(sols_json);
    results["newton_attempted"] = attempted;
    results["newton_converged"] = converged;
    if (attempted > 0 && converged == 0) {
        results["warning"] = "Newton budget exhausted without convergence";
        std::cerr << "bethe: warning: Newton budget exhausted without convergence\n";
    }

    std::ofstream out(cfg.out);
    if (!out) return kExitNumerical;
    json rec;
    rec["version"] = kVersion;
    rec["command"] = "bethe";
    rec["config"] = config_echo(cfg);
    rec["results"] = std::move(results);
    out << rec.dump(2) << '\n';
    return kExitOk;
}

int cmd_rabi(const RunConfig& cfg) {
    const auto inst = build_model(cfg);
    if (!inst.sectored) {
        std::cerr << "rabi: canonical-mode models have no charge sectors\n";
        return kExitConfig;
    }
    const int m = cfg.sectors.empty() ? 1 : cfg.sectors.front();
    const auto sector = oracle::sector_basis(inst.space, m);

    // photon-seeded initial state |m; all atoms ground>, projector the same
    int idx0 = -1;
    for (int i = 0; i < sector.dim(); ++i) {
        bool ground = true;
        for (int a : sector.atom_idx[i]) ground = ground && a == 0;
        if (ground && sector.boson_occ[i] == m) idx0 = i;
    }
    if (idx0 < 0) {
        std::cerr << "rabi: no photon-seeded basis state in sector " << m << "\n";
        return kExitConfig;
    }
    Vector psi0 = Vector::Zero(sector.dim());
    psi0(idx0) = 1.0;

    std::vector<double> t_grid(cfg.t_steps);
    for (int i = 0; i < cfg.t_steps; ++i)
        t_grid[i] = cfg.t_max * static_cast<double>(i) / (cfg.t_steps - 1);

    const auto evo = dynamics::evolve(inst.H, sector, psi0, {psi0}, t_grid);
    dynamics::RabiOptions ropts;
    ropts.window = cfg.t_max;
    const auto spec = dynamics::rabi_spectrum(evo.eigen, psi0, psi0, ropts);

    CsvWriter csv(cfg.out);
    csv.row({"t", "P"});
    for (size_t i = 0; i < t_grid.size(); ++i)
        csv.row({fmt(t_grid[i]), fmt(evo.probabilities[0][i])});

    json results;
    results["classification"] = spec.regime == dynamics::RabiRegime::Irregular
                                    ? "irregular"
                                    : std::to_string(spec.n_transitions);
    results["jordan_fallback"] = evo.jordan_fallback;
    results["peaks"] = json::array();
    for (const auto& p : spec.peaks)
        results["peaks"].push_back({{"frequency", p.frequency}, {"weight", p.weight}});
    write_record(cfg, "rabi", results);
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
    const auto inst = build_model(cfg);
    if (!inst.params) {
        std::cerr << "verify: Yang-Baxter checks need a rational Lax model\n";
        return kExitConfig;
    }

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> box(-1.5, 1.5);

    CsvWriter csv(cfg.out);
    csv.row({"lambda_re", "lambda_im", "mu_re", "mu_im", "pure_rational", "pure_trig",
             "rtt_residual", "tau_comm_residual"});

    const lax::RMatrix rat{lax::RKind::Rational, 1.0};
    const lax::RMatrix trig{lax::RKind::Trigonometric, 0.7};

    double worst_pure = 0.0, worst_rtt = 0.0, worst_comm = 0.0;
    const int draws = 8;
    for (int k = 0; k < draws; ++k) {
        const Complex l(box(rng), box(rng));
        const Complex u(box(rng), box(rng));
        const double pr = lax::pure_ybe_residual(rat, l, u);
        const double pt = lax::pure_ybe_residual(trig, l, u);
        const auto rep = lax::check_ybe(l, u, *inst.params, inst.kind, inst.space);
        worst_pure = std::max({worst_pure, pr, pt});
        worst_rtt = std::max(worst_rtt, rep.rtt_residual);
        worst_comm = std::max(worst_comm, rep.tau_comm_residual);
        csv.row({fmt(l.real()), fmt(l.imag()), fmt(u.real()), fmt(u.imag()), fmt(pr), fmt(pt),
                 fmt(rep.rtt_residual), fmt(rep.tau_comm_residual)});
    }

    const bool pass = worst_pure < 1e-12 && worst_rtt < 1e-10 && worst_comm < 1e-10;
    json results;
    results["worst_pure_ybe"] = worst_pure;
    results["worst_rtt"] = worst_rtt;
    results["worst_tau_comm"] = worst_comm;
    results["pass"] = pass;
    write_record(cfg, "verify", results);
    std::cout << (pass ? "PASS" : "FAIL") << " pure=" << worst_pure << " rtt=" << worst_rtt
              << " tau_comm=" << worst_comm << "\n";
    return pass ? kExitOk : kExitNumerical;
}

int cmd_sweep(const RunConfig& cfg) {
    if (cfg.model != ModelId::BS) {
        std::cerr << "sweep: the VRS scan is defined for the bs model\n";
        return kExitConfig;
    }
    hilbert::SpaceSpec space;
    space.boson_cutoff = cfg.boson_cutoff;
    space.n_atoms = cfg.n_atoms;
    space.atom_spin = cfg.spin;

    std::vector<double> deltas(cfg.delta_steps);
    for (int i = 0; i < cfg.delta_steps; ++i) {
        deltas[i] = cfg.delta_steps == 1
                        ? cfg.delta_min
                        : cfg.delta_min +
                              (cfg.delta_max - cfg.delta_min) * i / (cfg.delta_steps - 1.0);
    }
    const auto scan = dynamics::vrs_scan(cfg.omega_f, cfg.alpha, deltas, space);

    CsvWriter csv(cfg.out);
    std::vector<std::string> header{"delta"};
    const int dim = scan.rows.empty() ? 0 : static_cast<int>(scan.rows[0].eigenvalues.size());
    for (int k = 0; k < dim; ++k) {
        header.push_back("e" + std::to_string(k) + "_re");
        header.push_back("e" + std::to_string(k) + "_im");
    }
    header.push_back("discriminant");
    csv.row(header);
    for (const auto& row : scan.rows) {
        std::vector<std::string> fields{fmt(row.delta)};
        for (int k = 0; k < dim; ++k) {
            fields.push_back(fmt(row.eigenvalues(k).real()));
            fields.push_back(fmt(row.eigenvalues(k).imag()));
        }
        fields.push_back(fmt(row.discriminant));
        csv.row(fields);
    }

    json results;
    results["exceptional_deltas"] = scan.exceptional_deltas;
    write_record(cfg, "sweep", results);
    return kExitOk;
}

int cmd_compare(const RunConfig& cfg) {
    const auto inst = build_model(cfg);
    if (!inst.bethe_solvable) {
        std::cerr << "compare: model has no rational Bethe solver\n";
        return kExitConfig;
    }
    const auto eng = make_bethe_engine(inst);

    CsvWriter csv(cfg.out);
    csv.row({"sector_M", "bethe_re", "bethe_im", "oracle_re", "oracle_im", "abs_diff"});

    bool complete = true;
    double max_diff = 0.0;
    json sectors_json = json::array();
    for (int m : cfg.sectors) {
        if (m == 0) continue;
        const auto sector = oracle::sector_basis(inst.space, m);
        const auto rep = oracle::diag_sector(inst.H, sector, inst.kappa0);
        auto sols = solve_sector(eng, m, cfg.seed);
        const auto cmp = oracle::compare_bethe_vs_exact(sols, rep, 1e-8);
        for (const auto& row : cmp.matched)
            csv.row({std::to_string(m), fmt(row.bethe_energy.real()), fmt(row.bethe_energy.imag()),
                     fmt(row.oracle_energy.real()), fmt(row.oracle_energy.imag()),
                     fmt(row.abs_diff)});
        for (const auto& e : cmp.unmatched_oracle)
            csv.row({std::to_string(m), "", "", fmt(e.real()), fmt(e.imag()), ""});
        complete = complete && cmp.complete;
        max_diff = std::max(max_diff, cmp.max_diff);
        sectors_json.push_back({{"M", m},
                                {"complete", cmp.complete},
                                {"max_diff", cmp.max_diff},
                                {"unmatched_oracle", cmp.unmatched_oracle.size()}});
    }

    json results;
    results["complete"] = complete;
    results["max_diff"] = max_diff;
    results["sectors"] = std::move(sectors_json);
    write_record(cfg, "compare", results);
    return complete ? kExitOk : kExitNumerical;
}

int run_command(const std::string& name, const RunConfig& cfg) {
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    try {
        if (name == "spectrum") return cmd_spectrum(cfg);
        if (name == "bethe") return cmd_bethe(cfg);
        if (name == "rabi") return cmd_rabi(cfg);
        if (name == "verify") return cmd_verify(cfg);
        if (name == "sweep") return cmd_sweep(cfg);
        if (name == "compare") return cmd_compare(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    std::cerr << "unknown command: " << name << "\n";
    return kExitConfig;
}

} // namespace mrbethe::cli
