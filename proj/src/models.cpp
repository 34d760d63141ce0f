#include "mrbethe/models.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace mrbethe::models {

using hilbert::boson_ops;
using hilbert::coproduct_spin_q;
using hilbert::embed;
using hilbert::mode_realization;
using hilbert::quadratures;
using hilbert::spin_ops;

Frequencies frequencies(const MRParams& params) {
    Frequencies f;
    f.w.reserve(params.inhom.size());
    for (double cj : params.inhom) f.w.push_back(params.alpha * (params.c10 - params.c20) * cj);
    f.omega_f = 0.0;
    for (double wj : f.w) f.omega_f += wj;
    const double shift = params.alpha * (params.c11 + params.c21);
    f.omega_a.reserve(f.w.size());
    for (double wj : f.w) f.omega_a.push_back(f.omega_f - wj + shift);
    return f;
}

void check_kind_consistency(const MRParams& params, ModeKind kind) {
    const auto ce = hilbert::central_elements(kind);
    if (std::abs(params.m_plus() - ce.m_plus) > 1e-12 ||
        std::abs(params.m_minus() - ce.m_minus) > 1e-12) {
        throw std::invalid_argument("MRParams central elements do not match the mode kind " +
                                    hilbert::to_string(kind));
    }
}

MRParams bs_params(double omega_f, double alpha, double delta, int n_atoms) {
    require(n_atoms >= 1, "bs_params: n_atoms must be >= 1");
    require(alpha != 0.0, "bs_params: alpha must be nonzero");
    MRParams p;
    p.c10 = 1.0;
    p.c20 = -1.0;
    // All atomic frequencies equal: c_j = omega_f / (2 alpha N_a),
    // and omega_a = omega_f - delta fixes c = c_j - delta/(2 alpha).
    const double cj = omega_f / (2.0 * alpha * n_atoms);
    p.c11 = p.c21 = cj - delta / (2.0 * alpha);
    p.alpha = alpha;
    p.inhom.assign(n_atoms, cj);
    return p;
}

MRParams jc_params(double omega_f, double alpha, double delta, int n_atoms) {
    require(n_atoms >= 1, "jc_params: n_atoms must be >= 1");
    require(alpha != 0.0, "jc_params: alpha must be nonzero");
    MRParams p;
    p.c10 = alpha;
    p.c20 = 0.0;
    p.c21 = -1.0 / alpha;
    p.alpha = alpha;
    const double cj = omega_f / (alpha * alpha * n_atoms);
    // omega_a = omega_f - w_j + alpha (c - 1/alpha)
    p.c11 = (-delta + alpha * alpha * cj + 1.0) / alpha;
    p.inhom.assign(n_atoms, cj);
    return p;
}

OperatorMatrix build_H_MR(const MRParams& params, ModeKind kind, const SpaceSpec& spec) {
    spec.validate();
    check_kind_consistency(params, kind);
    require(params.n_atoms() == spec.n_atoms,
            "build_H_MR: inhomogeneity count must equal n_atoms");

    const auto mode = mode_realization(kind, spec);
    const auto spin = spin_ops(spec.atom_spin);
    const auto f = frequencies(params);
    const double a = params.alpha;
    const double csum = params.c10 + params.c20;

    Matrix sp = embed(mode.sp, 0, spec);
    Matrix sm = embed(mode.sm, 0, spec);
    Matrix s3 = embed(mode.s3, 0, spec);

    std::vector<Matrix> Sp(spec.n_atoms), Sm(spec.n_atoms), Sz(spec.n_atoms);
    for (int j = 0; j < spec.n_atoms; ++j) {
        Sp[j] = embed(spin.sp, j + 1, spec);
        Sm[j] = embed(spin.sm, j + 1, spec);
        Sz[j] = embed(spin.sz, j + 1, spec);
    }

    Matrix H = f.omega_f * s3;
    for (int j = 0; j < spec.n_atoms; ++j) {
        H += f.omega_a[j] * Sz[j];
        H += a * (sp * Sm[j] + sm * Sp[j] + csum * s3 * Sz[j]);
    }
    for (int i = 0; i < spec.n_atoms; ++i)
        for (int j = i + 1; j < spec.n_atoms; ++j)
            H += a * (csum * Sz[i] * Sz[j] + params.c10 * Sm[i] * Sp[j] +
                      params.c20 * Sp[i] * Sm[j]);

    return {std::move(H), spec};
}

OperatorMatrix build_H_BS(double omega_f, double alpha, double delta,
                          const SpaceSpec& spec) {
    spec.validate();
    require(spec.n_atoms >= 1, "build_H_BS: n_atoms must be >= 1");

    const auto mode = mode_realization(ModeKind::Su11Boson, spec);
    const auto spin = spin_ops(spec.atom_spin);
    const double omega_a = omega_f - delta;

    Matrix sp = embed(mode.sp, 0, spec);
    Matrix sm = embed(mode.sm, 0, spec);
    Matrix H = omega_f * embed(mode.s3, 0, spec);

    std::vector<Matrix> Sp(spec.n_atoms), Sm(spec.n_atoms);
    for (int j = 0; j < spec.n_atoms; ++j) {
        Sp[j] = embed(spin.sp, j + 1, spec);
        Sm[j] = embed(spin.sm, j + 1, spec);
        H += omega_a * embed(spin.sz, j + 1, spec);
        H += alpha * (sp * Sm[j] + sm * Sp[j]);
    }
    for (int i = 0; i < spec.n_atoms; ++i)
        for (int j = i + 1; j < spec.n_atoms; ++j)
            H += alpha * (Sm[i] * Sp[j] - Sp[i] * Sm[j]);

    return {std::move(H), spec};
}

OperatorMatrix build_H_JC(double omega_f, double alpha, double delta,
                          const SpaceSpec& spec) {
    spec.validate();
    require(spec.n_atoms >= 1, "build_H_JC: n_atoms must be >= 1");

    const auto params = jc_params(omega_f, alpha, delta, spec.n_atoms);
    const auto f = frequencies(params);
    const auto [b, bd, n] = boson_ops(spec);
    const auto spin = spin_ops(spec.atom_spin);

    Matrix sp = embed(bd, 0, spec);
    Matrix sm = embed(b, 0, spec);
    Matrix s3 = embed(n, 0, spec);

    Matrix H = f.omega_f * s3;
    std::vector<Matrix> Sp(spec.n_atoms), Sm(spec.n_atoms), Sz(spec.n_atoms);
    for (int j = 0; j < spec.n_atoms; ++j) {
        Sp[j] = embed(spin.sp, j + 1, spec);
        Sm[j] = embed(spin.sm, j + 1, spec);
        Sz[j] = embed(spin.sz, j + 1, spec);
        H += f.omega_a[j] * Sz[j];
        H += alpha * (sp * Sm[j] + sm * Sp[j]) + alpha * alpha * s3 * Sz[j];
    }
    for (int i = 0; i < spec.n_atoms; ++i)
        for (int j = i + 1; j < spec.n_atoms; ++j)
            H += alpha * alpha * (Sz[i] * Sz[j] + Sm[i] * Sp[j]);

    return {std::move(H), spec};
}

OperatorMatrix build_H_TI(double omega_f, double omega_a, double alpha,
                          const SpaceSpec& spec) {
    spec.validate();
    require(spec.n_atoms == 1, "build_H_TI: defined at one atom site only");

    const auto mode = mode_realization(ModeKind::Canonical, spec);
    const auto [x, p] = quadratures(spec);
    const auto spin = spin_ops(spec.atom_spin);

    Matrix Sz = embed(spin.sz, 1, spec);
    Matrix Sp = embed(spin.sp, 1, spec);
    Matrix Sm = embed(spin.sm, 1, spec);
    // exp(-ix) = lowering member of the canonical triple as realized here.
    Matrix e_minus = embed(mode.sm, 0, spec);
    Matrix e_plus = embed(mode.sp, 0, spec);
    Matrix X = embed(x, 0, spec);
    Matrix P = embed(p, 0, spec);

    Matrix H = (omega_a - omega_f) * Sz + Sz * Sz +
               alpha * (e_minus * Sp + e_plus * Sm) +
               0.5 * (P * P + X * X) + X * P;
    return {std::move(H), spec};
}

namespace {

// f(X) for Hermitian X via eigendecomposition.
template <typename F>
Matrix hermitian_function(const Matrix& x, F&& fn) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(x);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("hermitian_function: eigensolve failed");
    Vector vals(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < vals.size(); ++k) vals(k) = fn(es.eigenvalues()(k));
    return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

struct QRealization {
    Matrix sp, sm, s3; // mode, embedded
    Matrix Sp, Sm, Sz; // quantum-group spin, embedded
};

QRealization q_realization(const QMRParams& qp, QReduction red, const SpaceSpec& spec) {
    require(red != QReduction::General,
            "build_H_qMR: the general trigonometric ancestor is not constructible "
            "from this model family");
    require(spec.n_atoms >= 1, "build_H_qMR: n_atoms must be >= 1");
    require(std::abs(spec.atom_spin - 0.5) < 1e-12,
            "build_H_qMR: quantum-group spin realization requires spin-1/2 atoms");
    require(spec.deformation.has_value() || red == QReduction::QTI,
            "build_H_qMR: SpaceSpec must carry the deformation q");

    const double q = spec.deformation.value_or(qp.q);
    QRealization r;

    // Quantum-group spin over all atom sites. Atom slots are contiguous, so
    // the coproduct chain embeds as identity_mode (x) chain.
    auto cp = coproduct_spin_q(spec.n_atoms, q);
    const int md = spec.mode_dim();
    r.Sp = kron(Matrix::Identity(md, md), cp.sp);
    r.Sm = kron(Matrix::Identity(md, md), cp.sm);
    r.Sz = kron(Matrix::Identity(md, md), cp.sz);

    switch (red) {
        case QReduction::QBS: {
            auto mo = mode_realization(ModeKind::QOscillator, spec);
            Matrix bracket_n = Matrix::Zero(md, md);
            for (int k = 0; k < md; ++k) bracket_n(k, k) = std::sqrt(hilbert::q_bracket(k, q));
            r.sp = embed((bracket_n * mo.sp).eval(), 0, spec);
            r.sm = embed((mo.sm * bracket_n).eval(), 0, spec);
            r.s3 = embed(mo.s3, 0, spec);
            break;
        }
        case QReduction::QJC: {
            auto mo = mode_realization(ModeKind::QOscillator, spec);
            auto bo = boson_ops(spec);
            r.sp = embed(mo.sp, 0, spec);
            r.sm = embed(mo.sm, 0, spec);
            r.s3 = embed(bo.n, 0, spec);
            break;
        }
        case QReduction::QTI: {
            auto mo = mode_realization(ModeKind::Canonical, spec);
            r.sp = embed(mo.sp, 0, spec);
            r.sm = embed(mo.sm, 0, spec);
            r.s3 = embed(mo.s3, 0, spec);
            break;
        }
        case QReduction::General:
            break;
    }
    return r;
}

Complex reduction_c0(const QMRParams& qp, QReduction red) {
    switch (red) {
        case QReduction::QBS: return Complex{0.0, 0.0};
        case QReduction::QJC: return kImag;
        case QReduction::QTI: return kImag;
        default: return qp.c0;
    }
}

double reduction_c(const QMRParams& qp, QReduction red) {
    switch (red) {
        case QReduction::QBS: return qp.c;
        case QReduction::QJC: return 1.0;
        case QReduction::QTI: return 0.0;
        default: return qp.c;
    }
}

} // namespace

Matrix q_charge(const QMRParams& qp, QReduction red, const SpaceSpec& spec) {
    auto r = q_realization(qp, red, spec);
    const long dim = spec.total_dim();
    return r.s3 + r.Sz + qp.omega * Matrix::Identity(dim, dim);
}

OperatorMatrix build_H_qMR(const QMRParams& qp, QReduction red, const SpaceSpec& spec) {
    spec.validate();
    auto r = q_realization(qp, red, spec);
    const long dim = spec.total_dim();
    const Complex c0 = reduction_c0(qp, red);
    const double c = reduction_c(qp, red);
    const double a = qp.alpha;

    Matrix X = r.s3 + r.Sz + qp.omega * Matrix::Identity(dim, dim);
    Matrix H = (-kImag * c0) * hermitian_function(X, [a](double v) { return std::cos(a * v); });
    if (c != 0.0)
        H += c * hermitian_function(X, [a](double v) { return std::sin(a * v); });
    H += std::sin(a) * (r.sp * r.Sm + r.sm * r.Sp);
    return {std::move(H), spec};
}

OperatorMatrix conserved_charge(ModeKind kind, const SpaceSpec& spec) {
    spec.validate();
    const auto mode = mode_realization(kind, spec);
    const auto spin = spin_ops(spec.atom_spin);
    Matrix C = embed(mode.s3, 0, spec);
    for (int j = 0; j < spec.n_atoms; ++j) C += embed(spin.sz, j + 1, spec);
    return {std::move(C), spec};
}

double kappa0(const OperatorMatrix& H) {
    return -H.mat(0, 0).real();
}

} // namespace mrbethe::models
