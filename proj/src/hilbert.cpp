#include "mrbethe/hilbert.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace mrbethe::hilbert {

void SpaceSpec::validate() const {
    require(boson_cutoff >= 1, "SpaceSpec: boson_cutoff must be >= 1");
    require(n_atoms >= 0, "SpaceSpec: n_atoms must be >= 0");
    const double two_s = 2.0 * atom_spin;
    require(atom_spin > 0.0 && std::abs(two_s - std::round(two_s)) < 1e-12,
            "SpaceSpec: atom_spin must be a positive half-integer");
    if (deformation) {
        require(*deformation > 0.0 && std::abs(*deformation - 1.0) > 1e-14,
                "SpaceSpec: deformation q must be > 0 and != 1");
    }
}

std::string to_string(ModeKind kind) {
    switch (kind) {
        case ModeKind::Su11Boson:   return "su11_boson";
        case ModeKind::Boson:       return "boson";
        case ModeKind::Canonical:   return "canonical";
        case ModeKind::QOscillator: return "q_oscillator";
        case ModeKind::SpinSu2:     return "spin_su2";
        case ModeKind::QGeneral:    return "q_general";
    }
    return "unknown";
}

CentralElements central_elements(ModeKind kind) {
    switch (kind) {
        case ModeKind::SpinSu2:   return {1.0, 0.0};
        case ModeKind::Su11Boson: return {-1.0, 0.0};
        case ModeKind::Boson:     return {0.0, -1.0};
        case ModeKind::Canonical: return {0.0, 0.0};
        default:
            throw std::invalid_argument(
                "central_elements: not defined for q-deformed kinds");
    }
}

BosonOps boson_ops(const SpaceSpec& spec) {
    spec.validate();
    const int d = spec.mode_dim();
    Matrix b = Matrix::Zero(d, d);
    Matrix n = Matrix::Zero(d, d);
    for (int k = 1; k < d; ++k) b(k - 1, k) = std::sqrt(static_cast<double>(k));
    for (int k = 0; k < d; ++k) n(k, k) = static_cast<double>(k);
    return {b, b.adjoint(), n};
}

double q_bracket(double x, double q) {
    if (std::abs(q - 1.0) < 1e-14) return x;
    return (std::pow(q, x) - std::pow(q, -x)) / (q - 1.0 / q);
}

Quadratures quadratures(const SpaceSpec& spec) {
    const auto [b, bd, n] = boson_ops(spec);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Matrix x = (b + bd) * inv_sqrt2;
    Matrix p = (b - bd) * (inv_sqrt2 / kImag);
    return {x, p};
}

namespace {

// exp(i*theta*x) for Hermitian x, via eigendecomposition; unitary to machine
// precision below the cutoff band.
Matrix hermitian_phase(const Matrix& x, double theta) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(x);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("hermitian_phase: eigensolve failed");
    Vector phase(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < phase.size(); ++k)
        phase(k) = std::exp(kImag * theta * es.eigenvalues()(k));
    return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix q_boson_lowering(const SpaceSpec& spec, double q) {
    const int d = spec.mode_dim();
    Matrix bq = Matrix::Zero(d, d);
    for (int k = 1; k < d; ++k) bq(k - 1, k) = std::sqrt(q_bracket(k, q));
    return bq;
}

} // namespace

ModeOps mode_realization(ModeKind kind, const SpaceSpec& spec) {
    spec.validate();
    const bool needs_q = kind == ModeKind::QOscillator || kind == ModeKind::QGeneral;
    require(!needs_q || spec.deformation.has_value(),
            "mode_realization: q kind requires SpaceSpec::deformation");

    const int d = spec.mode_dim();
    switch (kind) {
        case ModeKind::Su11Boson: {
            const auto [b, bd, n] = boson_ops(spec);
            Matrix sqrt_n = Matrix::Zero(d, d);
            for (int k = 0; k < d; ++k) sqrt_n(k, k) = std::sqrt(static_cast<double>(k));
            Matrix sp = sqrt_n * bd;
            Matrix sm = b * sqrt_n;
            Matrix s3 = n + 0.5 * Matrix::Identity(d, d);
            return {sp, sm, s3, kind};
        }
        case ModeKind::Boson: {
            const auto [b, bd, n] = boson_ops(spec);
            return {bd, b, n, kind};
        }
        case ModeKind::Canonical: {
            // with the quadrature conventions fixed here,
            // [s3, exp(+ix)] = +exp(+ix), so the raising member is exp(+ix)
            const auto [x, p] = quadratures(spec);
            Matrix sp = hermitian_phase(x, +1.0);
            Matrix sm = hermitian_phase(x, -1.0);
            return {sp, sm, p + x, kind};
        }
        case ModeKind::QOscillator: {
            const double q = *spec.deformation;
            Matrix bq = q_boson_lowering(spec, q);
            const auto [b, bd, n] = boson_ops(spec);
            Matrix s3 = n + 0.5 * Matrix::Identity(d, d);
            return {bq.adjoint().eval(), bq, s3, kind};
        }
        case ModeKind::SpinSu2: {
            // Mode factor reinterpreted as a spin-j multiplet, 2j+1 = dim.
            const double j = 0.5 * spec.boson_cutoff;
            SpinOps s = spin_ops(j);
            require(s.sz.rows() == d, "mode_realization: spin_su2 dimension mismatch");
            return {s.sp, s.sm, s.sz, kind};
        }
        case ModeKind::QGeneral:
            throw std::invalid_argument(
                "mode_realization: the general trigonometric ancestor algebra is "
                "not specified by this model family; use q_oscillator or canonical");
    }
    throw std::invalid_argument("mode_realization: unknown kind");
}

SpinOps spin_ops(double s) {
    const double two_s = 2.0 * s;
    require(s > 0.0 && std::abs(two_s - std::round(two_s)) < 1e-12,
            "spin_ops: s must be a positive half-integer");
    const int d = static_cast<int>(two_s + 1.5);
    Matrix sp = Matrix::Zero(d, d);
    Matrix sz = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        const double m = -s + k;
        sz(k, k) = m;
        if (k + 1 < d) sp(k + 1, k) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
    }
    return {sp, sp.adjoint(), sz};
}

SpinOps coproduct_spin_q(int n_sites, double q) {
    require(n_sites >= 1, "coproduct_spin_q: n_sites must be >= 1");
    require(q > 0.0, "coproduct_spin_q: q must be > 0");

    Matrix sigma_p = Matrix::Zero(2, 2);
    sigma_p(1, 0) = 1.0; // basis |down>, |up>
    Matrix sigma_z = Matrix::Zero(2, 2);
    sigma_z(0, 0) = -1.0;
    sigma_z(1, 1) = 1.0;
    // tails q^{+-Sz} with spin-1/2 weights; the algebra closes on [2Sz]_q
    const double sq = std::sqrt(q);
    Matrix q_pos = Matrix::Zero(2, 2);
    q_pos(0, 0) = 1.0 / sq;
    q_pos(1, 1) = sq;
    Matrix q_neg = Matrix::Zero(2, 2);
    q_neg(0, 0) = sq;
    q_neg(1, 1) = 1.0 / sq;
    Matrix id2 = Matrix::Identity(2, 2);

    const long dim = 1L << n_sites;
    Matrix sp = Matrix::Zero(dim, dim);
    Matrix sz = Matrix::Zero(dim, dim);
    for (int j = 0; j < n_sites; ++j) {
        Matrix term_p = Matrix::Identity(1, 1);
        Matrix term_z = Matrix::Identity(1, 1);
        for (int k = 0; k < n_sites; ++k) {
            const Matrix& fp = (k < j) ? q_neg : (k == j ? sigma_p : q_pos);
            term_p = kron(term_p, fp);
            term_z = kron(term_z, k == j ? sigma_z : id2);
        }
        sp += term_p;
        sz += 0.5 * term_z;
    }
    return {sp, sp.adjoint(), sz};
}

Matrix embed(const Matrix& op, int slot, const SpaceSpec& spec) {
    spec.validate();
    require(slot >= 0 && slot < spec.n_slots(), "embed: slot out of range");
    require(op.rows() == op.cols() && op.rows() == spec.slot_dim(slot),
            "embed: operator dimension does not match slot dimension");
    Matrix out = Matrix::Identity(1, 1);
    for (int k = 0; k < spec.n_slots(); ++k) {
        if (k == slot) {
            out = kron(out, op);
        } else {
            const int d = spec.slot_dim(k);
            out = kron(out, Matrix::Identity(d, d));
        }
    }
    return out;
}

Matrix mode_projector(const SpaceSpec& spec, int n_max) {
    spec.validate();
    const int d = spec.mode_dim();
    Matrix p = Matrix::Zero(d, d);
    for (int k = 0; k <= n_max && k < d; ++k) p(k, k) = 1.0;
    return embed(p, 0, spec);
}

} // namespace mrbethe::hilbert
