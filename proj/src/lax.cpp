#include "mrbethe/lax.hpp"

#include <Eigen/LU>

#include <cmath>

namespace mrbethe::lax {

using hilbert::embed;
using hilbert::mode_realization;
using hilbert::spin_ops;

Eigen::Matrix4cd RMatrix::operator()(Complex u) const {
    Eigen::Matrix4cd r = Eigen::Matrix4cd::Zero();
    if (kind == RKind::Rational) {
        // u I + eta P, P the permutation on C^2 (x) C^2
        r(0, 0) = r(3, 3) = u + eta;
        r(1, 1) = r(2, 2) = u;
        r(1, 2) = r(2, 1) = eta;
    } else {
        r(0, 0) = r(3, 3) = std::sin(u + eta);
        r(1, 1) = r(2, 2) = std::sin(u);
        r(1, 2) = r(2, 1) = std::sin(Complex(eta, 0.0));
    }
    return r;
}

namespace {

// Embed a 4x4 two-site operator into C^2 x C^2 x C^2 at sites (i, j).
Eigen::MatrixXcd embed_pair(const Eigen::Matrix4cd& r, int site_a, int site_b) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(8, 8);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int ap = 0; ap < 2; ++ap)
                    for (int bp = 0; bp < 2; ++bp)
                        for (int cp = 0; cp < 2; ++cp) {
                            int idx[3] = {a, b, c};
                            int jdx[3] = {ap, bp, cp};
                            int rest = -1;
                            for (int k = 0; k < 3; ++k)
                                if (k != site_a && k != site_b) rest = k;
                            if (idx[rest] != jdx[rest]) continue;
                            const int row = 2 * idx[site_a] + idx[site_b];
                            const int col = 2 * jdx[site_a] + jdx[site_b];
                            out(4 * a + 2 * b + c, 4 * ap + 2 * bp + cp) += r(row, col);
                        }
    return out;
}

} // namespace

double pure_ybe_residual(const RMatrix& r, Complex lambda, Complex mu) {
    const auto r12 = embed_pair(r(lambda - mu), 0, 1);
    const auto r13 = embed_pair(r(lambda), 0, 2);
    const auto r23 = embed_pair(r(mu), 1, 2);
    return max_abs(r12 * r13 * r23 - r23 * r13 * r12);
}

const Matrix& LaxOperator::entry(int i, int j) const {
    require(i >= 1 && i <= 2 && j >= 1 && j <= 2, "LaxOperator::entry: index");
    if (i == 1) return j == 1 ? a11 : a12;
    return j == 1 ? a21 : a22;
}

LaxOperator lax_ancestor(Complex lambda, const MRParams& params, ModeKind kind,
                         const SpaceSpec& spec) {
    models::check_kind_consistency(params, kind);
    const auto mode = mode_realization(kind, spec);
    const long dim = spec.total_dim();
    Matrix id = Matrix::Identity(dim, dim);
    Matrix s3 = embed(mode.s3, 0, spec);

    LaxOperator L{Matrix{}, Matrix{}, Matrix{}, Matrix{}, lambda, spec};
    L.a11 = params.c10 * (lambda * id + s3) + params.c11 * id;
    L.a12 = embed(mode.sm, 0, spec);
    L.a21 = embed(mode.sp, 0, spec);
    L.a22 = params.c20 * (lambda * id - s3) - params.c21 * id;
    return L;
}

LaxOperator lax_spin(Complex lambda, double c_j, int atom_slot, const SpaceSpec& spec) {
    require(atom_slot >= 1 && atom_slot <= spec.n_atoms, "lax_spin: atom slot");
    const auto spin = spin_ops(spec.atom_spin);
    const long dim = spec.total_dim();
    Matrix id = Matrix::Identity(dim, dim);
    Matrix sz = embed(spin.sz, atom_slot, spec);

    LaxOperator L{Matrix{}, Matrix{}, Matrix{}, Matrix{}, lambda, spec};
    L.a11 = (lambda + c_j) * id + sz;
    L.a12 = embed(spin.sm, atom_slot, spec);
    L.a21 = embed(spin.sp, atom_slot, spec);
    L.a22 = (lambda + c_j) * id - sz;
    return L;
}

namespace {

LaxOperator lax_product(const LaxOperator& a, const LaxOperator& b) {
    LaxOperator t{Matrix{}, Matrix{}, Matrix{}, Matrix{}, a.lambda, a.space};
    t.a11 = a.a11 * b.a11 + a.a12 * b.a21;
    t.a12 = a.a11 * b.a12 + a.a12 * b.a22;
    t.a21 = a.a21 * b.a11 + a.a22 * b.a21;
    t.a22 = a.a21 * b.a12 + a.a22 * b.a22;
    return t;
}

} // namespace

LaxOperator monodromy(Complex lambda, const MRParams& params, ModeKind kind,
                      const SpaceSpec& spec) {
    require(params.n_atoms() == spec.n_atoms,
            "monodromy: inhomogeneity count must equal n_atoms");
    LaxOperator t = lax_ancestor(lambda, params, kind, spec);
    for (int j = 0; j < spec.n_atoms; ++j)
        t = lax_product(t, lax_spin(lambda, params.inhom[j], j + 1, spec));
    return t;
}

Matrix transfer(Complex lambda, const MRParams& params, ModeKind kind,
                const SpaceSpec& spec) {
    const auto t = monodromy(lambda, params, kind, spec);
    return t.a11 + t.a22;
}

Matrix quantum_determinant(Complex lambda, const MRParams& params, ModeKind kind,
                           const SpaceSpec& spec, double eta) {
    const auto t1 = monodromy(lambda, params, kind, spec);
    const auto t0 = monodromy(lambda - eta, params, kind, spec);
    return t1.a11 * t0.a22 - t1.a12 * t0.a21;
}

namespace {

// Projector onto sectors of the conserved charge with excitation <= max_exc,
// measured from the pseudovacuum value.
Matrix charge_projector(ModeKind kind, const SpaceSpec& spec, int max_exc) {
    const Matrix C = models::conserved_charge(kind, spec).mat;
    const double vac = C(0, 0).real();
    const long dim = spec.total_dim();
    Matrix p = Matrix::Zero(dim, dim);
    for (long i = 0; i < dim; ++i) {
        const double m = C(i, i).real() - vac;
        if (m <= max_exc + 1e-9) p(i, i) = 1.0;
    }
    return p;
}

} // namespace

YbeReport check_ybe(Complex lambda, Complex mu, const MRParams& params, ModeKind kind,
                    const SpaceSpec& spec, int safe_excitation) {
    if (safe_excitation < 0) safe_excitation = spec.boson_cutoff / 2;
    const RMatrix R{RKind::Rational, 1.0};
    const auto TL = monodromy(lambda, params, kind, spec);
    const auto TM = monodromy(mu, params, kind, spec);
    const long dim = spec.total_dim();

    // Aux (x) aux (x) quantum, laid out as 4 blocks of size dim.
    Eigen::MatrixXcd t1 = Eigen::MatrixXcd::Zero(4 * dim, 4 * dim);
    Eigen::MatrixXcd t2 = t1;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                t1.block((2 * i + k) * dim, (2 * j + k) * dim, dim, dim) =
                    TL.entry(i + 1, j + 1);
                t2.block((k * 2 + i) * dim, (k * 2 + j) * dim, dim, dim) =
                    TM.entry(i + 1, j + 1);
            }
    const Eigen::Matrix4cd r4 = R(lambda - mu);
    Eigen::MatrixXcd r12 = Eigen::MatrixXcd::Zero(4 * dim, 4 * dim);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (r4(a, b) != Complex{0.0, 0.0})
                r12.block(a * dim, b * dim, dim, dim) =
                    r4(a, b) * Matrix::Identity(dim, dim);

    const Matrix p = charge_projector(kind, spec, safe_excitation);
    Eigen::MatrixXcd p4 = Eigen::MatrixXcd::Zero(4 * dim, 4 * dim);
    for (int a = 0; a < 4; ++a) p4.block(a * dim, a * dim, dim, dim) = p;

    YbeReport rep;
    rep.rtt_residual = max_abs(p4 * (r12 * t1 * t2 - t2 * t1 * r12) * p4);

    const Matrix tau_l = TL.a11 + TL.a22;
    const Matrix tau_m = TM.a11 + TM.a22;
    rep.tau_comm_residual = max_abs(p * comm(tau_l, tau_m) * p);
    return rep;
}

namespace {

std::vector<double> chebyshev_nodes(int count, double scale) {
    std::vector<double> nodes(count);
    for (int k = 0; k < count; ++k)
        nodes[k] = scale * std::cos(M_PI * (2.0 * k + 1.0) / (2.0 * count));
    return nodes;
}

std::vector<Matrix> interpolate_charges(const MRParams& params, ModeKind kind,
                                        const SpaceSpec& spec,
                                        const std::vector<double>& nodes) {
    const int n = static_cast<int>(nodes.size());
    Eigen::MatrixXcd vand(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) vand(i, j) = std::pow(nodes[i], j);
    Eigen::MatrixXcd weights = vand.inverse(); // coeff_j = sum_i w(j,i) tau(node_i)

    const long dim = spec.total_dim();
    std::vector<Matrix> taus;
    taus.reserve(n);
    for (double node : nodes) taus.push_back(transfer(node, params, kind, spec));

    std::vector<Matrix> coeff(n, Matrix::Zero(dim, dim));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) coeff[j] += weights(j, i) * taus[i];
    return coeff;
}

} // namespace

TransferCharges charges_from_transfer(const MRParams& params, ModeKind kind,
                                      const SpaceSpec& spec, const Matrix& H_target,
                                      double node_scale) {
    const int na = spec.n_atoms;
    const int n_coeff = na + 2;
    if (node_scale <= 0.0) {
        node_scale = 1.0 + spec.atom_spin;
        for (double c : params.inhom) node_scale = std::max(node_scale, std::abs(c) + 1.0);
    }

    TransferCharges out;
    out.coeff = interpolate_charges(params, kind, spec, chebyshev_nodes(n_coeff, node_scale));

    const long dim = spec.total_dim();
    const Matrix p = charge_projector(kind, spec, spec.boson_cutoff / 2);
    for (size_t a = 0; a < out.coeff.size(); ++a)
        for (size_t b = a + 1; b < out.coeff.size(); ++b)
            out.charge_comm_residual = std::max(
                out.charge_comm_residual, max_abs(p * comm(out.coeff[a], out.coeff[b]) * p));

    // Least-squares fit H = alpha C_{Na-1} + a C_{Na} + b I over the safe block.
    require(na >= 1, "charges_from_transfer: needs at least one atom site");
    const Matrix rhs = H_target - params.alpha * out.coeff[na - 1];
    const Matrix& cn = out.coeff[na];
    const Matrix id = Matrix::Identity(dim, dim);
    Eigen::Matrix2cd gram;
    Eigen::Vector2cd proj;
    auto dot = [](const Matrix& x, const Matrix& y) {
        return (x.adjoint() * y).trace();
    };
    gram << dot(cn, cn), dot(cn, id), dot(id, cn), dot(id, id);
    proj << dot(cn, rhs), dot(id, rhs);
    Eigen::Vector2cd ab = gram.fullPivLu().solve(proj);
    out.fit_a = ab(0).real();
    out.fit_b = ab(1).real();
    out.fit_residual = max_abs(rhs - out.fit_a * cn - out.fit_b * id);
    return out;
}

Complex poly_eval(const Eigen::VectorXcd& coeffs, Complex x) {
    Complex acc{0.0, 0.0};
    for (Eigen::Index k = coeffs.size() - 1; k >= 0; --k) acc = acc * x + coeffs(k);
    return acc;
}

Eigen::VectorXcd poly_mul(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(a.size() + b.size() - 1);
    for (Eigen::Index i = 0; i < a.size(); ++i)
        for (Eigen::Index j = 0; j < b.size(); ++j) out(i + j) += a(i) * b(j);
    return out;
}

Eigen::VectorXcd poly_from_roots(const std::vector<Complex>& roots, Complex lead) {
    Eigen::VectorXcd p(1);
    p(0) = lead;
    for (Complex r : roots) {
        Eigen::VectorXcd lin(2);
        lin << -r, 1.0;
        p = poly_mul(p, lin);
    }
    return p;
}

Complex VacuumEigenPair::alpha(Complex lambda) const { return poly_eval(alpha_coeffs, lambda); }
Complex VacuumEigenPair::beta(Complex lambda) const { return poly_eval(beta_coeffs, lambda); }

VacuumEigenPair vacuum_eigen(const MRParams& params, ModeKind kind,
                             const SpaceSpec& spec) {
    require(kind == ModeKind::Su11Boson || kind == ModeKind::Boson ||
                kind == ModeKind::SpinSu2,
            "vacuum_eigen: rational kinds with a boson-vacuum pseudovacuum only "
            "(the canonical realization has no annihilated pseudovacuum)");

    const long dim = spec.total_dim();
    Vector vac = Vector::Zero(dim);
    vac(0) = 1.0;

    const int n_coeff = spec.n_atoms + 2;
    double scale = 1.0 + spec.atom_spin;
    for (double c : params.inhom) scale = std::max(scale, std::abs(c) + 1.0);
    const auto nodes = chebyshev_nodes(n_coeff, scale);

    Eigen::MatrixXcd vand(n_coeff, n_coeff);
    Eigen::VectorXcd aval(n_coeff), bval(n_coeff);
    for (int i = 0; i < n_coeff; ++i) {
        const auto t = monodromy(nodes[i], params, kind, spec);
        const Vector a_act = t.a11 * vac;
        const Vector b_act = t.a22 * vac;
        const Vector c_act = t.a12 * vac;
        const Complex a0 = a_act(0);
        const Complex b0 = b_act(0);
        const double off = std::max((a_act - a0 * vac).norm(), (b_act - b0 * vac).norm());
        if (c_act.norm() > 1e-9 || off > 1e-9)
            throw std::runtime_error(
                "vacuum_eigen: state |0> is not a pseudovacuum for this realization");
        aval(i) = a0;
        bval(i) = b0;
        for (int j = 0; j < n_coeff; ++j) vand(i, j) = std::pow(nodes[i], j);
    }

    VacuumEigenPair pair;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(vand);
    pair.alpha_coeffs = lu.solve(aval);
    pair.beta_coeffs = lu.solve(bval);

    const auto mode = mode_realization(kind, spec);
    pair.r = mode.s3(0, 0).real();
    pair.s = spec.atom_spin;

    // Closed forms: the c20 beta prefactor and the c10 variant.
    std::vector<Complex> a_shift, b_shift;
    for (double c : params.inhom) {
        a_shift.push_back(Complex(spec.atom_spin - c, 0.0));
        b_shift.push_back(Complex(-spec.atom_spin - c, 0.0));
    }
    Eigen::VectorXcd a_pref(2), b_pref(2), b_pref_c10(2);
    a_pref << params.c10 * pair.r + params.c11, params.c10;
    b_pref << -params.c20 * pair.r - params.c21, params.c20;
    b_pref_c10 << -params.c10 * pair.r - params.c21, params.c10;
    const auto a_closed = poly_mul(a_pref, poly_from_roots(a_shift));
    const auto b_closed = poly_mul(b_pref, poly_from_roots(b_shift));
    const auto b_c10 = poly_mul(b_pref_c10, poly_from_roots(b_shift));

    pair.closed_form_mismatch =
        std::max((pair.alpha_coeffs - a_closed).cwiseAbs().maxCoeff(),
                 (pair.beta_coeffs - b_closed).cwiseAbs().maxCoeff());
    pair.c10_prefactor_mismatch = (pair.beta_coeffs - b_c10).cwiseAbs().maxCoeff();
    return pair;
}

} // namespace mrbethe::lax
