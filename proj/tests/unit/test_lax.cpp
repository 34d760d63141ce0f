#include "mrbethe/lax.hpp"

#include "mrbethe/oracle.hpp"

#include <doctest.h>

#include <random>

using namespace mrbethe;
using namespace mrbethe::lax;
using models::MRParams;

namespace {

hilbert::SpaceSpec make_spec(int cutoff, int atoms, double spin = 0.5) {
    hilbert::SpaceSpec s;
    s.boson_cutoff = cutoff;
    s.n_atoms = atoms;
    s.atom_spin = spin;
    return s;
}

Matrix sector_projector(hilbert::ModeKind kind, const hilbert::SpaceSpec& spec, int max_exc) {
    const Matrix c = models::conserved_charge(kind, spec).mat;
    const double vac = c(0, 0).real();
    Matrix p = Matrix::Zero(spec.total_dim(), spec.total_dim());
    for (long i = 0; i < spec.total_dim(); ++i)
        if (c(i, i).real() - vac <= max_exc + 1e-9) p(i, i) = 1.0;
    return p;
}

} // namespace

TEST_CASE("pure Yang-Baxter equation holds for both R kinds") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const RMatrix rational{RKind::Rational, 1.0};
    const RMatrix trig{RKind::Trigonometric, 0.73};
    double worst_rat = 0.0, worst_trig = 0.0;
    for (int k = 0; k < 100; ++k) {
        const Complex l(u(rng), u(rng));
        const Complex m(u(rng), u(rng));
        worst_rat = std::max(worst_rat, pure_ybe_residual(rational, l, m));
        worst_trig = std::max(worst_trig, pure_ybe_residual(trig, l, m));
    }
    CHECK(worst_rat < 1e-12);
    CHECK(worst_trig < 1e-12);
}

TEST_CASE("rational R at zero argument is proportional to the permutation") {
    const RMatrix r{RKind::Rational, 1.0};
    auto m = r(Complex{0.0, 0.0});
    Eigen::Matrix4cd perm = Eigen::Matrix4cd::Zero();
    perm(0, 0) = perm(3, 3) = perm(1, 2) = perm(2, 1) = 1.0;
    CHECK((m - perm).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("su(2) mode kind reproduces the spin Lax structure") {
    auto spec = make_spec(1, 0); // mode factor is a spin-1/2 doublet
    MRParams p;
    p.c10 = p.c20 = 1.0;
    p.c11 = 0.4;
    p.c21 = -0.4; // spin Lax offsets: c11 = -c21 = c_j
    auto L = lax_ancestor(Complex{0.3, 0.0}, p, hilbert::ModeKind::SpinSu2, spec);
    auto spin = hilbert::spin_ops(0.5);
    CHECK(max_abs(L.a11 - (Complex(0.7, 0.0) * Matrix::Identity(2, 2) + spin.sz)) < 1e-14);
    CHECK(max_abs(L.a22 - (Complex(0.7, 0.0) * Matrix::Identity(2, 2) - spin.sz)) < 1e-14);
    CHECK(max_abs(L.a12 - spin.sm) < 1e-15);
    CHECK(max_abs(L.a21 - spin.sp) < 1e-15);
}

TEST_CASE("monodromy with no atoms is the ancestor Lax") {
    auto spec = make_spec(8, 0);
    MRParams p;
    p.c10 = 1.0;
    p.c20 = -1.0;
    p.c11 = p.c21 = 0.5;
    const Complex lambda{0.37, 0.11};
    auto t = monodromy(lambda, p, hilbert::ModeKind::Su11Boson, spec);
    auto l = lax_ancestor(lambda, p, hilbert::ModeKind::Su11Boson, spec);
    CHECK(max_abs(t.a11 - l.a11) < 1e-14);
    CHECK(max_abs(t.a12 - l.a12) < 1e-14);
}

TEST_CASE("pseudovacuum is annihilated by C(lambda) and B raises one sector") {
    auto spec = make_spec(10, 2);
    auto p = models::bs_params(3.02, 1.0, 0.0, 2);
    const Complex lambda{0.4, 0.2};
    auto t = monodromy(lambda, p, hilbert::ModeKind::Su11Boson, spec);

    Vector vac = Vector::Zero(spec.total_dim());
    vac(0) = 1.0;
    CHECK((t.a12 * vac).norm() < 1e-14);

    // B|0> lives purely in the first excited sector
    const Vector raised = t.a21 * vac;
    const Matrix c = models::conserved_charge(hilbert::ModeKind::Su11Boson, spec).mat;
    const double vac_charge = c(0, 0).real();
    for (long i = 0; i < spec.total_dim(); ++i) {
        if (std::abs(raised(i)) < 1e-14) continue;
        CHECK(c(i, i).real() - vac_charge == doctest::Approx(1.0));
    }
}

TEST_CASE("transfer matrix commutes with the charge and with itself") {
    auto spec = make_spec(12, 2);
    auto p = models::bs_params(3.02, 1.0, 0.1, 2);
    const auto kind = hilbert::ModeKind::Su11Boson;
    const Matrix tau1 = transfer(Complex{0.3, 0.0}, p, kind, spec);
    const Matrix tau2 = transfer(Complex{-0.9, 0.4}, p, kind, spec);
    const Matrix c = models::conserved_charge(kind, spec).mat;
    const Matrix proj = sector_projector(kind, spec, 6);
    CHECK(max_abs(proj * comm(tau1, c) * proj) < 1e-12);
    CHECK(max_abs(proj * comm(tau1, tau2) * proj) < 1e-10);
}

TEST_CASE("RTT relation holds and a broken reduction is detected") {
    auto spec = make_spec(12, 2);
    auto p = models::bs_params(3.02, 1.0, 0.0, 2);
    const auto kind = hilbert::ModeKind::Su11Boson;
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    SUBCASE("equal spectral parameters give an exact zero") {
        const Complex l{0.42, -0.17};
        auto rep = check_ybe(l, l, p, kind, spec);
        CHECK(rep.rtt_residual == 0.0);
        CHECK(rep.tau_comm_residual == 0.0);
    }
    SUBCASE("random spectral parameters") {
        for (int k = 0; k < 3; ++k) {
            const Complex l(u(rng), u(rng));
            const Complex m(u(rng), u(rng));
            auto rep = check_ybe(l, m, p, kind, spec);
            CHECK(rep.rtt_residual < 1e-10);
            CHECK(rep.tau_comm_residual < 1e-10);
        }
    }
    SUBCASE("negative control: c20 off the su(1,1) locus") {
        auto bad = p;
        bad.c20 = -0.7;
        bool threw = false;
        double residual = 0.0;
        try {
            auto rep = check_ybe(Complex{0.3, 0.1}, Complex{-0.4, 0.2}, bad, kind, spec);
            residual = rep.rtt_residual;
        } catch (const std::invalid_argument&) {
            threw = true;
        }
        // either the parameter audit rejects it or the residual blows up
        CHECK((threw || residual > 1e-3));
    }
}

TEST_CASE("charges from the transfer expansion") {
    auto spec = make_spec(12, 2);
    auto p = models::bs_params(3.02, 1.0, 0.2, 2);
    const auto kind = hilbert::ModeKind::Su11Boson;
    auto h = models::build_H_BS(3.02, 1.0, 0.2, spec);
    auto charges = charges_from_transfer(p, kind, spec, h.mat);

    SUBCASE("mutual commutativity") { CHECK(charges.charge_comm_residual < 1e-10); }

    SUBCASE("top coefficient is proportional to the conserved charge") {
        // C_{Na+1} vanishes for the BS reduction (c10 + c20 = 0); C_{Na} carries it
        CHECK(max_abs(charges.coeff[3]) < 1e-10);
        const Matrix c = models::conserved_charge(kind, spec).mat;
        const long dim = spec.total_dim();
        const Complex a = (charges.coeff[2](1, 1) - charges.coeff[2](0, 0)) /
                          (c(1, 1) - c(0, 0));
        const Complex b = charges.coeff[2](0, 0) - a * c(0, 0);
        CHECK(max_abs(charges.coeff[2] - (a * c + b * Matrix::Identity(dim, dim))) < 1e-10);
        CHECK(std::abs(a - 2.0) < 1e-10); // c10 - c20
    }

    SUBCASE("Hamiltonian sits at alpha C_{Na-1} with no extra charge admixture") {
        CHECK(charges.fit_residual < 1e-10);
        CHECK(std::abs(charges.fit_a) < 1e-10);
        CHECK(std::abs(charges.fit_b) < 1e-10);
    }

    SUBCASE("BS transfer polynomial has exactly Na+1 nonvanishing coefficients") {
        // the naive degree count ignores the c10+c20 cancellation; the top
        // coefficient genuinely vanishes for this reduction
        int nonzero = 0;
        for (const auto& c : charges.coeff)
            if (max_abs(c) > 1e-9) ++nonzero;
        CHECK(nonzero == 3); // Na + 1 = 3 for two atoms
    }

    SUBCASE("node-set invariance") {
        auto again = charges_from_transfer(p, kind, spec, h.mat, 2.9);
        for (size_t k = 0; k < charges.coeff.size(); ++k)
            CHECK(max_abs(charges.coeff[k] - again.coeff[k]) < 1e-9);
    }
}

TEST_CASE("JC charge fit carries a pure identity offset") {
    auto spec = make_spec(10, 1);
    const double omega_f = 2.0, alpha = 0.8, delta = 0.15;
    auto p = models::jc_params(omega_f, alpha, delta, 1);
    auto h = models::build_H_JC(omega_f, alpha, delta, spec);
    auto charges = charges_from_transfer(p, hilbert::ModeKind::Boson, spec, h.mat);
    CHECK(charges.fit_residual < 1e-10);
    CHECK(std::abs(charges.fit_a) < 1e-10);
    // b = -c_1 (alpha c11 + 1) for this reduction
    const double expected_b = -p.inhom[0] * (alpha * p.c11 + 1.0);
    CHECK(charges.fit_b == doctest::Approx(expected_b).epsilon(1e-9));
    // the JC top coefficient survives: 3 nonvanishing coefficients at one atom
    int nonzero = 0;
    for (const auto& c : charges.coeff)
        if (max_abs(c) > 1e-9) ++nonzero;
    CHECK(nonzero == 3);
}

TEST_CASE("quantum determinant commutes with the charge") {
    auto spec = make_spec(10, 1);
    auto p = models::bs_params(2.0, 1.0, 0.0, 1);
    const auto kind = hilbert::ModeKind::Su11Boson;
    const Matrix qd = quantum_determinant(Complex{0.45, 0.3}, p, kind, spec);
    const Matrix c = models::conserved_charge(kind, spec).mat;
    const Matrix proj = sector_projector(kind, spec, 4);
    CHECK(max_abs(proj * comm(qd, c) * proj) < 1e-10);
}

TEST_CASE("vacuum eigenvalues: dual-path agreement and prefactor audit") {
    auto spec = make_spec(12, 2);
    auto p = models::bs_params(3.02, 1.0, 0.0, 2);
    auto vac = vacuum_eigen(p, hilbert::ModeKind::Su11Boson, spec);

    SUBCASE("numeric pair matches the corrected closed form") {
        CHECK(vac.closed_form_mismatch < 1e-12);
        // the variant beta prefactor (c10 in place of c20) does not match
        CHECK(vac.c10_prefactor_mismatch > 1e-3);
    }
    SUBCASE("r is the vacuum weight of s3") {
        CHECK(vac.r == doctest::Approx(0.5)); // <0|N + 1/2|0>
    }
    SUBCASE("alpha vanishes at lambda = s - c_j") {
        for (double cj : p.inhom)
            CHECK(std::abs(vac.alpha(Complex(spec.atom_spin - cj, 0.0))) < 1e-11);
    }
    SUBCASE("monodromy vacuum action at random points") {
        std::mt19937 rng(17);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        Vector v0 = Vector::Zero(spec.total_dim());
        v0(0) = 1.0;
        for (int k = 0; k < 20; ++k) {
            const Complex l(u(rng), u(rng));
            auto t = monodromy(l, p, hilbert::ModeKind::Su11Boson, spec);
            CHECK(std::abs((t.a11 * v0)(0) - vac.alpha(l)) < 1e-10);
            CHECK(std::abs((t.a22 * v0)(0) - vac.beta(l)) < 1e-10);
        }
    }
    SUBCASE("transfer eigenvalue on the vacuum is alpha + beta") {
        const Complex l{0.8, -0.3};
        const Matrix tau = transfer(l, p, hilbert::ModeKind::Su11Boson, spec);
        Vector v0 = Vector::Zero(spec.total_dim());
        v0(0) = 1.0;
        CHECK(std::abs((tau * v0)(0) - (vac.alpha(l) + vac.beta(l))) < 1e-11);
    }
}

TEST_CASE("vacuum_eigen rejects realizations without a pseudovacuum") {
    auto spec = make_spec(10, 1);
    MRParams p;
    p.c10 = -1.0;
    p.c20 = 0.0;
    p.c11 = 0.5;
    p.c21 = 0.0;
    p.inhom = {0.5};
    CHECK_THROWS(vacuum_eigen(p, hilbert::ModeKind::Canonical, spec));
}
