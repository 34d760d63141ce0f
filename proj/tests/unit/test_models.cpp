#include "mrbethe/models.hpp"

#include "mrbethe/oracle.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <random>

using namespace mrbethe;
using namespace mrbethe::models;

namespace {

SpaceSpec make_spec(int cutoff, int atoms, double spin = 0.5,
                    std::optional<double> q = {}) {
    SpaceSpec s;
    s.boson_cutoff = cutoff;
    s.n_atoms = atoms;
    s.atom_spin = spin;
    s.deformation = q;
    return s;
}

double sector_comm_defect(const Matrix& h, const Matrix& c, const SpaceSpec& spec,
                          int max_exc) {
    const double vac = c(0, 0).real();
    const long dim = spec.total_dim();
    Matrix p = Matrix::Zero(dim, dim);
    for (long i = 0; i < dim; ++i)
        if (c(i, i).real() - vac <= max_exc + 1e-9) p(i, i) = 1.0;
    return max_abs(p * comm(h, c) * p);
}

} // namespace

TEST_CASE("frequency map identities") {
    SUBCASE("single-atom BS numbers") {
        MRParams p;
        p.c10 = 1.0;
        p.c20 = -1.0;
        p.c11 = p.c21 = 0.5;
        p.alpha = 1.0;
        p.inhom = {0.7};
        auto f = frequencies(p);
        CHECK(f.omega_f == doctest::Approx(1.4).epsilon(1e-15));
        CHECK(f.omega_a[0] == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("two-atom resonance recipe") {
        auto p = bs_params(3.02, 1.0, 0.0, 2);
        CHECK(p.inhom[0] == doctest::Approx(0.755));
        CHECK(p.c11 == doctest::Approx(0.755));
        auto f = frequencies(p);
        CHECK(f.omega_f == doctest::Approx(3.02));
        CHECK(f.omega_a[0] == doctest::Approx(3.02));
        CHECK(f.omega_a[1] == doctest::Approx(3.02));
    }
    SUBCASE("homogeneous limit") {
        MRParams p;
        p.c10 = 1.0;
        p.c20 = -1.0;
        p.c11 = p.c21 = 0.3;
        p.alpha = 2.0;
        p.inhom = {0.0, 0.0};
        auto f = frequencies(p);
        CHECK(f.omega_f == 0.0);
        CHECK(f.omega_a[0] == doctest::Approx(2.0 * 0.6));
    }
}

TEST_CASE("generic builder reproduces the direct BS assembly") {
    auto spec = make_spec(10, 2);
    const double omega_f = 3.02, alpha = 1.0, delta = 0.17;
    auto params = bs_params(omega_f, alpha, delta, 2);
    auto via_mr = build_H_MR(params, ModeKind::Su11Boson, spec);
    auto direct = build_H_BS(omega_f, alpha, delta, spec);
    CHECK(max_abs(via_mr.mat - direct.mat) < 1e-14);
}

TEST_CASE("generic builder reproduces the direct JC assembly") {
    auto spec = make_spec(10, 2);
    auto params = jc_params(2.5, 0.8, 0.1, 2);
    auto via_mr = build_H_MR(params, ModeKind::Boson, spec);
    auto direct = build_H_JC(2.5, 0.8, 0.1, spec);
    CHECK(max_abs(via_mr.mat - direct.mat) < 1e-14);
}

TEST_CASE("conserved charge commutes with every rational model") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.2, 1.5);

    SUBCASE("BS with random parameters, two atoms") {
        auto spec = make_spec(16, 2);
        MRParams p;
        p.c10 = 1.0;
        p.c20 = -1.0;
        p.c11 = p.c21 = u(rng);
        p.alpha = u(rng);
        p.inhom = {u(rng), u(rng)};
        auto h = build_H_MR(p, ModeKind::Su11Boson, spec);
        auto c = conserved_charge(ModeKind::Su11Boson, spec);
        CHECK(sector_comm_defect(h.mat, c.mat, spec, 5) < 1e-11);
    }
    SUBCASE("JC") {
        auto spec = make_spec(16, 1);
        auto h = build_H_JC(2.0, 0.5, 0.2, spec);
        auto c = conserved_charge(ModeKind::Boson, spec);
        CHECK(sector_comm_defect(h.mat, c.mat, spec, 8) < 1e-12);
    }
    SUBCASE("homogeneous BS is block diagonal in C") {
        auto spec = make_spec(12, 2);
        MRParams p;
        p.c10 = 1.0;
        p.c20 = -1.0;
        p.c11 = p.c21 = 0.4;
        p.alpha = 0.9;
        p.inhom = {0.0, 0.0};
        auto h = build_H_MR(p, ModeKind::Su11Boson, spec);
        auto c = conserved_charge(ModeKind::Su11Boson, spec);
        CHECK(sector_comm_defect(h.mat, c.mat, spec, 6) < 1e-12);
    }
}

TEST_CASE("single-atom BS is Hermitian, multi-atom is not") {
    auto spec1 = make_spec(12, 1);
    auto h1 = build_H_BS(3.02, 1.0, 0.1, spec1);
    CHECK(is_hermitian(h1.mat, 1e-12));

    auto spec2 = make_spec(12, 2);
    auto h2 = build_H_BS(3.02, 1.0, 0.1, spec2);
    CHECK(!is_hermitian(h2.mat, 1e-8));

    SUBCASE("spectrum closed under conjugation") {
        auto sector = oracle::sector_basis(spec2, 1);
        auto block = oracle::sector_block(h2.mat, sector);
        Eigen::ComplexEigenSolver<Matrix> es(block, false);
        for (int i = 0; i < es.eigenvalues().size(); ++i) {
            double best = 1e300;
            for (int j = 0; j < es.eigenvalues().size(); ++j)
                best = std::min(best,
                                std::abs(std::conj(es.eigenvalues()(i)) - es.eigenvalues()(j)));
            CHECK(best < 1e-10);
        }
    }
}

TEST_CASE("beyond the exceptional detuning a complex pair appears") {
    auto spec = make_spec(16, 2);
    auto h = build_H_BS(3.02, 1.0, 0.5, spec);
    auto sector = oracle::sector_basis(spec, 1);
    auto rep = oracle::diag_sector(h, sector, 0.0);
    std::vector<Complex> pair;
    for (int i = 0; i < rep.eigenvalues.size(); ++i)
        if (std::abs(rep.eigenvalues(i).imag()) > 1e-6) pair.push_back(rep.eigenvalues(i));
    REQUIRE(pair.size() == 2);
    CHECK(std::abs(pair[0] - std::conj(pair[1])) < 1e-9);
}

TEST_CASE("JC two-level sector coupling scales as sqrt(n+1)") {
    auto spec = make_spec(14, 1);
    const double alpha = 0.3;
    auto h = build_H_JC(2.0, alpha, 0.0, spec);
    for (int n : {0, 3, 7}) {
        auto sector = oracle::sector_basis(spec, n + 1);
        auto block = oracle::sector_block(h.mat, sector);
        // states ordered (n, -), then (n+1 ... ) lexicographic: |n,up> above |n+1,down>
        REQUIRE(sector.dim() == 2);
        CHECK(std::abs(std::abs(block(0, 1)) - alpha * std::sqrt(n + 1.0)) < 1e-12);
    }
}

TEST_CASE("JC eigenvalues approach the uncoupled ladder at small alpha") {
    auto spec = make_spec(10, 1);
    const double omega_f = 2.0, omega_a = 1.3;
    const double alpha = 1e-3;
    auto h = build_H_JC(omega_f, alpha, omega_f - omega_a, spec);
    auto sector = oracle::sector_basis(spec, 2);
    auto rep = oracle::diag_sector(h, sector, 0.0);
    // unperturbed: omega_f n + omega_a m over the sector states
    std::vector<double> bare{2.0 * omega_f - 0.5 * omega_a, omega_f + 0.5 * omega_a};
    std::sort(bare.begin(), bare.end());
    for (int i = 0; i < 2; ++i)
        CHECK(std::abs(rep.eigenvalues(i).real() - bare[i]) < 10.0 * alpha);
}

TEST_CASE("trapped-ion model pieces") {
    auto spec = make_spec(40, 1);
    SUBCASE("harmonic part has the n + 1/2 ladder below the cutoff band") {
        auto [x, p] = hilbert::quadratures(spec);
        Matrix h0 = 0.5 * (p * p + x * x);
        Eigen::SelfAdjointEigenSolver<Matrix> es(h0);
        for (int k = 0; k < 20; ++k)
            CHECK(std::abs(es.eigenvalues()(k) - (k + 0.5)) < 1e-8);
    }
    SUBCASE("alpha = 0 decouples into spin ladder plus oscillator part") {
        auto spec_small = make_spec(24, 1);
        auto h = build_H_TI(1.1, 0.9, 0.0, spec_small);
        auto [x, p] = hilbert::quadratures(spec_small);
        Matrix hxp = 0.5 * (p * p + x * x) + x * p;
        Eigen::ComplexEigenSolver<Matrix> es_xp(hxp, false);
        Eigen::ComplexEigenSolver<Matrix> es_h(h.mat, false);
        // every H eigenvalue is (omega_a-omega_f) m + m^2 + (an H_xp eigenvalue)
        std::vector<Complex> expected;
        for (double m : {-0.5, 0.5}) {
            for (int k = 0; k < es_xp.eigenvalues().size(); ++k)
                expected.push_back((0.9 - 1.1) * m + m * m + es_xp.eigenvalues()(k));
        }
        // spot check the lowest few by nearest-match
        std::vector<Complex> actual(es_h.eigenvalues().data(),
                                    es_h.eigenvalues().data() + es_h.eigenvalues().size());
        std::sort(actual.begin(), actual.end(),
                  [](Complex a, Complex b) { return a.real() < b.real(); });
        std::sort(expected.begin(), expected.end(),
                  [](Complex a, Complex b) { return a.real() < b.real(); });
        for (int k = 0; k < 10; ++k)
            CHECK(std::abs(actual[k] - expected[k]) < 1e-8);
    }
    SUBCASE("second assembly path from raw ladder operators") {
        auto spec_small = make_spec(18, 1);
        const double omega_f = 1.3, omega_a = 1.0, alpha = 0.4;
        auto h = build_H_TI(omega_f, omega_a, alpha, spec_small);

        auto [b, bd, n] = hilbert::boson_ops(spec_small);
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        Matrix x = (b + bd) * inv_sqrt2;
        Matrix p = (b - bd) * (inv_sqrt2 / kImag);
        Eigen::SelfAdjointEigenSolver<Matrix> es(x);
        Vector phase_m(x.rows()), phase_p(x.rows());
        for (int k = 0; k < x.rows(); ++k) {
            phase_m(k) = std::exp(-kImag * es.eigenvalues()(k));
            phase_p(k) = std::exp(kImag * es.eigenvalues()(k));
        }
        Matrix em = es.eigenvectors() * phase_m.asDiagonal() * es.eigenvectors().adjoint();
        Matrix ep = es.eigenvectors() * phase_p.asDiagonal() * es.eigenvectors().adjoint();
        auto spin = hilbert::spin_ops(0.5);
        Matrix H2 = kron((omega_a - omega_f) * Matrix::Identity(x.rows(), x.rows()), spin.sz) +
                    kron(Matrix::Identity(x.rows(), x.rows()), (spin.sz * spin.sz).eval()) +
                    alpha * (kron(em, spin.sp) + kron(ep, spin.sm)) +
                    kron((0.5 * (p * p + x * x) + x * p).eval(),
                         Matrix::Identity(2, 2));
        CHECK(max_abs(h.mat - H2) < 1e-10);
    }
}

TEST_CASE("q-deformed family") {
    const double q = 1.2;
    auto spec = make_spec(14, 1, 0.5, q);
    QMRParams qp;
    qp.alpha = 1.0;
    qp.q = q;

    SUBCASE("qBS and qJC are Hermitian") {
        auto hbs = build_H_qMR(qp, QReduction::QBS, spec);
        auto hjc = build_H_qMR(qp, QReduction::QJC, spec);
        CHECK(is_hermitian(hbs.mat, 1e-13));
        CHECK(is_hermitian(hjc.mat, 1e-13));
    }
    SUBCASE("X charge commutes") {
        for (auto red : {QReduction::QBS, QReduction::QJC}) {
            auto h = build_H_qMR(qp, red, spec);
            Matrix x = q_charge(qp, red, spec);
            CHECK(max_abs(comm(h.mat, x)) < 1e-12);
        }
        // canonical realization: restrict to the safe band
        auto h = build_H_qMR(qp, QReduction::QTI, make_spec(40, 1, 0.5, q));
        Matrix x = q_charge(qp, QReduction::QTI, make_spec(40, 1, 0.5, q));
        Matrix p = hilbert::mode_projector(make_spec(40, 1, 0.5, q), 10);
        CHECK(max_abs(p * comm(h.mat, x) * p) < 1e-12);
    }
    SUBCASE("general reduction is rejected") {
        CHECK_THROWS_AS(build_H_qMR(qp, QReduction::General, spec), std::invalid_argument);
    }
    SUBCASE("classical limit regression on safe sectors") {
        // compare H(q) against the same assembly at q -> 1 on sectors M <= 2
        auto spec_near = make_spec(14, 1, 0.5, 1.0 + 1e-4);
        auto spec_one = make_spec(14, 1, 0.5, 1.0 + 1e-12);
        auto hq = build_H_qMR(qp, QReduction::QBS, spec_near);
        auto h1 = build_H_qMR(qp, QReduction::QBS, spec_one);
        auto sector = oracle::sector_basis(spec_near, 2);
        auto bq = oracle::sector_block(hq.mat, sector);
        auto b1 = oracle::sector_block(h1.mat, sector);
        CHECK(max_abs(bq - b1) < 1e-6);
    }
}

TEST_CASE("conserved charge structure") {
    auto spec = make_spec(10, 2);
    auto c = conserved_charge(ModeKind::Su11Boson, spec);
    // diagonal with integer spacing from the vacuum value
    for (long i = 0; i < spec.total_dim(); ++i) {
        for (long j = 0; j < spec.total_dim(); ++j)
            if (i != j) CHECK(std::abs(c.mat(i, j)) < 1e-15);
        const double exc = c.mat(i, i).real() - c.mat(0, 0).real();
        CHECK(std::abs(exc - std::round(exc)) < 1e-12);
    }
    auto h = build_H_BS(3.02, 1.0, 0.0, spec);
    CHECK(sector_comm_defect(h.mat, c.mat, spec, 5) < 1e-12);
    CHECK(oracle::sector_basis(spec, 1).dim() == 3);
}

TEST_CASE("parameter consistency is enforced") {
    auto spec = make_spec(8, 1);
    MRParams bad;
    bad.c10 = 1.0;
    bad.c20 = -0.7; // breaks the su(1,1) reduction
    bad.c11 = bad.c21 = 0.5;
    bad.inhom = {0.5};
    CHECK_THROWS_AS(build_H_MR(bad, ModeKind::Su11Boson, spec), std::invalid_argument);
}
