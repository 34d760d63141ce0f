#include "mrbethe/oracle.hpp"

#include "mrbethe/polyroot.hpp"

#include "mrbethe/dynamics.hpp"

#include <doctest.h>

using namespace mrbethe;
using namespace mrbethe::oracle;

namespace {

hilbert::SpaceSpec make_spec(int cutoff, int atoms, double spin = 0.5) {
    hilbert::SpaceSpec s;
    s.boson_cutoff = cutoff;
    s.n_atoms = atoms;
    s.atom_spin = spin;
    return s;
}

} // namespace

TEST_CASE("sector enumeration") {
    auto spec = make_spec(12, 2);
    SUBCASE("pseudovacuum sector is one-dimensional") {
        CHECK(sector_basis(spec, 0).dim() == 1);
    }
    SUBCASE("first excited sector lists the three expected states") {
        auto s = sector_basis(spec, 1);
        REQUIRE(s.dim() == 3);
        // lexicographic: (0, up, down), (0, down, up), (1, down, down)
        CHECK(s.boson_occ[0] == 0);
        CHECK(s.atom_idx[0] == std::vector<int>{0, 1});
        CHECK(s.atom_idx[1] == std::vector<int>{1, 0});
        CHECK(s.boson_occ[2] == 1);
        CHECK(s.atom_idx[2] == std::vector<int>{0, 0});
    }
    SUBCASE("one two-level atom gives two states per sector") {
        auto one = make_spec(12, 1);
        for (int m = 1; m <= 5; ++m) CHECK(sector_basis(one, m).dim() == 2);
    }
    SUBCASE("sectors touching the cutoff are rejected") {
        CHECK_THROWS_AS(sector_basis(spec, 12), std::invalid_argument);
        CHECK_THROWS_AS(sector_basis(spec, -1), std::invalid_argument);
    }
    SUBCASE("retained sector dimensions sum to the retained space") {
        long total = 0;
        for (int m = 0; m < spec.boson_cutoff; ++m) total += sector_basis(spec, m).dim();
        // states with n < cutoff: every basis state except those at the edge
        // or in sectors above the cap; count directly
        long direct = 0;
        for (int n = 0; n < spec.boson_cutoff; ++n)
            for (int a = 0; a < 4; ++a) {
                const int exc = n + (a & 1) + (a >> 1);
                if (exc < spec.boson_cutoff && n <= exc) ++direct;
            }
        CHECK(total == direct);
    }
}

TEST_CASE("sector diagonalization") {
    auto spec = make_spec(16, 2);
    SUBCASE("Hermitian sector has real eigenvalues and tiny residuals") {
        auto h = models::build_H_BS(3.02, 1.0, 0.1, make_spec(16, 1));
        auto sector = sector_basis(make_spec(16, 1), 2);
        auto rep = diag_sector(h, sector, 0.0);
        for (int i = 0; i < rep.eigenvalues.size(); ++i)
            CHECK(std::abs(rep.eigenvalues(i).imag()) < 1e-12);
        CHECK(rep.max_pair_residual < 1e-10);
        CHECK(rep.block_leakage < 1e-12);
    }
    SUBCASE("resonance triplet with the vacuum-referencing shift") {
        auto h = models::build_H_BS(3.02, 1.0, 0.0, spec);
        auto rep = diag_sector(h, sector_basis(spec, 1), models::kappa0(h));
        CHECK(std::abs(rep.eigenvalues(0).real() - 2.02) < 1e-10);
        CHECK(std::abs(rep.eigenvalues(1).real() - 3.02) < 1e-10);
        CHECK(std::abs(rep.eigenvalues(2).real() - 4.02) < 1e-10);
    }
    SUBCASE("one-atom spectrum follows the half-detuning closed form") {
        const double omega_f = 3.02, delta = 0.4;
        auto one = make_spec(20, 1);
        auto h = models::build_H_BS(omega_f, 1.0, delta, one);
        for (int m = 1; m <= 6; ++m) {
            auto rep = diag_sector(h, sector_basis(one, m), 0.0);
            const double split = std::sqrt(0.25 * delta * delta + m * m);
            CHECK(std::abs(rep.eigenvalues(0).real() - (m * omega_f - split)) < 1e-10);
            CHECK(std::abs(rep.eigenvalues(1).real() - (m * omega_f + split)) < 1e-10);
        }
    }
    SUBCASE("left and right eigenvectors are biorthogonal for the open sector") {
        auto h = models::build_H_BS(3.02, 1.0, 0.2, spec);
        auto rep = diag_sector(h, sector_basis(spec, 1), 0.0);
        CHECK(!rep.defective);
        CHECK(max_abs(rep.left * rep.right - Matrix::Identity(3, 3)) < 1e-10);
    }
}

TEST_CASE("sector blocks reassemble the Hamiltonian on the retained space") {
    auto spec = make_spec(10, 2);
    auto h = models::build_H_BS(3.02, 1.0, 0.15, spec);
    Matrix rebuilt = Matrix::Zero(spec.total_dim(), spec.total_dim());
    for (int m = 0; m < spec.boson_cutoff; ++m) {
        auto sector = sector_basis(spec, m);
        auto block = sector_block(h.mat, sector);
        for (int i = 0; i < sector.dim(); ++i)
            for (int j = 0; j < sector.dim(); ++j)
                rebuilt(sector.full_index[i], sector.full_index[j]) = block(i, j);
    }
    // compare on rows/cols covered by retained sectors
    for (int m = 0; m < spec.boson_cutoff; ++m) {
        auto sector = sector_basis(spec, m);
        for (int i = 0; i < sector.dim(); ++i)
            for (int j = 0; j < sector.dim(); ++j)
                CHECK(std::abs(rebuilt(sector.full_index[i], sector.full_index[j]) -
                               h.mat(sector.full_index[i], sector.full_index[j])) == 0.0);
    }
}

TEST_CASE("truncation independence certificate") {
    for (int m : {1, 2, 3}) {
        auto small = make_spec(24, 2);
        auto large = make_spec(32, 2);
        auto h_small = models::build_H_BS(3.02, 1.0, 0.2, small);
        auto h_large = models::build_H_BS(3.02, 1.0, 0.2, large);
        auto rep_small = diag_sector(h_small, sector_basis(small, m), 0.0);
        auto rep_large = diag_sector(h_large, sector_basis(large, m), 0.0);
        REQUIRE(rep_small.eigenvalues.size() == rep_large.eigenvalues.size());
        for (int i = 0; i < rep_small.eigenvalues.size(); ++i)
            CHECK(std::abs(rep_small.eigenvalues(i) - rep_large.eigenvalues(i)) < 1e-10);
    }
}

TEST_CASE("characteristic polynomial matches the Bethe cubic after an affine map") {
    auto spec = make_spec(16, 2);
    const double delta = -0.3;
    auto params = models::bs_params(3.02, 1.0, delta, 2);
    auto h = models::build_H_BS(3.02, 1.0, delta, spec);
    auto vac = lax::vacuum_eigen(params, hilbert::ModeKind::Su11Boson, spec);

    // E = 2 lambda + b maps the Bethe-cubic roots onto the raw sector block
    auto block = sector_block(h.mat, sector_basis(spec, 1));
    Eigen::ComplexEigenSolver<Matrix> es(block, false);
    Eigen::VectorXcd lam_roots(3);
    {
        auto roots = poly_roots(vac.alpha_coeffs - vac.beta_coeffs);
        REQUIRE(roots.size() == 3);
        for (int i = 0; i < 3; ++i) lam_roots(i) = roots[i];
    }
    // fit the affine map from two matched extremes (sorted by real part)
    std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + 3);
    std::vector<Complex> lr(lam_roots.data(), lam_roots.data() + 3);
    auto by_re = [](Complex a, Complex b) { return a.real() < b.real(); };
    std::sort(ev.begin(), ev.end(), by_re);
    std::sort(lr.begin(), lr.end(), by_re);
    const Complex slope = (ev[2] - ev[0]) / (lr[2] - lr[0]);
    const Complex offset = ev[0] - slope * lr[0];
    CHECK(std::abs(slope - 2.0) < 1e-9);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(slope * lr[i] + offset - ev[i]) < 1e-9);
}

TEST_CASE("comparison harness flags corrupted input") {
    auto spec = make_spec(16, 2);
    auto params = models::bs_params(3.02, 1.0, 0.1, 2);
    auto h = models::build_H_BS(3.02, 1.0, 0.1, spec);
    auto vac = lax::vacuum_eigen(params, hilbert::ModeKind::Su11Boson, spec);
    auto emap = bethe::EnergyMap::from(vac, 1.0, 2);
    auto sols = bethe::solve_M1(vac, emap);
    auto rep = diag_sector(h, sector_basis(spec, 1), models::kappa0(h));

    auto ok = compare_bethe_vs_exact(sols, rep, 1e-8);
    CHECK(ok.complete);
    CHECK(ok.max_diff < 1e-9);

    // corrupt one root: the energy moves and the match degrades
    auto bad = sols;
    bad[0].roots[0] += 0.03;
    auto lp = bethe::lambda_poly(bad[0].roots, vac);
    bad[0].energy = emap.energy(lp.coeffs);
    auto flagged = compare_bethe_vs_exact(bad, rep, 1e-8);
    CHECK(!flagged.complete);
}
