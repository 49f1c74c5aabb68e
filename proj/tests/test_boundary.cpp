#include <doctest.h>

#include <cmath>
#include <random>

#include "qshilov/boundary.hpp"

using namespace qshilov;

namespace {

const Presentation& pm() { return preset_ref(AlgebraId::PolMatSym); }
NcExpr Z(const char* n) { return pm().symbol(n); }
LaurentScalar qp(int k) { return LaurentScalar::q_pow(k); }

}  // namespace

TEST_CASE("J generators expand as expected") {
  const auto g = j_generators();
  REQUIRE(g.size() == 4);
  const NcExpr one = pm().one();
  CHECK(nc_equal(g[3], Z("z21") * Z("z21*") + Z("z22") * Z("z22*") - one, pm()));
  CHECK(nc_equal(g[0], qp(2) * (Z("z11") * Z("z11*")) + qp(4) * (Z("z21") * Z("z21*")) - one, pm()));
  CHECK(g[1].constant_term().is_zero());
  CHECK(g[2].constant_term().is_zero());
  CHECK(nc_equal(nc_star(g[0], pm()), g[0], pm()));
  CHECK(nc_equal(nc_star(g[3], pm()), g[3], pm()));
  CHECK(nc_equal(nc_star(g[1], pm()), g[2], pm()));
}

TEST_CASE("annihilation classification") {
  const double q = 0.5;
  SUBCASE("omega, theta and chi-coact kill J and its products") {
    for (long j = 0; j < 8; j += 3) {
      for (const auto& spec : {RepSpec::make(Family::Omega, {Angle::grid(j, 8)}),
                               RepSpec::make(Family::Theta, {Angle::grid(j, 8), Angle::grid(j + 1, 8)}),
                               RepSpec::make(Family::ChiCoact, {Angle::grid(j, 8), Angle::grid(j + 5, 8)})}) {
        CAPTURE(spec.to_string());
        CHECK(annihilates_j(spec.family));
        const auto r = annihilation_residual(spec, 64, q);
        CHECK(r.max_residual() <= 1e-10);
      }
    }
  }
  SUBCASE("fock, tau and nu leave a vacuum witness") {
    const double floor = std::pow(q, 4) / 2;
    CHECK(annihilation_residual(RepSpec::make(Family::Fock), 16, q, 0).witness >= floor);
    CHECK(annihilation_residual(RepSpec::make(Family::Tau, {Angle::grid(1, 8)}), 32, q, 0).witness >= floor);
    CHECK(annihilation_residual(RepSpec::make(Family::Nu, {Angle::grid(3, 8)}), 64, q, 0).witness >= floor);
    CHECK_FALSE(annihilates_j(Family::Fock));
    CHECK_FALSE(annihilates_j(Family::Tau));
    CHECK_FALSE(annihilates_j(Family::Nu));
  }
  SUBCASE("symbolic phases") {
    const auto spec = RepSpec::make(Family::Omega, {Angle::symbol("phi")});
    CHECK(annihilation_residual(spec, 64, q, 1, {{"phi", 0.7}}).max_residual() <= 1e-10);
  }
}

TEST_CASE("maximum modulus is two") {
  CHECK(shilov_norm(Angle{}, 256, 64, 0.5) >= 2 - 3e-4);
  CHECK(std::abs(shilov_norm(Angle::pi_times(1), 256, 64, 0.5) - shilov_norm(Angle{}, 256, 64, 0.5)) <= 1e-12);
  for (double q : {0.3, 0.5, 0.7}) {
    for (long k = 0; k < 4; ++k) {
      const Angle theta = Angle::grid(k, 4);
      for (int grid : {16, 64}) {
        CAPTURE(q);
        CAPTURE(k);
        CAPTURE(grid);
        const double v = shilov_norm(theta, grid, 64, q);
        CHECK(v >= 2 - 10.0 / (grid * grid));
        CHECK(v <= 2 + 1e-8);
      }
      CHECK(shilov_norm(theta, 8, 64, q) <= shilov_norm(theta, 32, 64, q) + 1e-14);
    }
  }
  CHECK(shilov_norm(Angle::grid(1, 2), 4, 64, 0.5) >= 1);
}

TEST_CASE("norm domination") {
  const Truncations t;
  const double q = 0.5;
  SUBCASE("z21") {
    const auto r = norm_domination({Z("z21")}, t, q, 8);
    CHECK(r.comparisons > 0);
    CHECK(r.worst_excess <= 1e-8);
  }
  SUBCASE("unit") {
    const auto r = norm_domination({pm().one()}, t, q, 4);
    CHECK(std::abs(r.worst_excess) <= 1e-12);
  }
  SUBCASE("random words") {
    std::mt19937_64 rng(7);
    const auto words = random_words(rng, AlgebraId::PolMatSym, 10, 3);
    for (const auto& w : words) {
      CHECK(w.degree() >= 1);
      CHECK(w.degree() <= 3);
    }
    const auto r = norm_domination(words, t, q, 8);
    CAPTURE(r.worst);
    CHECK(r.worst_excess <= 1e-8);
    CHECK(r.max_slack == 0);
  }
  SUBCASE("slow decay leaves tail slack") {
    const auto r = norm_domination({Z("z11") * Z("z22")}, t, 0.99, 4);
    CHECK(r.max_slack > 0);
    CHECK(r.worst_excess <= 1e-8);
  }
}

TEST_CASE("holomorphic matrix inequalities") {
  const Truncations t;
  const double q = 0.5;
  SUBCASE("z22") {
    const auto h = holo_matrix_inequality({Z("z22")}, 1, t, q, 16);
    CHECK(h.fock <= h.tau_sup + 1e-6);
    CHECK(h.tau_sup <= h.chi_sup + 1e-6);
    CHECK(h.fock == doctest::Approx(1).epsilon(1e-6));
  }
  SUBCASE("identity array") {
    const NcExpr one = pm().one(), zero = pm().zero();
    const auto h = holo_matrix_inequality({one, zero, zero, one}, 2, t, q, 8);
    CHECK(h.fock == doctest::Approx(1).epsilon(1e-12));
    CHECK(h.tau_sup == doctest::Approx(1).epsilon(1e-12));
    CHECK(h.chi_sup == doctest::Approx(1).epsilon(1e-12));
  }
  SUBCASE("random arrays") {
    std::mt19937_64 rng(11);
    for (int n : {1, 2}) {
      for (const auto& a : random_holomorphic_arrays(rng, n, 2, 2)) {
        const auto h = holo_matrix_inequality(a, n, t, q, 16);
        CHECK(h.fock <= h.tau_sup + 1e-6);
        CHECK(h.tau_sup <= h.chi_sup + 1e-6);
      }
    }
  }
  SUBCASE("rejects starred entries") {
    CHECK_THROWS(holo_matrix_inequality({Z("z11*")}, 1, t, q, 8));
  }
}

TEST_CASE("dilation route") {
  std::mt19937_64 rng(3);
  std::vector<NcExpr> samples;
  for (const auto& a : random_holomorphic_arrays(rng, 1, 6, 2)) samples.push_back(a[0]);
  const auto r = dilation_check(16, 4, 0.5, samples, Angle::grid(1, 8));
  CHECK(r.unitarity <= 1e-12);
  CHECK(r.compression <= 1e-12);
  CHECK(r.psi <= 1e-12);
  CHECK(r.psi_phi <= 1e-12);
}

TEST_CASE("omega to theta character identity") {
  CHECK(lemma_bound_check(Angle::symbol("phi1"), Angle::symbol("phi2")) == 0);
  std::mt19937_64 rng(16);
  std::uniform_int_distribution<long> j(0, 23);
  for (int k = 0; k < 16; ++k) CHECK(lemma_bound_check(Angle::grid(j(rng), 24), Angle::grid(j(rng), 24)) == 0);
  CHECK(lemma_bound_check(Angle::grid(1, 3) + Angle::symbol("a"), Angle::pi_times(mpq_class(1, 5))) == 0);
}

TEST_CASE("regular functions in omega") {
  for (double q : {0.5, 0.7}) {
    for (long j = 0; j < 8; ++j) {
      const Angle phi = Angle::grid(j, 8);
      CAPTURE(q);
      CAPTURE(j);
      const auto d = det_unitarity_check(phi, 64, q);
      CHECK(d.star_det <= 1e-10);
      CHECK(d.det_star <= 1e-10);
      CHECK(d.theta_modulus_residual <= 1e-12);
      const Complex expected = -std::polar(1.0 / q, 2 * phi.value());
      CHECK(std::abs(d.omega_det - expected) <= 1e-12);
      const auto inv = regular_involution_check(phi, 64, q);
      for (double r : inv) CHECK(r <= 1e-10);
    }
  }
}
