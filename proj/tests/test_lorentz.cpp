#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "oll/calculus.hpp"
#include "oll/lorentz.hpp"

using namespace oll;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

DomainPtr square(int cells, double extent) {
  return GridDomain::box(2, {cells, cells}, extent / cells);
}

// indicator with measure exactly cells_on * h^n
ScalarField indicator(const DomainPtr& g, std::size_t cells_on) {
  ScalarField f(g);
  std::size_t placed = 0;
  for (std::size_t i = 0; i < f.size() && placed < cells_on; ++i)
    if (g->cell_kind(i) == CellKind::Interior) {
      f[i] = 1.0;
      ++placed;
    }
  REQUIRE(placed == cells_on);
  return f;
}

ScalarField random_field(const DomainPtr& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  ScalarField f(g);
  f.fill_interior([&](const Point&) { return dist(rng); });
  return f;
}

}  // namespace

TEST_CASE("weak norm of an indicator is m^{1/q}") {
  DomainPtr g = square(10, 1.0);  // h^n = 0.01
  const ScalarField f = indicator(g, 25);  // measure 0.25
  CHECK(lorentz_norm(f, 2.0, kInf) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(lorentz_norm(f, 1.0, kInf) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("finite-s norm of an indicator is (q/s)^{1/s} m^{1/q}") {
  DomainPtr g = square(10, 1.0);
  const ScalarField f = indicator(g, 25);
  CHECK(lorentz_norm(f, 1.0, 2.0) ==
        doctest::Approx(std::sqrt(0.5) * 0.25).epsilon(1e-12));
  CHECK(lorentz_norm(f, 1.0, 2.0) == doctest::Approx(0.17677669529663689).epsilon(1e-12));
  for (double q : {0.5, 1.5, 3.0})
    for (double s : {1.0, 2.5, 7.0})
      CHECK(lorentz_norm(f, q, s) ==
            doctest::Approx(std::pow(q / s, 1.0 / s) * std::pow(0.25, 1.0 / q)).epsilon(1e-10));
}

TEST_CASE("diagonal lorentz norm equals the plain integral norm") {
  DomainPtr g = square(13, 2.6);
  for (int trial = 0; trial < 20; ++trial) {
    const ScalarField f = random_field(g, 100 + trial);
    for (double q : {0.7, 1.0, 2.0, 3.5}) {
      const double plain = std::pow(lp_integral(f, q), 1.0 / q);
      CHECK(lorentz_norm(f, q, q) == doctest::Approx(plain).epsilon(1e-10));
    }
  }
}

TEST_CASE("zero field has zero norm") {
  DomainPtr g = square(8, 1.6);
  ScalarField f(g);
  CHECK(lorentz_norm(f, 2.0, kInf) == 0.0);
  CHECK(lorentz_norm(f, 2.0, 1.5) == 0.0);
}

TEST_CASE("distribution function agrees with a sorted-count evaluation") {
  DomainPtr g = square(15, 3.0);
  const ScalarField f = random_field(g, 4242);
  std::vector<double> vals;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (g->cell_kind(i) == CellKind::Interior) vals.push_back(std::fabs(f[i]));
  std::sort(vals.begin(), vals.end());
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dl(0.0, 2.2);
  const double hn = g->cell_volume();
  for (int i = 0; i < 100; ++i) {
    const double lambda = dl(rng);
    const auto it = std::upper_bound(vals.begin(), vals.end(), lambda);
    const double count = static_cast<double>(vals.end() - it);
    CHECK(distribution_function(f, lambda) == count * hn);
  }
}

TEST_CASE("band sets at exact and interior offsets") {
  DomainPtr g = square(9, 1.8);
  ScalarField u(g), v(g);

  SUBCASE("u equal to v gives empty sets") {
    const BandSets b = band_sets(u, v, 1.0, 1.0);
    CHECK(b.e_count == 0);
    CHECK(b.f_count == 0);
  }

  SUBCASE("difference exactly at the band edge stays out") {
    u.fill_interior([](const Point&) { return 2.0; });
    const BandSets b = band_sets(u, v, 1.0, 1.0);
    CHECK(b.e_count == 0);  // 2 < k+h = 2 fails strictly
    CHECK(b.f_count == g->interior_count());
  }

  SUBCASE("difference inside the band fills both sets") {
    u.fill_interior([](const Point&) { return 1.5; });
    const BandSets b = band_sets(u, v, 1.0, 1.0);
    CHECK(b.e_count == g->interior_count());
    CHECK(b.f_count == g->interior_count());
  }
}

TEST_CASE("band set inclusions on random data") {
  DomainPtr g = square(12, 2.4);
  const ScalarField u = random_field(g, 55);
  const ScalarField v = random_field(g, 56);
  const double k = 0.4, h = 0.3;
  const BandSets b = band_sets(u, v, k, h);
  const BandSets deeper = band_sets(u, v, k, k + h);  // F_{k+h} computed as its own f_h
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (b.e_kh[i]) CHECK(b.f_h[i]);
    if (deeper.f_h[i]) CHECK(b.f_h[i]);
  }
}

TEST_CASE("band sets demand matching grids") {
  DomainPtr g1 = square(9, 1.8);
  DomainPtr g2 = square(10, 1.8);
  ScalarField u(g1), v(g2);
  CHECK_THROWS_AS(band_sets(u, v, 1.0, 1.0), DomainMismatch);
}

TEST_CASE("level set family on zero inputs is empty") {
  DomainPtr g = square(9, 1.8);
  ScalarField z(g);
  const ExponentConfig cfg = derive_exponents(2, 1.5, 0.6, 0.3);
  const LevelSetFamily fam = level_set_family(z, z, z, cfg, 1.0);
  CHECK(fam.m_v1 == 0.0);
  CHECK(fam.m_v2 == 0.0);
  CHECK(fam.m_v3 == 0.0);
  CHECK(fam.m_v == 0.0);
  CHECK(fam.m_w == 0.0);
}

TEST_CASE("chi2 = 0 empties the second set regardless of input") {
  DomainPtr g = square(9, 1.8);
  ScalarField z(g);
  ScalarField big(g, 1e9);
  const ExponentConfig cfg = derive_exponents(2, 1.5, 0.6, 0.3);  // chi2 = 0
  REQUIRE(cfg.chi2 == 0);
  const LevelSetFamily fam = level_set_family(z, big, z, cfg, 1.0);
  CHECK(fam.m_v2 == 0.0);
}

TEST_CASE("level set family matches a per-cell threshold oracle on a 9x9 grid") {
  DomainPtr g = square(9, 1.8);
  std::mt19937_64 rng(314);
  std::uniform_real_distribution<double> dist(0.0, 3.0);
  ScalarField ma(g), ms(g), mb(g);
  ma.fill_interior([&](const Point&) { return dist(rng); });
  ms.fill_interior([&](const Point&) { return dist(rng); });
  mb.fill_interior([&](const Point&) { return dist(rng); });
  const ExponentConfig cfg = derive_exponents(2, 1.3, 0.5, 0.2);  // chi2 = 1
  REQUIRE(cfg.chi2 == 1);
  const double lambda = 0.8;
  const LevelSetFamily fam = level_set_family(ma, ms, mb, cfg, lambda);
  for (std::size_t i = 0; i < g->cell_count(); ++i) {
    if (g->cell_kind(i) != CellKind::Interior) {
      CHECK(fam.v1[i] == 0);
      continue;
    }
    const bool in1 = ma[i] > cfg.a * lambda;
    const bool in2 = ms[i] > lambda / std::pow(cfg.epsilon, cfg.gamma);
    const bool in3 = mb[i] > cfg.epsilon * cfg.epsilon * lambda;
    const bool inw = ma[i] > lambda;
    CHECK(fam.v1[i] == (in1 ? 1 : 0));
    CHECK(fam.v2[i] == (in2 ? 1 : 0));
    CHECK(fam.v3[i] == (in3 ? 1 : 0));
    CHECK(fam.w[i] == (inw ? 1 : 0));
    CHECK(fam.v[i] == ((in1 && !in2 && !in3) ? 1 : 0));
  }
}

TEST_CASE("set relations of the family") {
  DomainPtr g = square(11, 2.2);
  std::mt19937_64 rng(999);
  std::uniform_real_distribution<double> dist(0.0, 5.0);
  ScalarField ma(g), ms(g), mb(g);
  ma.fill_interior([&](const Point&) { return dist(rng); });
  ms.fill_interior([&](const Point&) { return dist(rng); });
  mb.fill_interior([&](const Point&) { return dist(rng); });
  const ExponentConfig cfg = derive_exponents(2, 1.3, 0.5, 0.2);
  for (double lambda : {0.3, 1.0, 2.5}) {
    const LevelSetFamily fam = level_set_family(ma, ms, mb, cfg, lambda);
    for (std::size_t i = 0; i < g->cell_count(); ++i) {
      if (fam.v[i]) {
        CHECK(fam.v1[i]);
        CHECK(!fam.v2[i]);
        CHECK(!fam.v3[i]);
      }
      if (fam.v1[i]) CHECK(fam.w[i]);  // a > 1
    }
    CHECK(fam.m_v <= fam.m_v1);
    CHECK(fam.m_v1 <= fam.m_w);
  }
}

TEST_CASE("lorentz norm restricted to a region") {
  DomainPtr g = square(10, 1.0);
  const Region ball = Region::ball(g, {0.0, 0.0}, 0.35);
  ScalarField f(g, 1.0);  // constant one on the domain
  const double m = ball.volume();
  CHECK(lorentz_norm(f, 2.0, kInf, &ball) == doctest::Approx(std::sqrt(m)).epsilon(1e-12));
}
