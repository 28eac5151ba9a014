#include "lcr/infotools.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using lcr::JointDistribution;
using lcr::PairedDistribution;

namespace {

// chain-rule oracle: H(V_G | U_G) = sum_u p(u) H(V_G | U_G = u)
double cond_entropy_oracle(const PairedDistribution& dist, std::uint32_t group) {
  const int n = dist.n;
  std::vector<int> vcoords, ucoords;
  for (int t = 0; t < n; ++t) {
    if (group & (1u << t)) {
      vcoords.push_back(t);
      ucoords.push_back(n + t);
    }
  }
  if (vcoords.empty()) return 0.0;

  // walk the dense table, bucketing by the U_G cell
  const auto& sizes = dist.joint.sizes;
  std::size_t ucells = 1;
  for (int c : ucoords) ucells *= sizes[c];
  std::vector<std::vector<double>> bucket(ucells);
  std::vector<double> umass(ucells, 0.0);

  const std::size_t total = dist.joint.p.size();
  std::vector<int> index(sizes.size(), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int c = static_cast<int>(sizes.size()) - 1; c >= 0; --c) {
      index[c] = static_cast<int>(rem % sizes[c]);
      rem /= sizes[c];
    }
    std::size_t ukey = 0;
    for (int c : ucoords) ukey = ukey * sizes[c] + index[c];
    std::size_t vkey = 0;
    for (int c : vcoords) vkey = vkey * sizes[c] + index[c];
    std::size_t vcells = 1;
    for (int c : vcoords) vcells *= sizes[c];
    if (bucket[ukey].empty()) bucket[ukey].assign(vcells, 0.0);
    bucket[ukey][vkey] += dist.joint.p[flat];
    umass[ukey] += dist.joint.p[flat];
  }

  double h = 0.0;
  for (std::size_t u = 0; u < ucells; ++u) {
    if (umass[u] <= 0.0) continue;
    for (double mass : bucket[u]) {
      if (mass <= 0.0) continue;
      const double q = mass / umass[u];
      h -= umass[u] * q * std::log2(q);
    }
  }
  return h;
}

}  // namespace

TEST_SUITE("infotools") {
  TEST_CASE("validation") {
    CHECK_THROWS_AS(lcr::validate(JointDistribution{{2}, {0.5, 0.6}}), std::invalid_argument);
    CHECK_THROWS_AS(lcr::validate(JointDistribution{{2}, {1.1, -0.1}}), std::invalid_argument);
    CHECK_THROWS_AS(lcr::validate(JointDistribution{{2, 2}, {0.5, 0.5}}), std::invalid_argument);
    lcr::validate(JointDistribution{{2}, {0.5, 0.5}});
  }

  TEST_CASE("entropy on frozen distributions") {
    const JointDistribution fair{{2}, {0.5, 0.5}};
    CHECK(lcr::entropy(fair, {0}) == doctest::Approx(1.0).epsilon(1e-12));
    const JointDistribution point{{3}, {1.0, 0.0, 0.0}};
    CHECK(lcr::entropy(point, {0}) == doctest::Approx(0.0).epsilon(1e-12));
    const JointDistribution tri{{3}, {1.0 / 3, 1.0 / 3, 1.0 / 3}};
    CHECK(lcr::entropy(tri, {0}) == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
    // product of a fair bit and a deterministic bit
    const JointDistribution prod{{2, 2}, {0.5, 0.0, 0.5, 0.0}};
    CHECK(lcr::entropy(prod, {0, 1}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lcr::entropy(prod, {1}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(lcr::entropy(prod, {}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(lcr::entropy(prod, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(lcr::entropy(prod, {2}), std::invalid_argument);
  }

  TEST_CASE("copy and independence extremes of conditioning") {
    // n=1: V1 = U1, a fair bit. p over (V1, U1).
    PairedDistribution copy;
    copy.n = 1;
    copy.joint = {{2, 2}, {0.5, 0.0, 0.0, 0.5}};
    CHECK(lcr::cond_entropy_vu(copy, 0b1) == doctest::Approx(0.0).epsilon(1e-12));

    PairedDistribution indep;
    indep.n = 1;
    indep.joint = {{2, 2}, {0.25, 0.25, 0.25, 0.25}};
    CHECK(lcr::cond_entropy_vu(indep, 0b1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lcr::cond_entropy_vu(indep, 0) == doctest::Approx(0.0));
  }

  TEST_CASE("conditional entropy matches the chain-rule oracle") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
      const auto dist = lcr::make_paired_dist(rng, 3, 3);
      for (std::uint32_t g = 0; g < (1u << dist.n); ++g) {
        CHECK(lcr::cond_entropy_vu(dist, g) ==
              doctest::Approx(cond_entropy_oracle(dist, g)).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("intersection unions") {
    const std::vector<std::uint32_t> family{0b011, 0b110, 0b101};
    CHECK(lcr::ghat(family, 1) == 0b111);
    CHECK(lcr::ghat(family, 2) == 0b111);  // pairwise intersections: {2},{1},{3}
    CHECK(lcr::ghat(family, 3) == 0b000);
    CHECK_THROWS_AS(lcr::ghat(family, 0), std::invalid_argument);
    CHECK_THROWS_AS(lcr::ghat(family, 4), std::invalid_argument);
    CHECK(lcr::ghat({0b1}, 1) == 0b1);
  }

  TEST_CASE("two-group margin is the conditional submodularity gap") {
    std::mt19937_64 rng(57);
    for (int trial = 0; trial < 25; ++trial) {
      const auto dist = lcr::make_paired_dist(rng, 3, 3);
      const std::uint32_t all = (1u << dist.n) - 1;
      const std::uint32_t g1 = rng() & all, g2 = rng() & all;
      const double margin = lcr::kway_margin(dist, {g1, g2});
      const double direct = lcr::cond_entropy_vu(dist, g1) + lcr::cond_entropy_vu(dist, g2) -
                            lcr::cond_entropy_vu(dist, g1 | g2) -
                            lcr::cond_entropy_vu(dist, g1 & g2);
      CHECK(margin == doctest::Approx(direct).epsilon(1e-9));
      CHECK(margin >= -1e-9);
    }
  }

  TEST_CASE("margin demands independent conditioners") {
    // U1 and U2 correlated: forbidden
    PairedDistribution bad;
    bad.n = 2;
    bad.joint.sizes = {2, 2, 2, 2};
    bad.joint.p.assign(16, 0.0);
    // V = (0,0) always; U1 = U2 = fair bit
    bad.joint.p[0b0000] = 0.5;
    bad.joint.p[0b0011] = 0.5;
    CHECK_THROWS_AS(lcr::kway_margin(bad, {0b01, 0b10}), std::invalid_argument);
  }

  TEST_CASE("random families keep non-negative margins") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 60; ++trial) {
      const auto dist = lcr::make_paired_dist(rng, 3, 3);
      const auto family = lcr::make_family(rng, dist.n, 3);
      CHECK(lcr::kway_margin(dist, family) >= -1e-9);
    }
  }

  TEST_CASE("generator layout is valid and seeded") {
    std::mt19937_64 a(9), b(9), c(10);
    const auto da = lcr::make_paired_dist(a, 3, 3);
    const auto db = lcr::make_paired_dist(b, 3, 3);
    CHECK(da.joint.p == db.joint.p);
    lcr::validate(da.joint);
    CHECK(da.joint.sizes.size() == static_cast<std::size_t>(2 * da.n));
    const auto dc = lcr::make_paired_dist(c, 3, 3);
    if (dc.joint.sizes == da.joint.sizes) CHECK(dc.joint.p != da.joint.p);
  }

  TEST_CASE("suite summary counts violations") {
    const auto suite = lcr::run_submodularity_suite(200, 11);
    CHECK(suite.trials == 200);
    CHECK(suite.violations == 0);
    CHECK(suite.pair_min_margin >= -1e-9);
    CHECK(suite.kway_min_margin >= -1e-9);
    const auto again = lcr::run_submodularity_suite(200, 11);
    CHECK(suite.pair_min_margin == again.pair_min_margin);
    CHECK(suite.kway_min_margin == again.kway_min_margin);
  }
}
