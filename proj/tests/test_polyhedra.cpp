#include "lcr/polyhedra.hpp"

#include <doctest.h>

#include <random>

#include "lcr/region.hpp"

using lcr::AffineInequality;
using lcr::InequalitySystem;
using lcr::Rational;

namespace {

AffineInequality row(std::map<std::string, Rational> coef, Rational c) {
  AffineInequality r;
  r.coef = std::move(coef);
  r.constant = c;
  r.normalize();
  return r;
}

}  // namespace

TEST_SUITE("polyhedra") {
  TEST_CASE("normalization scales to primitive integers") {
    auto r = row({{"x", Rational(2, 3)}, {"y", Rational(4, 3)}}, Rational(2));
    CHECK(r.coef.at("x") == Rational(1));
    CHECK(r.coef.at("y") == Rational(2));
    CHECK(r.constant == Rational(3));

    auto neg = row({{"x", Rational(-1, 2)}}, Rational(1, 4));
    CHECK(neg.coef.at("x") == Rational(-2));
    CHECK(neg.constant == Rational(1));

    auto taut = row({{"x", Rational(0)}}, Rational(5));
    CHECK(taut.trivially_true());
    auto contra = row({}, Rational(-2));
    CHECK(contra.contradiction());
  }

  TEST_CASE("system dedupes and evaluates") {
    InequalitySystem sys;
    sys.vars = {"x", "y"};
    sys.add(row({{"x", Rational(1)}}, Rational(2)));
    sys.add(row({{"x", Rational(2)}}, Rational(4)));  // same after scaling
    sys.add(row({{"y", Rational(1)}}, Rational(0)));
    CHECK(sys.rows.size() == 2);
    CHECK(sys.satisfied_by({{"x", Rational(2)}, {"y", Rational(-1)}}));
    CHECK_FALSE(sys.satisfied_by({{"x", Rational(3)}, {"y", Rational(-1)}}));
  }

  TEST_CASE("single elimination collapses a chain") {
    // x <= y, y <= 2, 0 <= y; removing y leaves x <= 2 (and nothing else)
    InequalitySystem sys;
    sys.vars = {"x", "y"};
    sys.add(row({{"x", Rational(1)}, {"y", Rational(-1)}}, Rational(0)));
    sys.add(row({{"y", Rational(1)}}, Rational(2)));
    sys.add(row({{"y", Rational(-1)}}, Rational(0)));
    auto next = lcr::fm_eliminate(sys, "y");
    next = lcr::remove_redundant(next);
    REQUIRE(next.rows.size() == 1);
    CHECK(next.rows[0].coef.at("x") == Rational(1));
    CHECK(next.rows[0].constant == Rational(2));
    CHECK_THROWS_AS(lcr::fm_eliminate(next, "z"), std::invalid_argument);
  }

  TEST_CASE("redundancy removal keeps the tight description") {
    InequalitySystem sys;
    sys.vars = {"x"};
    sys.add(row({{"x", Rational(1)}}, Rational(5)));
    sys.add(row({{"x", Rational(1)}}, Rational(3)));
    sys.add(row({{"x", Rational(-1)}}, Rational(0)));
    const auto cleaned = lcr::remove_redundant(sys);
    REQUIRE(cleaned.rows.size() == 2);
    for (const auto& r : cleaned.rows)
      CHECK((r.constant == Rational(3) || r.constant == Rational(0)));
  }

  TEST_CASE("raw builder emits the advertised template") {
    const auto one = lcr::build_region_system(1, true, std::nullopt);
    CHECK(one.rows.size() == 4);  // r >= 0, sum row, coverage, R >= 0
    const auto two = lcr::build_region_system(2, true, std::nullopt);
    CHECK(two.rows.size() == 10);
    const auto three = lcr::build_region_system(3, true, std::nullopt);
    CHECK(three.rows.size() == 18);
    CHECK_THROWS_AS(lcr::build_region_system(2, false, std::nullopt), std::invalid_argument);
    CHECK_THROWS_AS(
        lcr::build_region_system(2, false, lcr::RateVector{Rational(1)}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        lcr::build_region_system(2, false, lcr::RateVector{Rational(-1), Rational(1)}),
        std::invalid_argument);
  }

  TEST_CASE("one-user region projects to an interval") {
    const auto sym = lcr::latent_facets(1, true, std::nullopt);
    REQUIRE(sym.rows.size() == 2);
    // 0 <= R1 <= Rstar1; Rstar1 >= 0 follows and is pruned
    InequalitySystem expect;
    expect.vars = sym.vars;
    expect.add(row({{"R1", Rational(-1)}}, Rational(0)));
    expect.add(row({{"R1", Rational(1)}, {"Rstar1", Rational(-1)}}, Rational(0)));
    expect.sort_rows();
    CHECK(sym.rows == expect.rows);

    const auto conc = lcr::latent_facets(1, false, lcr::RateVector{Rational(5)});
    REQUIRE(conc.rows.size() == 2);
    InequalitySystem expect2;
    expect2.vars = conc.vars;
    expect2.add(row({{"R1", Rational(-1)}}, Rational(0)));
    expect2.add(row({{"R1", Rational(1)}}, Rational(5)));
    expect2.sort_rows();
    CHECK(conc.rows == expect2.rows);
  }

  TEST_CASE("two-user symbolic facets") {
    const auto sys = lcr::latent_facets(2, true, std::nullopt);
    InequalitySystem named;
    named.vars = sys.vars;
    named.add(row({{"R1", Rational(1)}, {"R2", Rational(1)}, {"Rstar1", Rational(-1)},
                   {"Rstar2", Rational(-1)}},
                  Rational(0)));
    named.add(row({{"R1", Rational(2)}, {"R2", Rational(1)}, {"Rstar1", Rational(-2)},
                   {"Rstar2", Rational(-1)}},
                  Rational(0)));
    for (const auto& want : named.rows) {
      bool found = false;
      for (const auto& have : sys.rows) found = found || have == want;
      CHECK(found);
    }
    // everything else is a plain sign constraint
    bool saw_r1 = false, saw_r2 = false;
    for (const auto& have : sys.rows) {
      bool named_row = false;
      for (const auto& want : named.rows) named_row = named_row || have == want;
      if (named_row) continue;
      CHECK(have.coef.size() == 1);
      CHECK(have.coef.begin()->second == Rational(-1));
      CHECK(have.constant == Rational(0));
      saw_r1 = saw_r1 || have.coef.count("R1");
      saw_r2 = saw_r2 || have.coef.count("R2");
    }
    CHECK(saw_r1);
    CHECK(saw_r2);
  }

  TEST_CASE("three-user concrete facets and vertices") {
    const lcr::RateVector rstar{Rational(1), Rational(2), Rational(2)};
    const auto sys = lcr::latent_facets(3, false, rstar);
    InequalitySystem named;
    named.vars = sys.vars;
    named.add(row({{"R1", Rational(3)}, {"R2", Rational(6)}, {"R3", Rational(2)}}, Rational(19)));
    named.add(row({{"R1", Rational(2)}, {"R2", Rational(2)}, {"R3", Rational(1)}}, Rational(8)));
    named.add(row({{"R1", Rational(1)}, {"R2", Rational(2)}, {"R3", Rational(1)}}, Rational(7)));
    named.add(row({{"R1", Rational(3)}, {"R2", Rational(3)}, {"R3", Rational(1)}}, Rational(11)));
    for (const auto& want : named.rows) {
      bool found = false;
      for (const auto& have : sys.rows) found = found || have == want;
      CHECK(found);
    }
    const auto verts = lcr::vertices3(sys);
    auto contains = [&](std::array<Rational, 3> v) {
      for (const auto& have : verts)
        if (have == v) return true;
      return false;
    };
    CHECK(contains({Rational(1), Rational(2), Rational(2)}));
    CHECK(contains({Rational(0), Rational(0), Rational(7)}));
    CHECK(contains({Rational(11, 3), Rational(0), Rational(0)}));
    // every vertex is feasible
    for (const auto& v : verts) {
      const std::map<std::string, Rational> pt{{"R1", v[0]}, {"R2", v[1]}, {"R3", v[2]}};
      CHECK(sys.satisfied_by(pt));
    }
  }

  TEST_CASE("facets agree with membership on random points") {
    std::mt19937_64 rng(2024);
    for (int k = 2; k <= 3; ++k) {
      const auto rstar = lcr::sample_rates(k, Rational(2), 5 + k);
      const auto sys = lcr::latent_facets(k, false, rstar);
      for (int trial = 0; trial < 60; ++trial) {
        const auto pt = lcr::sample_rates(k, Rational(4), rng());
        std::map<std::string, Rational> named;
        for (int j = 0; j < k; ++j) named["R" + std::to_string(j + 1)] = pt[j];
        const bool by_facets = sys.satisfied_by(named);
        const bool by_member =
            std::holds_alternative<lcr::MemberInside>(lcr::member(k, rstar, pt));
        CHECK(by_facets == by_member);
      }
    }
  }

  TEST_CASE("elimination beyond the supported size is refused") {
    CHECK_THROWS_AS(lcr::latent_facets(5, false,
                                       lcr::RateVector(5, Rational(1)), 4),
                    lcr::EliminationLimitError);
  }

  TEST_CASE("vertex extraction demands a bounded three-variable system") {
    InequalitySystem sys;
    sys.vars = {"R1", "R2", "R3"};
    sys.add(row({{"R1", Rational(-1)}}, Rational(0)));
    sys.add(row({{"R2", Rational(-1)}}, Rational(0)));
    sys.add(row({{"R3", Rational(-1)}}, Rational(0)));
    CHECK_THROWS_AS(lcr::vertices3(sys), std::domain_error);
  }
}
