// Release gate: one line per criterion, exit code = number of failures.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <array>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "lcr/broadcast.hpp"
#include "lcr/exchange.hpp"
#include "lcr/infotools.hpp"
#include "lcr/polyhedra.hpp"
#include "lcr/rational.hpp"
#include "lcr/reed_solomon.hpp"
#include "lcr/region.hpp"

using lcr::Rational;

namespace {

struct Check {
  std::string label;
  double budget_seconds;
  std::function<std::string()> run;  // empty string = pass
};

std::string c1_exchange_rates() {
  if (lcr::phi(2, 1, 2) != Rational(1)) return "phi(2,1,2) != 1";
  if (lcr::phi(2, 2, 1) != Rational(1, 2)) return "phi(2,2,1) != 1/2";
  return "";
}

std::string c2_identity_suite() { return lcr::run_phi_identity_suite(12); }

lcr::AffineInequality make_row(std::map<std::string, Rational> coef, Rational c) {
  lcr::AffineInequality r;
  r.coef = std::move(coef);
  r.constant = c;
  r.normalize();
  return r;
}

std::string c3_symbolic_facets() {
  const auto sys = lcr::latent_facets(3, true, std::nullopt);
  const int families[4][3] = {{3, 6, 2}, {2, 2, 1}, {1, 2, 1}, {3, 3, 1}};
  std::vector<lcr::AffineInequality> named;
  for (const auto& f : families) {
    std::map<std::string, Rational> coef;
    for (int j = 0; j < 3; ++j) {
      coef["R" + std::to_string(j + 1)] = Rational(f[j]);
      coef["Rstar" + std::to_string(j + 1)] = Rational(-f[j]);
    }
    named.push_back(make_row(std::move(coef), Rational(0)));
  }
  for (const auto& want : named) {
    bool found = false;
    for (const auto& have : sys.rows) found = found || have == want;
    if (!found) return "missing facet family " + want.str();
  }
  for (const auto& have : sys.rows) {
    bool is_named = false;
    for (const auto& want : named) is_named = is_named || have == want;
    if (is_named) continue;
    const bool sign_row = have.coef.size() == 1 &&
                          have.coef.begin()->second == Rational(-1) &&
                          have.constant == Rational(0);
    if (!sign_row) return "unexpected facet " + have.str();
  }
  return "";
}

std::string c4_vertex_reproduction() {
  const lcr::RateVector rstar{Rational(1), Rational(2), Rational(2)};
  const auto sys = lcr::latent_facets(3, false, rstar);
  const int families[4][3] = {{3, 6, 2}, {2, 2, 1}, {1, 2, 1}, {3, 3, 1}};
  const int rhs[4] = {19, 8, 7, 11};
  for (int f = 0; f < 4; ++f) {
    std::map<std::string, Rational> coef;
    for (int j = 0; j < 3; ++j) coef["R" + std::to_string(j + 1)] = Rational(families[f][j]);
    const auto want = make_row(std::move(coef), Rational(rhs[f]));
    bool found = false;
    for (const auto& have : sys.rows) found = found || have == want;
    if (!found) return "missing instantiated facet " + want.str();
  }
  const auto verts = lcr::vertices3(sys);
  const std::vector<std::array<Rational, 3>> expected{
      {{Rational(1), Rational(2), Rational(2)}},
      {{Rational(0), Rational(0), Rational(7)}},
      {{Rational(11, 3), Rational(0), Rational(0)}}};
  for (const auto& want : expected) {
    bool found = false;
    for (const auto& have : verts) found = found || have == want;
    if (!found)
      return "missing vertex (" + want[0].str() + "," + want[1].str() + "," + want[2].str() + ")";
  }
  return "";
}

std::string c5_dual_oracle_support() {
  for (int k = 2; k <= 5; ++k) {
    std::mt19937_64 rng(1000 + k);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto rstar = lcr::sample_rates(k, Rational(4), rng());
      const auto dir = lcr::sample_rates(k, Rational(3), rng());
      const auto lp = lcr::support_lp(k, rstar, dir);
      const auto part = lcr::support_partition(k, rstar, dir);
      if (lp.value != part.value)
        return "route mismatch at K=" + std::to_string(k) + " trial " + std::to_string(trial) +
               ": " + lp.value.str() + " vs " + part.value.str();
    }
  }
  return "";
}

std::string c6_boundary_discipline() {
  std::mt19937_64 rng(2199);
  for (int trial = 0; trial < 500; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 3);
    lcr::RateVector rstar, dir;
    do {
      rstar = lcr::sample_rates(k, Rational(3), rng());
    } while (std::all_of(rstar.begin(), rstar.end(), [](const Rational& x) { return x.is_zero(); }));
    do {
      dir = lcr::sample_rates(k, Rational(2), rng());
    } while (std::all_of(dir.begin(), dir.end(), [](const Rational& x) { return x.is_zero(); }));

    const auto sup = lcr::support_lp(k, rstar, dir);
    if (!std::holds_alternative<lcr::MemberInside>(lcr::member(k, rstar, sup.point)))
      return "support point not inside at trial " + std::to_string(trial);

    lcr::RateVector scaled = sup.point;
    for (auto& x : scaled) x *= Rational(101, 100);
    const auto verdict = lcr::member(k, rstar, scaled);
    if (!std::holds_alternative<lcr::MemberOutside>(verdict))
      return "scaled support point not outside at trial " + std::to_string(trial);
    // the query direction itself must separate: dir . scaled > sup.value
    Rational lhs;
    for (int j = 0; j < k; ++j) lhs += dir[j] * scaled[j];
    if (!(lhs > sup.value)) return "query direction fails to separate at trial " + std::to_string(trial);
  }
  return "";
}

std::string c7_facet_member_agreement() {
  for (int k = 2; k <= 3; ++k) {
    const auto rstar = lcr::sample_rates(k, Rational(2), 77 + k);
    const auto sys = lcr::latent_facets(k, false, rstar);
    std::mt19937_64 rng(300 + k);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto pt = lcr::sample_rates(k, Rational(3), rng());
      std::map<std::string, Rational> named;
      for (int j = 0; j < k; ++j) named["R" + std::to_string(j + 1)] = pt[j];
      const bool by_facets = sys.satisfied_by(named);
      const bool by_member = std::holds_alternative<lcr::MemberInside>(lcr::member(k, rstar, pt));
      if (by_facets != by_member)
        return "disagreement at K=" + std::to_string(k) + " trial " + std::to_string(trial);
    }
  }
  return "";
}

std::string c8_mds_exhaustive() {
  std::mt19937_64 rng(88);
  for (int n = 1; n <= 10; ++n) {
    for (int k = 1; k <= n; ++k) {
      const lcr::MdsCodeSpec spec{n, k};
      std::vector<std::uint8_t> data(k);
      for (auto& b : data) b = static_cast<std::uint8_t>(rng());
      const auto shares = lcr::rs_encode(spec, data);
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != k) continue;
        std::vector<std::pair<int, std::uint8_t>> kept;
        for (int pos = 0; pos < n; ++pos)
          if (mask & (1u << pos)) kept.emplace_back(pos, shares[pos]);
        if (lcr::rs_decode(spec, kept) != data)
          return "exhaustive decode failed for (" + std::to_string(n) + "," + std::to_string(k) +
                 ")";
      }
    }
  }
  for (int s = 0; s < 20; ++s) {
    const int n = 3 + static_cast<int>(rng() % 58);  // 3..60
    const int k = 1 + static_cast<int>(rng() % n);
    const lcr::MdsCodeSpec spec{n, k};
    std::vector<std::uint8_t> data(k);
    for (auto& b : data) b = static_cast<std::uint8_t>(rng());
    const auto shares = lcr::rs_encode(spec, data);
    for (int trial = 0; trial < 1000; ++trial) {
      // random k-subset of positions
      std::vector<int> positions(n);
      for (int p = 0; p < n; ++p) positions[p] = p;
      for (int p = 0; p < k; ++p) {
        const int swap = p + static_cast<int>(rng() % (n - p));
        std::swap(positions[p], positions[swap]);
      }
      std::vector<std::pair<int, std::uint8_t>> kept;
      for (int p = 0; p < k; ++p) kept.emplace_back(positions[p], shares[positions[p]]);
      if (lcr::rs_decode(spec, kept) != data)
        return "random-pattern decode failed for (" + std::to_string(n) + "," +
               std::to_string(k) + ")";
    }
  }
  return "";
}

std::string c9_end_to_end() {
  auto cell = [](int i, int j, int amount) {
    std::vector<std::vector<int>> alloc(3, std::vector<int>(3, 0));
    alloc[i - 1][j - 1] = amount;
    return alloc;
  };
  {
    const auto rep = lcr::run_end_to_end(3, {0, 1, 0}, cell(2, 3, 1), 1);
    if (!rep.all_ok) return "2->3 conversion failed to decode";
    if (rep.delivered_rate[2] != Rational(2)) return "2->3 rate is not 2 per source symbol";
  }
  {
    const auto rep = lcr::run_end_to_end(3, {0, 0, 1}, cell(3, 1, 1), 2);
    if (!rep.all_ok) return "3->1 conversion failed to decode";
    if (rep.delivered_rate[0] != Rational(1, 3)) return "3->1 rate is not 1/3 per source symbol";
  }
  {
    const auto rep = lcr::run_end_to_end(3, {1, 0, 0}, cell(1, 2, 1), 3);
    if (!rep.all_ok) return "1->2 conversion failed to decode";
    if (rep.delivered_rate[1] != Rational(1, 2)) return "1->2 rate is not 1/2 per source symbol";
  }
  std::mt19937_64 rng(909);
  const auto table = lcr::phi_table(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> caps(3);
    std::vector<std::vector<int>> alloc(3, std::vector<int>(3, 0));
    for (int i = 0; i < 3; ++i) {
      caps[i] = static_cast<int>(rng() % 5);
      int left = caps[i];
      for (int j = 0; j < 3; ++j) {
        const int amount = left == 0 ? 0 : static_cast<int>(rng() % (left + 1));
        alloc[i][j] = amount;
        left -= amount;
      }
    }
    const auto rep = lcr::run_end_to_end(3, caps, alloc, 5000 + trial);
    if (!rep.all_ok) return "composite decode failed at trial " + std::to_string(trial);
    for (int j = 1; j <= 3; ++j) {
      Rational want;
      for (int i = 1; i <= 3; ++i) want += table.at(i, j) * Rational(alloc[i - 1][j - 1]);
      if (rep.delivered_rate[j - 1] != want)
        return "delivered rate drifted at trial " + std::to_string(trial);
    }
  }
  return "";
}

std::string c10_submodularity() {
  const auto suite = lcr::run_submodularity_suite(10000, 424242, 3, 3, 3);
  if (suite.violations != 0)
    return std::to_string(suite.violations) + " margin violations below -1e-9";
  if (suite.pair_min_margin < -1e-9) return "pair margin below tolerance";
  if (suite.kway_min_margin < -1e-9) return "k-way margin below tolerance";
  return "";
}

}  // namespace

int main() {
  const std::vector<Check> checks = {
      {"C1: two-user exchange rates are 1 and 1/2", 1.0, c1_exchange_rates},
      {"C2: exchange identity suite exact through K=12", 10.0, c2_identity_suite},
      {"C3: three-user symbolic facets are the four families plus sign rows", 30.0,
       c3_symbolic_facets},
      {"C4: facet right-hand sides (19,8,7,11) and the three frozen vertices", 10.0,
       c4_vertex_reproduction},
      {"C5: support routes agree exactly, 1000 instances per K in 2..5", 120.0,
       c5_dual_oracle_support},
      {"C6: support points inside, 1.01-scalings outside, 500 directions", 120.0,
       c6_boundary_discipline},
      {"C7: facet satisfaction equals membership, 1000 points per K in {2,3}", 60.0,
       c7_facet_member_agreement},
      {"C8: erasure decode identity, exhaustive n<=10 plus random n<=60", 60.0, c8_mds_exhaustive},
      {"C9: simulated payload rates match exchange rates, plus 200 composites", 120.0,
       c9_end_to_end},
      {"C10: entropy margins >= -1e-9 over 10000 trials", 120.0, c10_submodularity},
  };

  int failures = 0;
  for (const auto& check : checks) {
    const auto start = std::chrono::steady_clock::now();
    std::string err;
    try {
      err = check.run();
    } catch (const std::exception& e) {
      err = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (err.empty() && secs > check.budget_seconds)
      err = "exceeded time budget (" + std::to_string(check.budget_seconds) + " s)";
    if (err.empty()) {
      std::printf("PASS %s (%.2f s)\n", check.label.c_str(), secs);
    } else {
      std::printf("FAIL %s (%.2f s): %s\n", check.label.c_str(), secs, err.c_str());
      ++failures;
    }
  }
  return failures;
}
