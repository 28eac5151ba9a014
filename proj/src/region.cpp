#include "lcr/region.hpp"

#include "lcr/linprog.hpp"

#include <random>
#include <stdexcept>

namespace lcr {

namespace {

void check_vector(int K, const RateVector& v, const char* what, bool require_nonneg) {
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  if (static_cast<int>(v.size()) != K)
    throw std::invalid_argument(std::string(what) + ": wrong length");
  if (require_nonneg) {
    for (const auto& e : v) {
      if (e.sign() < 0) throw std::invalid_argument(std::string(what) + ": negative entry");
    }
  }
}

// Separable closed form of the support value: each source level i spends
// its whole rate on the best target, so the maximum is
// sum_i rstar[i] * max_j dir[j] * phi(i, j). Used only to sanity-check
// certificates; callers solve the LP or enumerate partitions.
Rational support_value_direct(const ExchangeTable& table, const RateVector& rstar,
                              const DirectionVector& dir) {
  Rational total;
  const int K = table.K;
  for (int i = 1; i <= K; ++i) {
    Rational best;  // j = i gives dir[i] * 1 >= 0, so 0 only if all terms are
    for (int j = 1; j <= K; ++j) {
      Rational v = dir[j - 1] * table.at(i, j);
      if (v > best) best = v;
    }
    total += rstar[i - 1] * best;
  }
  return total;
}

}  // namespace

std::vector<ConsecutivePartition> enumerate_partitions(int K) {
  if (K < 1) throw std::invalid_argument("enumerate_partitions: K must be >= 1");
  // Boundaries in lexicographic order (first segment shortest first), then
  // representatives as an odometer with the leftmost segment most significant.
  std::vector<std::vector<int>> all_ends;
  std::vector<int> ends;
  auto rec = [&](auto&& self, int start) -> void {
    if (start > K) {
      all_ends.push_back(ends);
      return;
    }
    for (int end = start; end <= K; ++end) {
      ends.push_back(end);
      self(self, end + 1);
      ends.pop_back();
    }
  };
  rec(rec, 1);

  std::vector<ConsecutivePartition> out;
  for (const auto& e : all_ends) {
    const int segs = static_cast<int>(e.size());
    std::vector<int> reps(segs);
    for (int t = 0; t < segs; ++t) reps[t] = t == 0 ? 1 : e[t - 1] + 1;
    for (;;) {
      out.push_back({e, reps});
      int t = segs - 1;
      while (t >= 0 && reps[t] == e[t]) {
        reps[t] = t == 0 ? 1 : e[t - 1] + 1;
        --t;
      }
      if (t < 0) break;
      ++reps[t];
    }
  }
  return out;
}

MemberVerdict member(int K, const RateVector& rstar, const RateVector& rates) {
  check_vector(K, rstar, "rstar", true);
  check_vector(K, rates, "rates", true);

  bool dominated = true;
  for (int j = 0; j < K; ++j) {
    if (rates[j] > rstar[j]) dominated = false;
  }
  if (dominated) {
    MemberInside in{Allocation(K)};
    for (int i = 1; i <= K; ++i) in.witness.at(i, i) = rstar[i - 1];
    return in;
  }

  const ExchangeTable table = phi_table(K);
  // Feasibility program over allocations r >= 0:
  //   rows 0..K-1:      sum_j r(i, j) <= rstar[i]
  //   rows K..2K-1:    -sum_i phi(i, j) r(i, j) <= -rates[j]
  LinearProgram lp;
  const int nv = K * K;
  lp.objective.assign(nv, Rational{});
  lp.signs.assign(nv, VarSign::NonNegative);
  auto var = [K](int i, int j) { return (i - 1) * K + (j - 1); };
  for (int i = 1; i <= K; ++i) {
    std::vector<Rational> row(nv);
    for (int j = 1; j <= K; ++j) row[var(i, j)] = 1;
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(rstar[i - 1]);
  }
  for (int j = 1; j <= K; ++j) {
    std::vector<Rational> row(nv);
    for (int i = 1; i <= K; ++i) row[var(i, j)] = -table.at(i, j);
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(-rates[j - 1]);
  }

  LpOutcome outcome = lp_optimize(lp);
  if (const auto* opt = std::get_if<LpOptimal>(&outcome)) {
    MemberInside in{Allocation(K)};
    for (int i = 1; i <= K; ++i) {
      for (int j = 1; j <= K; ++j) in.witness.at(i, j) = opt->point[var(i, j)];
    }
    return in;
  }
  const auto& inf = std::get<LpInfeasible>(outcome);
  MemberOutside out;
  out.separator.assign(inf.farkas.begin() + K, inf.farkas.end());
  // Scale is arbitrary for a separating direction; report primitive integers.
  BigInt den{1};
  for (const auto& e : out.separator)
    den = den / boost::multiprecision::gcd(den, e.den()) * e.den();
  BigInt num{0};
  for (const auto& e : out.separator) {
    BigInt scaled = e.num() * (den / e.den());
    if (scaled < 0) scaled = -scaled;
    num = boost::multiprecision::gcd(num, scaled);
  }
  if (num == 0) throw std::logic_error("member: zero separator");
  const Rational scale{den, num};
  for (auto& e : out.separator) e *= scale;
  // The coverage-row multipliers separate: separator . rates exceeds the
  // support value of the region in that direction.
  Rational lhs;
  for (int j = 0; j < K; ++j) lhs += out.separator[j] * rates[j];
  if (lhs <= support_value_direct(table, rstar, out.separator))
    throw std::logic_error("member: separator fails to separate");
  return out;
}

SupportResult support_lp(int K, const RateVector& rstar, const DirectionVector& dir) {
  check_vector(K, rstar, "rstar", true);
  check_vector(K, dir, "dir", false);

  const ExchangeTable table = phi_table(K);
  SupportResult res;
  res.argmax = Allocation(K);

  bool zero_dir = true;
  for (const auto& a : dir) {
    if (!a.is_zero()) zero_dir = false;
  }
  if (zero_dir) {
    for (int i = 1; i <= K; ++i) res.argmax.at(i, i) = rstar[i - 1];
  } else {
    LinearProgram lp;
    const int nv = K * K;
    lp.objective.assign(nv, Rational{});
    lp.signs.assign(nv, VarSign::NonNegative);
    auto var = [K](int i, int j) { return (i - 1) * K + (j - 1); };
    for (int i = 1; i <= K; ++i) {
      for (int j = 1; j <= K; ++j) lp.objective[var(i, j)] = dir[j - 1] * table.at(i, j);
    }
    for (int i = 1; i <= K; ++i) {
      std::vector<Rational> row(nv);
      for (int j = 1; j <= K; ++j) row[var(i, j)] = 1;
      lp.rows.push_back(std::move(row));
      lp.rhs.push_back(rstar[i - 1]);
    }
    LpOutcome outcome = lp_optimize(lp);
    const auto* opt = std::get_if<LpOptimal>(&outcome);
    if (opt == nullptr) throw std::logic_error("support_lp: program not optimal");
    res.value = opt->value;
    for (int i = 1; i <= K; ++i) {
      for (int j = 1; j <= K; ++j) res.argmax.at(i, j) = opt->point[var(i, j)];
    }
  }

  res.point.assign(K, Rational{});
  for (int j = 1; j <= K; ++j) {
    for (int i = 1; i <= K; ++i) res.point[j - 1] += table.at(i, j) * res.argmax.at(i, j);
  }
  return res;
}

Rational partition_value(const ExchangeTable& table, const RateVector& rstar,
                         const DirectionVector& dir, const ConsecutivePartition& part) {
  Rational total;
  int start = 1;
  for (std::size_t t = 0; t < part.ends.size(); ++t) {
    const int e = part.reps[t];
    Rational seg;
    for (int j = start; j <= part.ends[t]; ++j) seg += table.at(j, e) * rstar[j - 1];
    total += dir[e - 1] * seg;
    start = part.ends[t] + 1;
  }
  return total;
}

PartitionSupport support_partition(int K, const RateVector& rstar, const DirectionVector& dir) {
  check_vector(K, rstar, "rstar", true);
  check_vector(K, dir, "dir", false);
  const ExchangeTable table = phi_table(K);
  PartitionSupport best;
  bool first = true;
  for (const auto& part : enumerate_partitions(K)) {
    Rational v = partition_value(table, rstar, dir, part);
    if (first || v > best.value) {
      best = {v, part};
      first = false;
    }
  }
  return best;
}

RateVector sample_rates(int K, const Rational& bound, std::uint64_t seed) {
  if (K < 1) throw std::invalid_argument("sample_rates: K must be >= 1");
  if (bound.sign() < 0) throw std::invalid_argument("sample_rates: negative bound");
  std::mt19937_64 rng(seed);
  RateVector out(K);
  for (int j = 0; j < K; ++j) out[j] = bound * Rational(static_cast<long long>(rng() % 97), 96);
  return out;
}

}  // namespace lcr
