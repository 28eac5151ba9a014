#include "lcr/exchange.hpp"

#include <stdexcept>
#include <string>

namespace lcr {

BigInt binomial(long long n, long long k) {
  if (n < 0) throw std::invalid_argument("binomial: negative n");
  if (k < 0 || k > n) return BigInt{0};
  if (k > n - k) k = n - k;
  BigInt result{1};
  for (long long t = 1; t <= k; ++t) {
    result *= n - k + t;
    result /= t;  // exact: result is C(n-k+t, t) after this step
  }
  return result;
}

Rational phi(int K, int i, int j) {
  if (K < 1 || i < 1 || j < 1 || i > K || j > K)
    throw std::out_of_range("phi: levels must lie in [1, K]");
  if (i == j) return Rational{1};
  if (i < j) return Rational{binomial(j - 1, j - i), binomial(K - i, j - i)};
  return Rational{binomial(K - j, i - j), binomial(i, i - j)};
}

ExchangeTable phi_table(int K) {
  if (K < 1) throw std::invalid_argument("phi_table: K must be >= 1");
  ExchangeTable table;
  table.K = K;
  table.entries.assign(K, std::vector<Rational>(K));
  for (int i = 1; i <= K; ++i) {
    for (int j = 1; j <= K; ++j) table.entries[i - 1][j - 1] = phi(K, i, j);
  }
  return table;
}

std::string run_phi_identity_suite(int max_k) {
  auto fail = [](int K, const std::string& what) {
    return "K=" + std::to_string(K) + ": " + what;
  };
  for (int K = 1; K <= max_k; ++K) {
    const ExchangeTable t = phi_table(K);
    for (int i = 1; i <= K; ++i) {
      for (int j = 1; j <= K; ++j) {
        // both binomial forms of the up rate must agree
        if (i < j && binomial(j - 1, j - i) != binomial(j - 1, i - 1))
          return fail(K, "binomial symmetry broken");
        for (int k = 1; k <= K; ++k) {
          if (i < j && j < k) {
            if (t.at(i, j) * t.at(j, k) != t.at(i, k)) return fail(K, "up-chain composition");
            if (t.at(k, j) * t.at(j, i) != t.at(k, i)) return fail(K, "down-chain composition");
          }
          const bool monotonic = (i <= j && j <= k) || (i >= j && j >= k);
          const Rational detour = t.at(i, j) * t.at(j, k);
          if (monotonic ? detour != t.at(i, k) : detour >= t.at(i, k))
            return fail(K, "two-step detour bound");
        }
        if (i < j) {
          const Rational round_trip = t.at(i, j) * t.at(j, i);
          if (round_trip != Rational(i, j) || round_trip >= Rational(1))
            return fail(K, "round-trip loss");
          if (Rational(binomial(K - 1, i - 1), binomial(K - 1, j - 1)) != t.at(i, j))
            return fail(K, "binomial-ratio form");
        }
      }
    }
    for (int j = 1; j < K; ++j) {
      for (int k = j + 1; k < K; ++k) {
        const Rational lhs = Rational((k + 1) * binomial(K - 1, k - 1)) * t.at(k + 1, j);
        const Rational rhs = Rational(k * binomial(K - 1, k)) * t.at(k, j);
        if (lhs != rhs) return fail(K, "consecutive down-conversion recurrence");
      }
    }
  }
  return "";
}

}  // namespace lcr
