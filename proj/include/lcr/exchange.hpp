#pragma once

#include "lcr/rational.hpp"

#include <vector>

namespace lcr {

// C(n, k); zero when k < 0 or k > n. n must be >= 0.
BigInt binomial(long long n, long long k);

// Exchange rate between message levels of a K-user symmetric broadcast:
// one symbol of level-i content converts to phi(K, i, j) symbols of
// level-j content. 1-based levels, 1 <= i, j <= K.
//
//   i < j:  C(K-i, j-i)^-1 * C(j-1, j-i)
//   i > j:  C(i, i-j)^-1 * C(K-j, i-j)
//   i == j: 1
Rational phi(int K, int i, int j);

struct ExchangeTable {
  int K = 0;
  std::vector<std::vector<Rational>> entries;  // entries[i-1][j-1] = phi(K, i, j)

  const Rational& at(int i, int j) const { return entries[i - 1][j - 1]; }
};

ExchangeTable phi_table(int K);

// Exhaustive exact check of the exchange-rate identities for every K up to
// max_k: chained up- and down-conversions compose multiplicatively, a round
// trip i -> j -> i loses exactly a factor i/j, any detour through a
// non-monotonic intermediate level is strictly lossy, the consecutive
// down-conversion recurrence, and the binomial-ratio form for i < j.
// Returns "" when everything holds, else a description of the first failure.
std::string run_phi_identity_suite(int max_k);

}  // namespace lcr
