#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace lcr {

// Dense joint pmf; coordinate c has alphabet {0..sizes[c]-1}, the last
// coordinate varies fastest in p.
struct JointDistribution {
  std::vector<int> sizes;
  std::vector<double> p;
};

// entries >= 0 and total mass within 1e-9 of 1; throws std::invalid_argument
void validate(const JointDistribution& dist);

// Base-2 entropy of the marginal on `coords` (distinct, in range). An empty
// coordinate list gives 0.
double entropy(const JointDistribution& dist, const std::vector<int>& coords);

// 2n coordinates: 0..n-1 carry V, n..2n-1 carry U (V_t is paired with U_t).
struct PairedDistribution {
  JointDistribution joint;
  int n = 0;
};

// H(V_G | U_G) for the group bitmask G over {0..n-1}.
double cond_entropy_vu(const PairedDistribution& dist, std::uint32_t group);

// Union over all k-element subfamilies of their intersections. 1 <= k <= K.
std::uint32_t ghat(const std::vector<std::uint32_t>& family, int k);

// sum_k H(V_{G_k}|U_{G_k}) - sum_k H(V_{ghat_k}|U_{ghat_k}); >= 0 when the
// U coordinates are mutually independent (verified within 1e-12, violation
// throws std::invalid_argument).
double kway_margin(const PairedDistribution& dist, const std::vector<std::uint32_t>& family);

// Random pmf with independent U coordinates and an arbitrary V|U kernel,
// weights drawn as small integers. n in [1, max_n], alphabets in [2, max_alpha].
PairedDistribution make_paired_dist(std::mt19937_64& rng, int max_n, int max_alpha);
std::vector<std::uint32_t> make_family(std::mt19937_64& rng, int n, int max_k);

struct SubmodularitySuite {
  int trials = 0;
  double pair_min_margin = 0;  // two-group instances
  double kway_min_margin = 0;  // general-family instances
  int violations = 0;          // margins below -1e-9
};

// Per trial draws one distribution and checks both a two-group margin and a
// random-family margin. Deterministic per seed.
SubmodularitySuite run_submodularity_suite(int trials, std::uint64_t seed,
                                           int max_n = 3, int max_alpha = 3, int max_k = 3);

}  // namespace lcr
