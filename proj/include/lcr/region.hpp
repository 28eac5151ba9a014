#pragma once

#include "lcr/exchange.hpp"
#include "lcr/rational.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace lcr {

// Per-level rate vector, entry t is the rate of level t+1. All entries >= 0.
using RateVector = std::vector<Rational>;
// Weighting direction for support queries; entries >= 0, at least for the
// geometric guarantees to hold.
using DirectionVector = std::vector<Rational>;

// Conversion schedule: at(i, j) symbols of level-i content are converted to
// level j. Row sums are bounded by the source rates.
struct Allocation {
  int K = 0;
  std::vector<Rational> r;  // row-major K*K

  explicit Allocation(int k = 0) : K(k), r(static_cast<std::size_t>(k) * k) {}

  Rational& at(int i, int j) { return r[static_cast<std::size_t>(i - 1) * K + (j - 1)]; }
  const Rational& at(int i, int j) const {
    return r[static_cast<std::size_t>(i - 1) * K + (j - 1)];
  }
};

// Partition of levels {1..K} into consecutive segments, each with a
// representative level inside it. ends[t] is the last level of segment t
// (ends.back() == K); reps[t] is the representative of segment t.
struct ConsecutivePartition {
  std::vector<int> ends;
  std::vector<int> reps;
};

// Canonical enumeration order: lexicographic by (ends, reps).
std::vector<ConsecutivePartition> enumerate_partitions(int K);

struct MemberInside {
  Allocation witness;  // satisfies row sums <= rstar and coverage >= rates
};
struct MemberOutside {
  DirectionVector separator;  // separator . rates > max over region
};
using MemberVerdict = std::variant<MemberInside, MemberOutside>;

// Exact membership of `rates` in the latent capacity region of `rstar`.
MemberVerdict member(int K, const RateVector& rstar, const RateVector& rates);

struct SupportResult {
  Rational value;
  Allocation argmax;
  RateVector point;  // point[j-1] = sum_i phi(i,j) * argmax(i,j)
};

// Support value max dir . R over the region, solved as a linear program
// on the allocation polytope.
SupportResult support_lp(int K, const RateVector& rstar, const DirectionVector& dir);

struct PartitionSupport {
  Rational value;
  ConsecutivePartition best;
};

// Same support value computed by exhaustive search over consecutive
// partitions with representatives: value = sum over segments S with
// representative e of dir[e] * sum_{j in S} phi(j, e) * rstar[j].
// Ties pick the first partition in canonical order.
PartitionSupport support_partition(int K, const RateVector& rstar, const DirectionVector& dir);

Rational partition_value(const ExchangeTable& table, const RateVector& rstar,
                         const DirectionVector& dir, const ConsecutivePartition& part);

// Deterministic per seed: K entries, each bound * t/96 with t drawn in
// [0, 96]. bound must be >= 0.
RateVector sample_rates(int K, const Rational& bound, std::uint64_t seed);

}  // namespace lcr
