#include "lcr/infotools.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lcr {

namespace {

std::size_t cell_count(const std::vector<int>& sizes) {
  std::size_t total = 1;
  for (int s : sizes) total *= static_cast<std::size_t>(s);
  return total;
}

double entropy_of_pmf(const std::vector<double>& pmf) {
  double h = 0;
  for (double v : pmf) {
    if (v > 0) h -= v * std::log2(v);
  }
  return h;
}

std::vector<double> marginal(const JointDistribution& dist, const std::vector<int>& coords) {
  const std::size_t total = cell_count(dist.sizes);
  std::size_t msize = 1;
  for (int c : coords) msize *= static_cast<std::size_t>(dist.sizes[c]);
  std::vector<double> out(msize, 0.0);
  std::vector<int> digits(dist.sizes.size());
  for (std::size_t cell = 0; cell < total; ++cell) {
    std::size_t rest = cell;
    for (std::size_t c = dist.sizes.size(); c-- > 0;) {
      digits[c] = static_cast<int>(rest % dist.sizes[c]);
      rest /= dist.sizes[c];
    }
    std::size_t key = 0;
    for (int c : coords) key = key * dist.sizes[c] + digits[c];
    out[key] += dist.p[cell];
  }
  return out;
}

std::vector<int> group_coords(const PairedDistribution& dist, std::uint32_t group,
                              bool include_v) {
  std::vector<int> coords;
  for (int t = 0; t < dist.n; ++t) {
    if ((group >> t) & 1u) {
      if (include_v) coords.push_back(t);
      coords.push_back(dist.n + t);
    }
  }
  return coords;
}

}  // namespace

void validate(const JointDistribution& dist) {
  for (int s : dist.sizes) {
    if (s < 1) throw std::invalid_argument("distribution: empty alphabet");
  }
  if (dist.p.size() != cell_count(dist.sizes))
    throw std::invalid_argument("distribution: wrong table size");
  double mass = 0;
  for (double v : dist.p) {
    if (v < 0) throw std::invalid_argument("distribution: negative probability");
    mass += v;
  }
  if (std::abs(mass - 1.0) > 1e-9) throw std::invalid_argument("distribution: mass is not 1");
}

double entropy(const JointDistribution& dist, const std::vector<int>& coords) {
  validate(dist);
  std::vector<bool> seen(dist.sizes.size(), false);
  for (int c : coords) {
    if (c < 0 || c >= static_cast<int>(dist.sizes.size()))
      throw std::invalid_argument("entropy: coordinate out of range");
    if (seen[c]) throw std::invalid_argument("entropy: repeated coordinate");
    seen[c] = true;
  }
  return entropy_of_pmf(marginal(dist, coords));
}

double cond_entropy_vu(const PairedDistribution& dist, std::uint32_t group) {
  if (static_cast<int>(dist.joint.sizes.size()) != 2 * dist.n)
    throw std::invalid_argument("paired distribution: wrong coordinate count");
  if (dist.n < 32 && (group >> dist.n) != 0)
    throw std::invalid_argument("paired distribution: group out of range");
  return entropy(dist.joint, group_coords(dist, group, true)) -
         entropy(dist.joint, group_coords(dist, group, false));
}

std::uint32_t ghat(const std::vector<std::uint32_t>& family, int k) {
  const int K = static_cast<int>(family.size());
  if (k < 1 || k > K) throw std::invalid_argument("ghat: k out of range");
  std::uint32_t out = 0;
  for (std::uint32_t pick = 1; pick < (1u << K); ++pick) {
    if (std::popcount(pick) != k) continue;
    std::uint32_t inter = ~0u;
    for (int t = 0; t < K; ++t) {
      if ((pick >> t) & 1u) inter &= family[t];
    }
    out |= inter;
  }
  return out;
}

double kway_margin(const PairedDistribution& dist, const std::vector<std::uint32_t>& family) {
  if (family.empty()) throw std::invalid_argument("kway_margin: empty family");
  validate(dist.joint);

  // The guarantee needs mutually independent U coordinates.
  std::vector<int> ucoords;
  for (int t = 0; t < dist.n; ++t) ucoords.push_back(dist.n + t);
  const auto ujoint = marginal(dist.joint, ucoords);
  std::vector<std::vector<double>> singles;
  for (int t = 0; t < dist.n; ++t) singles.push_back(marginal(dist.joint, {dist.n + t}));
  std::size_t ucells = ujoint.size();
  for (std::size_t cell = 0; cell < ucells; ++cell) {
    std::size_t rest = cell;
    double prod = 1;
    for (int t = dist.n; t-- > 0;) {
      const int size = dist.joint.sizes[dist.n + t];
      prod *= singles[t][rest % size];
      rest /= size;
    }
    if (std::abs(prod - ujoint[cell]) > 1e-12)
      throw std::invalid_argument("kway_margin: U coordinates are not independent");
  }

  const int K = static_cast<int>(family.size());
  double margin = 0;
  for (int t = 0; t < K; ++t) margin += cond_entropy_vu(dist, family[t]);
  for (int k = 1; k <= K; ++k) margin -= cond_entropy_vu(dist, ghat(family, k));
  return margin;
}

PairedDistribution make_paired_dist(std::mt19937_64& rng, int max_n, int max_alpha) {
  if (max_n < 1 || max_alpha < 2) throw std::invalid_argument("make_paired_dist: bad bounds");
  const int n = 1 + static_cast<int>(rng() % max_n);
  PairedDistribution dist;
  dist.n = n;
  dist.joint.sizes.resize(2 * n);
  for (int c = 0; c < 2 * n; ++c)
    dist.joint.sizes[c] = 2 + static_cast<int>(rng() % (max_alpha - 1));

  std::size_t vcells = 1, ucells = 1;
  for (int t = 0; t < n; ++t) vcells *= dist.joint.sizes[t];
  for (int t = 0; t < n; ++t) ucells *= dist.joint.sizes[n + t];

  std::vector<std::vector<double>> upmf;
  for (int t = 0; t < n; ++t) {
    const int size = dist.joint.sizes[n + t];
    std::vector<double> w(size);
    double sum = 0;
    for (auto& v : w) {
      v = 1 + static_cast<double>(rng() % 8);
      sum += v;
    }
    for (auto& v : w) v /= sum;
    upmf.push_back(std::move(w));
  }

  dist.joint.p.assign(vcells * ucells, 0.0);
  for (std::size_t u = 0; u < ucells; ++u) {
    double pu = 1;
    std::size_t rest = u;
    for (int t = n; t-- > 0;) {
      const int size = dist.joint.sizes[n + t];
      pu *= upmf[t][rest % size];
      rest /= size;
    }
    std::vector<double> kernel(vcells);
    double sum = 0;
    for (auto& v : kernel) {
      v = 1 + static_cast<double>(rng() % 8);
      sum += v;
    }
    // cell layout: V digits are the high part, U digits the low part
    for (std::size_t v = 0; v < vcells; ++v) dist.joint.p[v * ucells + u] = pu * kernel[v] / sum;
  }
  return dist;
}

std::vector<std::uint32_t> make_family(std::mt19937_64& rng, int n, int max_k) {
  if (n < 1 || max_k < 1) throw std::invalid_argument("make_family: bad bounds");
  const int count = 1 + static_cast<int>(rng() % max_k);
  std::vector<std::uint32_t> family(count);
  for (auto& g : family) g = static_cast<std::uint32_t>(rng() & ((1u << n) - 1));
  return family;
}

SubmodularitySuite run_submodularity_suite(int trials, std::uint64_t seed, int max_n,
                                           int max_alpha, int max_k) {
  std::mt19937_64 rng(seed);
  SubmodularitySuite suite;
  suite.trials = trials;
  suite.pair_min_margin = std::numeric_limits<double>::infinity();
  suite.kway_min_margin = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const PairedDistribution dist = make_paired_dist(rng, max_n, max_alpha);
    const std::vector<std::uint32_t> two{
        static_cast<std::uint32_t>(rng() & ((1u << dist.n) - 1)),
        static_cast<std::uint32_t>(rng() & ((1u << dist.n) - 1))};
    const double pm = kway_margin(dist, two);
    const auto family = make_family(rng, dist.n, max_k);
    const double km = kway_margin(dist, family);
    suite.pair_min_margin = std::min(suite.pair_min_margin, pm);
    suite.kway_min_margin = std::min(suite.kway_min_margin, km);
    if (pm < -1e-9) ++suite.violations;
    if (km < -1e-9) ++suite.violations;
  }
  return suite;
}

}  // namespace lcr
