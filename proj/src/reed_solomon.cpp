#include "lcr/reed_solomon.hpp"

#include "lcr/gf256.hpp"

#include <algorithm>
#include <stdexcept>

namespace lcr {

void validate(const MdsCodeSpec& spec) {
  if (spec.k < 1 || spec.n < spec.k || spec.n > 255)
    throw std::invalid_argument("mds spec: need 1 <= k <= n <= 255");
}

namespace {

// f(x) = sum_t w[t] * y[t] for the unique degree < k polynomial through
// (xs[t], y[t]). xs entries are distinct.
std::vector<std::uint8_t> lagrange_weights(const std::vector<std::uint8_t>& xs,
                                           std::uint8_t x) {
  const std::size_t k = xs.size();
  std::vector<std::uint8_t> w(k, 0);
  for (std::size_t t = 0; t < k; ++t) {
    if (xs[t] == x) {
      w[t] = 1;
      return w;
    }
  }
  std::uint8_t p = 1;
  for (std::size_t s = 0; s < k; ++s) p = gf256::mul(p, gf256::add(x, xs[s]));
  for (std::size_t t = 0; t < k; ++t) {
    std::uint8_t d = gf256::add(x, xs[t]);
    for (std::size_t s = 0; s < k; ++s) {
      if (s != t) d = gf256::mul(d, gf256::add(xs[t], xs[s]));
    }
    w[t] = gf256::div(p, d);
  }
  return w;
}

std::vector<std::uint8_t> sorted_positions(const MdsCodeSpec& spec,
                                           const std::vector<int>& given) {
  if (given.size() < static_cast<std::size_t>(spec.k))
    throw std::invalid_argument("rs_decode: fewer than k shares");
  std::vector<int> pos = given;
  std::sort(pos.begin(), pos.end());
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (pos[i] < 0 || pos[i] >= spec.n) throw std::invalid_argument("rs_decode: position out of range");
    if (i > 0 && pos[i] == pos[i - 1]) throw std::invalid_argument("rs_decode: duplicate position");
  }
  pos.resize(spec.k);
  return {pos.begin(), pos.end()};
}

}  // namespace

std::vector<std::uint8_t> rs_encode(const MdsCodeSpec& spec,
                                    const std::vector<std::uint8_t>& data) {
  validate(spec);
  if (data.size() != static_cast<std::size_t>(spec.k))
    throw std::invalid_argument("rs_encode: data must hold exactly k elements");
  std::vector<std::uint8_t> xs(spec.k);
  for (int t = 0; t < spec.k; ++t) xs[t] = static_cast<std::uint8_t>(t);
  std::vector<std::uint8_t> out(data);
  out.resize(spec.n);
  for (int p = spec.k; p < spec.n; ++p) {
    const auto w = lagrange_weights(xs, static_cast<std::uint8_t>(p));
    std::uint8_t acc = 0;
    for (int t = 0; t < spec.k; ++t) acc = gf256::add(acc, gf256::mul(w[t], data[t]));
    out[p] = acc;
  }
  return out;
}

std::vector<std::uint8_t> rs_decode(const MdsCodeSpec& spec,
                                    const std::vector<std::pair<int, std::uint8_t>>& shares) {
  validate(spec);
  std::vector<int> given;
  given.reserve(shares.size());
  for (const auto& [pos, value] : shares) given.push_back(pos);
  const auto xs = sorted_positions(spec, given);
  std::vector<std::uint8_t> ys(spec.k);
  for (int t = 0; t < spec.k; ++t) {
    for (const auto& [pos, value] : shares) {
      if (pos == xs[t]) ys[t] = value;
    }
  }
  std::vector<std::uint8_t> out(spec.k);
  for (int target = 0; target < spec.k; ++target) {
    const auto w = lagrange_weights(xs, static_cast<std::uint8_t>(target));
    std::uint8_t acc = 0;
    for (int t = 0; t < spec.k; ++t) acc = gf256::add(acc, gf256::mul(w[t], ys[t]));
    out[target] = acc;
  }
  return out;
}

std::vector<std::vector<std::uint8_t>> rs_encode_block(
    const MdsCodeSpec& spec, const std::vector<std::vector<std::uint8_t>>& data) {
  validate(spec);
  if (data.size() != static_cast<std::size_t>(spec.k))
    throw std::invalid_argument("rs_encode_block: data must hold exactly k vectors");
  const std::size_t len = data.empty() ? 0 : data[0].size();
  for (const auto& d : data) {
    if (d.size() != len) throw std::invalid_argument("rs_encode_block: ragged data vectors");
  }
  std::vector<std::uint8_t> xs(spec.k);
  for (int t = 0; t < spec.k; ++t) xs[t] = static_cast<std::uint8_t>(t);
  std::vector<std::vector<std::uint8_t>> out(data);
  out.resize(spec.n, std::vector<std::uint8_t>(len));
  for (int p = spec.k; p < spec.n; ++p) {
    const auto w = lagrange_weights(xs, static_cast<std::uint8_t>(p));
    auto& share = out[p];
    for (std::size_t b = 0; b < len; ++b) {
      std::uint8_t acc = 0;
      for (int t = 0; t < spec.k; ++t) acc = gf256::add(acc, gf256::mul(w[t], data[t][b]));
      share[b] = acc;
    }
  }
  return out;
}

std::vector<std::vector<std::uint8_t>> rs_decode_block(
    const MdsCodeSpec& spec,
    const std::vector<std::pair<int, std::vector<std::uint8_t>>>& shares) {
  validate(spec);
  std::vector<int> given;
  given.reserve(shares.size());
  for (const auto& [pos, value] : shares) given.push_back(pos);
  const auto xs = sorted_positions(spec, given);
  const std::size_t len = shares.empty() ? 0 : shares[0].second.size();
  for (const auto& [pos, value] : shares) {
    if (value.size() != len) throw std::invalid_argument("rs_decode_block: ragged share vectors");
  }
  std::vector<const std::vector<std::uint8_t>*> ys(spec.k, nullptr);
  for (int t = 0; t < spec.k; ++t) {
    for (const auto& [pos, value] : shares) {
      if (pos == xs[t]) ys[t] = &value;
    }
  }
  std::vector<std::vector<std::uint8_t>> out(spec.k, std::vector<std::uint8_t>(len));
  for (int target = 0; target < spec.k; ++target) {
    const auto w = lagrange_weights(xs, static_cast<std::uint8_t>(target));
    auto& dst = out[target];
    for (std::size_t b = 0; b < len; ++b) {
      std::uint8_t acc = 0;
      for (int t = 0; t < spec.k; ++t) acc = gf256::add(acc, gf256::mul(w[t], (*ys[t])[b]));
      dst[b] = acc;
    }
  }
  return out;
}

}  // namespace lcr
