#include "lcr/broadcast.hpp"

#include "lcr/exchange.hpp"

#include <bit>
#include <numeric>
#include <random>
#include <stdexcept>

namespace lcr {

namespace subset {

int level(SubsetId s) { return std::popcount(s); }

bool contains(SubsetId s, int user) { return (s >> (user - 1)) & 1u; }

std::string name(SubsetId s) {
  std::string out;
  for (int u = 1; u <= 32; ++u) {
    if (contains(s, u)) out += std::to_string(u);
  }
  return out;
}

std::vector<SubsetId> of_size(int K, int lvl) {
  std::vector<SubsetId> out;
  for (SubsetId m = 1; m < (1u << K); ++m) {
    if (level(m) == lvl) out.push_back(m);
  }
  return out;
}

std::vector<SubsetId> subsets_of(SubsetId s, int lvl) {
  std::vector<SubsetId> out;
  for (SubsetId m = 1; m <= s; ++m) {
    if ((m & s) == m && level(m) == lvl) out.push_back(m);
  }
  return out;
}

std::vector<SubsetId> supersets_of(SubsetId s, int K, int lvl) {
  std::vector<SubsetId> out;
  for (SubsetId m = 1; m < (1u << K); ++m) {
    if ((m & s) == s && level(m) == lvl) out.push_back(m);
  }
  return out;
}

int index_of(const std::vector<SubsetId>& list, SubsetId s) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i] == s) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace subset

namespace {

constexpr int kMaxUsers = 6;

void check_levels(int K, int i, int j) {
  if (K < 1 || K > kMaxUsers) throw std::invalid_argument("scheme: K must lie in [1, 6]");
  if (i < 1 || i > K || j < 1 || j > K)
    throw std::invalid_argument("scheme: levels must lie in [1, K]");
}

long long to_ll(const BigInt& b) { return b.convert_to<long long>(); }

int exact_split(int s, long long d, const char* what) {
  if (s < 0) throw std::invalid_argument("scheme: negative budget");
  if (s % d != 0)
    throw std::invalid_argument(std::string("scheme: budget ") + std::to_string(s) +
                                " not divisible by " + std::to_string(d) + " (" + what + ")");
  return static_cast<int>(s / d);
}

// Byte offset of part p inside the vector of its source sets.
int part_offset(const CompositeScheme& comp, std::size_t p) {
  int off = 0;
  for (std::size_t q = 0; q < p; ++q) {
    if (comp.parts[q].source_level == comp.parts[p].source_level) off += comp.parts[q].budget;
  }
  return off;
}

std::vector<std::uint8_t> slice(const std::vector<std::uint8_t>& v, int off, int len) {
  if (off < 0 || off + len > static_cast<int>(v.size()))
    throw std::logic_error("broadcast: slice out of range");
  return {v.begin() + off, v.begin() + off + len};
}

}  // namespace

TransferScheme build_up_scheme(int K, int i, int j, int s) {
  check_levels(K, i, j);
  if (i >= j) throw std::invalid_argument("build_up_scheme: requires i < j");
  TransferScheme sch;
  sch.K = K;
  sch.source_level = i;
  sch.target_level = j;
  sch.budget = s;
  sch.piece = exact_split(s, to_ll(binomial(K - i, j - i)), "share waves");
  sch.mds.n = static_cast<int>(to_ll(binomial(j, i)));
  sch.mds.k = static_cast<int>(to_ll(binomial(j - 1, i - 1)));
  validate(sch.mds);
  sch.payload = sch.piece * sch.mds.k;
  return sch;
}

TransferScheme build_down_scheme(int K, int i, int j, int s) {
  check_levels(K, i, j);
  if (i <= j) throw std::invalid_argument("build_down_scheme: requires i > j");
  TransferScheme sch;
  sch.K = K;
  sch.source_level = i;
  sch.target_level = j;
  sch.budget = s;
  sch.piece = exact_split(s, to_ll(binomial(i, j)), "chunks per source");
  sch.payload = sch.piece * static_cast<int>(to_ll(binomial(K - j, i - j)));
  sch.mds = {1, 1};
  return sch;
}

TransferScheme build_scheme(int K, int i, int j, int s) {
  if (i < j) return build_up_scheme(K, i, j, s);
  if (i > j) return build_down_scheme(K, i, j, s);
  check_levels(K, i, j);
  if (s < 0) throw std::invalid_argument("scheme: negative budget");
  TransferScheme sch;
  sch.K = K;
  sch.source_level = i;
  sch.target_level = i;
  sch.budget = s;
  sch.piece = s;
  sch.payload = s;
  sch.mds = {1, 1};
  return sch;
}

MessageSet random_messages(const TransferScheme& scheme, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MessageSet out;
  for (SubsetId target : subset::of_size(scheme.K, scheme.target_level)) {
    std::vector<std::uint8_t> payload(scheme.payload);
    for (auto& b : payload) b = static_cast<std::uint8_t>(rng() & 0xFF);
    out[target] = std::move(payload);
  }
  return out;
}

CompositeScheme compose(int K, const std::vector<int>& capacity,
                        const std::vector<std::vector<int>>& alloc) {
  if (K < 1 || K > kMaxUsers) throw std::invalid_argument("compose: K must lie in [1, 6]");
  if (capacity.size() != static_cast<std::size_t>(K))
    throw std::invalid_argument("compose: capacity has wrong length");
  if (alloc.size() != static_cast<std::size_t>(K))
    throw std::invalid_argument("compose: allocation has wrong shape");
  for (const auto& row : alloc) {
    if (row.size() != static_cast<std::size_t>(K))
      throw std::invalid_argument("compose: allocation has wrong shape");
  }
  for (int i = 1; i <= K; ++i) {
    if (capacity[i - 1] < 0) throw std::invalid_argument("compose: negative capacity");
    long long used = 0;
    for (int j = 1; j <= K; ++j) {
      if (alloc[i - 1][j - 1] < 0) throw std::invalid_argument("compose: negative allocation");
      used += alloc[i - 1][j - 1];
    }
    if (used > capacity[i - 1])
      throw std::invalid_argument("compose: level " + std::to_string(i) +
                                  " allocation exceeds its capacity");
  }

  CompositeScheme comp;
  comp.K = K;
  comp.capacity = capacity;
  comp.alloc = alloc;
  long long mult = 1;
  for (int i = 1; i <= K; ++i) {
    for (int j = 1; j <= K; ++j) {
      if (alloc[i - 1][j - 1] == 0) continue;
      long long d = 1;
      if (i < j) d = to_ll(binomial(K - i, j - i));
      if (i > j) d = to_ll(binomial(i, j));
      mult = std::lcm(mult, d);
    }
  }
  comp.multiplier = mult;
  for (int i = 1; i <= K; ++i) {
    for (int j = 1; j <= K; ++j) {
      if (alloc[i - 1][j - 1] == 0) continue;
      comp.parts.push_back(
          build_scheme(K, i, j, static_cast<int>(alloc[i - 1][j - 1] * mult)));
    }
  }
  return comp;
}

ChannelBlock transmit(const CompositeScheme& comp, const std::vector<MessageSet>& messages) {
  if (messages.size() != comp.parts.size())
    throw std::invalid_argument("transmit: one message set per part required");

  ChannelBlock block;
  block.K = comp.K;
  block.capacity.resize(comp.K);
  for (int l = 1; l <= comp.K; ++l)
    block.capacity[l - 1] = static_cast<int>(comp.capacity[l - 1] * comp.multiplier);

  std::vector<int> used(comp.K, 0);
  for (const auto& part : comp.parts) used[part.source_level - 1] += part.budget;
  for (int l = 1; l <= comp.K; ++l) {
    if (used[l - 1] == 0) continue;
    if (used[l - 1] > block.capacity[l - 1]) throw std::logic_error("transmit: capacity overrun");
    for (SubsetId s : subset::of_size(comp.K, l))
      block.entries[s] = std::vector<std::uint8_t>(used[l - 1]);
  }

  for (std::size_t p = 0; p < comp.parts.size(); ++p) {
    const TransferScheme& part = comp.parts[p];
    const int off = part_offset(comp, p);
    const auto targets = subset::of_size(comp.K, part.target_level);
    if (messages[p].size() != targets.size())
      throw std::invalid_argument("transmit: message set does not match the target sets");
    for (SubsetId target : targets) {
      auto it = messages[p].find(target);
      if (it == messages[p].end())
        throw std::invalid_argument("transmit: missing message for a target set");
      const auto& payload = it->second;
      if (payload.size() != static_cast<std::size_t>(part.payload))
        throw std::invalid_argument("transmit: message of wrong size");

      if (part.source_level < part.target_level) {
        std::vector<std::vector<std::uint8_t>> data(part.mds.k);
        for (int t = 0; t < part.mds.k; ++t) data[t] = slice(payload, t * part.piece, part.piece);
        const auto shares = rs_encode_block(part.mds, data);
        const auto sources = subset::subsets_of(target, part.source_level);
        for (std::size_t t = 0; t < sources.size(); ++t) {
          const int pos =
              subset::index_of(subset::supersets_of(sources[t], comp.K, part.target_level), target);
          auto& entry = block.entries.at(sources[t]);
          std::copy(shares[t].begin(), shares[t].end(),
                    entry.begin() + off + pos * part.piece);
        }
      } else if (part.source_level > part.target_level) {
        const auto sources = subset::supersets_of(target, comp.K, part.source_level);
        for (std::size_t t = 0; t < sources.size(); ++t) {
          const auto chunk = slice(payload, static_cast<int>(t) * part.piece, part.piece);
          const int pos =
              subset::index_of(subset::subsets_of(sources[t], part.target_level), target);
          auto& entry = block.entries.at(sources[t]);
          std::copy(chunk.begin(), chunk.end(), entry.begin() + off + pos * part.piece);
        }
      } else {
        auto& entry = block.entries.at(target);
        std::copy(payload.begin(), payload.end(), entry.begin() + off);
      }
    }
  }
  return block;
}

ChannelBlock receive(int user, const ChannelBlock& block) {
  if (user < 1 || user > block.K) throw std::invalid_argument("receive: no such user");
  ChannelBlock obs;
  obs.K = block.K;
  obs.capacity = block.capacity;
  for (const auto& [s, bytes] : block.entries) {
    if (subset::contains(s, user)) obs.entries[s] = bytes;
  }
  return obs;
}

MessageSet decode_part(const CompositeScheme& comp, std::size_t p, int user,
                       const ChannelBlock& observed) {
  if (p >= comp.parts.size()) throw std::invalid_argument("decode_part: no such part");
  const TransferScheme& part = comp.parts[p];
  const int off = part_offset(comp, p);
  MessageSet out;
  for (SubsetId target : subset::of_size(comp.K, part.target_level)) {
    if (!subset::contains(target, user)) continue;

    if (part.source_level < part.target_level) {
      const auto sources = subset::subsets_of(target, part.source_level);
      std::vector<std::pair<int, std::vector<std::uint8_t>>> shares;
      for (std::size_t t = 0; t < sources.size(); ++t) {
        if (!subset::contains(sources[t], user)) continue;
        const int pos =
            subset::index_of(subset::supersets_of(sources[t], comp.K, part.target_level), target);
        shares.emplace_back(static_cast<int>(t),
                            slice(observed.entries.at(sources[t]), off + pos * part.piece,
                                  part.piece));
      }
      const auto data = rs_decode_block(part.mds, shares);
      std::vector<std::uint8_t> payload;
      payload.reserve(part.payload);
      for (const auto& piece : data) payload.insert(payload.end(), piece.begin(), piece.end());
      out[target] = std::move(payload);
    } else if (part.source_level > part.target_level) {
      std::vector<std::uint8_t> payload;
      payload.reserve(part.payload);
      for (SubsetId src : subset::supersets_of(target, comp.K, part.source_level)) {
        const int pos = subset::index_of(subset::subsets_of(src, part.target_level), target);
        const auto chunk = slice(observed.entries.at(src), off + pos * part.piece, part.piece);
        payload.insert(payload.end(), chunk.begin(), chunk.end());
      }
      out[target] = std::move(payload);
    } else {
      out[target] = slice(observed.entries.at(target), off, part.budget);
    }
  }
  return out;
}

std::vector<MessageSet> decode_all(const CompositeScheme& comp, int user,
                                   const ChannelBlock& observed) {
  std::vector<MessageSet> out;
  out.reserve(comp.parts.size());
  for (std::size_t p = 0; p < comp.parts.size(); ++p)
    out.push_back(decode_part(comp, p, user, observed));
  return out;
}

EndToEndReport run_end_to_end(int K, const std::vector<int>& capacity,
                              const std::vector<std::vector<int>>& alloc, std::uint64_t seed) {
  const CompositeScheme comp = compose(K, capacity, alloc);

  std::mt19937_64 rng(seed);
  std::vector<MessageSet> sent;
  sent.reserve(comp.parts.size());
  for (const auto& part : comp.parts) {
    MessageSet msgs;
    for (SubsetId target : subset::of_size(K, part.target_level)) {
      std::vector<std::uint8_t> payload(part.payload);
      for (auto& b : payload) b = static_cast<std::uint8_t>(rng() & 0xFF);
      msgs[target] = std::move(payload);
    }
    sent.push_back(std::move(msgs));
  }

  EndToEndReport report;
  report.K = K;
  report.multiplier = comp.multiplier;
  report.block = transmit(comp, sent);
  report.delivered_scaled.assign(K, 0);
  for (const auto& part : comp.parts) report.delivered_scaled[part.target_level - 1] += part.payload;
  report.delivered_rate.resize(K);
  for (int j = 0; j < K; ++j)
    report.delivered_rate[j] = Rational(report.delivered_scaled[j], comp.multiplier);
  for (const auto& [s, bytes] : report.block.entries) report.channel_bytes += bytes.size();

  report.receiver_ok.assign(K, true);
  report.all_ok = true;
  for (int user = 1; user <= K; ++user) {
    const ChannelBlock obs = receive(user, report.block);
    const auto decoded = decode_all(comp, user, obs);
    bool ok = true;
    for (std::size_t p = 0; p < comp.parts.size(); ++p) {
      for (const auto& [target, payload] : decoded[p]) {
        if (payload != sent[p].at(target)) ok = false;
      }
      for (const auto& [target, payload] : sent[p]) {
        if (subset::contains(target, user) && decoded[p].find(target) == decoded[p].end())
          ok = false;
      }
    }
    report.receiver_ok[user - 1] = ok;
    report.all_ok = report.all_ok && ok;
  }
  return report;
}

}  // namespace lcr
