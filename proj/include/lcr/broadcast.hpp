#pragma once

#include "lcr/rational.hpp"
#include "lcr/reed_solomon.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace lcr {

// Users are 1..K; a subset of users is a bitmask with bit u-1 for user u.
// The deterministic broadcast channel carries one input X_A per non-empty
// subset A, and receiver u observes exactly {X_A : u in A}. K is capped at 6.
using SubsetId = std::uint32_t;

namespace subset {
int level(SubsetId s);
bool contains(SubsetId s, int user);
std::string name(SubsetId s);  // "13" for {1, 3}
std::vector<SubsetId> of_size(int K, int lvl);                    // ascending
std::vector<SubsetId> subsets_of(SubsetId s, int lvl);            // ascending
std::vector<SubsetId> supersets_of(SubsetId s, int K, int lvl);   // ascending
int index_of(const std::vector<SubsetId>& list, SubsetId s);      // -1 if absent
}  // namespace subset

struct ChannelBlock {
  int K = 0;
  std::vector<int> capacity;  // symbols per subset of each level, index lvl-1
  std::map<SubsetId, std::vector<std::uint8_t>> entries;
};

// One level-i to level-j conversion running at `budget` symbols per source
// set. Up (i < j): the budget splits into C(K-i, j-i) shares of `piece`
// bytes, one per superset wave; each target set B recovers an
// (C(j,i), C(j-1,i-1)) MDS codeword and decodes `payload` symbols.
// Down (i > j): the budget splits into C(i, j) chunks, one per contained
// target; each target set A accumulates C(K-j, i-j) chunks. i == j is the
// identity scheme.
struct TransferScheme {
  int K = 0;
  int source_level = 0;
  int target_level = 0;
  int budget = 0;
  int piece = 0;
  int payload = 0;
  MdsCodeSpec mds;
};

TransferScheme build_up_scheme(int K, int i, int j, int s);
TransferScheme build_down_scheme(int K, int i, int j, int s);
TransferScheme build_scheme(int K, int i, int j, int s);

// target set -> payload bytes, one symbol = one byte
using MessageSet = std::map<SubsetId, std::vector<std::uint8_t>>;

MessageSet random_messages(const TransferScheme& scheme, std::uint64_t seed);

// A full allocation r[i][j] of per-level capacities, scaled by one common
// block multiplier so that every per-scheme split is integral.
struct CompositeScheme {
  int K = 0;
  std::vector<int> capacity;            // unscaled symbols per level
  long long multiplier = 1;
  std::vector<std::vector<int>> alloc;  // requested symbols, row i-1 = source level i
  std::vector<TransferScheme> parts;    // budgets scaled by multiplier, (i, j) order
};

CompositeScheme compose(int K, const std::vector<int>& capacity,
                        const std::vector<std::vector<int>>& alloc);

// Deterministic placement of every part's messages into one channel block.
// messages[p] must hold exactly the target sets of parts[p], each of size
// parts[p].payload.
ChannelBlock transmit(const CompositeScheme& comp, const std::vector<MessageSet>& messages);

// Channel law: the observation of `user` is the restriction of the block to
// the subsets containing the user.
ChannelBlock receive(int user, const ChannelBlock& block);

// Messages of part p addressed to sets containing `user`, reconstructed from
// the user's observation alone.
MessageSet decode_part(const CompositeScheme& comp, std::size_t p, int user,
                       const ChannelBlock& observed);
std::vector<MessageSet> decode_all(const CompositeScheme& comp, int user,
                                   const ChannelBlock& observed);

struct EndToEndReport {
  int K = 0;
  long long multiplier = 1;
  std::vector<long long> delivered_scaled;  // per level, symbols per target set
  std::vector<Rational> delivered_rate;     // delivered_scaled / multiplier
  std::vector<bool> receiver_ok;
  bool all_ok = false;
  std::size_t channel_bytes = 0;
  ChannelBlock block;
};

EndToEndReport run_end_to_end(int K, const std::vector<int>& capacity,
                              const std::vector<std::vector<int>>& alloc,
                              std::uint64_t seed);

}  // namespace lcr
