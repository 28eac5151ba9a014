#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace lcr {

// Systematic (n, k) MDS erasure code over GF(2^8): share p carries the value
// of the unique degree < k polynomial through (0, data[0]) .. (k-1, data[k-1])
// evaluated at p. Shares 0..k-1 are the data itself. Any k distinct shares
// reconstruct. Requires 1 <= k <= n <= 255.
struct MdsCodeSpec {
  int n = 0;
  int k = 0;
};

void validate(const MdsCodeSpec& spec);  // throws std::invalid_argument

// Element-wise API: one byte per share.
std::vector<std::uint8_t> rs_encode(const MdsCodeSpec& spec,
                                    const std::vector<std::uint8_t>& data);
std::vector<std::uint8_t> rs_decode(const MdsCodeSpec& spec,
                                    const std::vector<std::pair<int, std::uint8_t>>& shares);

// Vector API: each share is a byte vector, the code is applied per position.
// All vectors must share one length.
std::vector<std::vector<std::uint8_t>> rs_encode_block(
    const MdsCodeSpec& spec, const std::vector<std::vector<std::uint8_t>>& data);
std::vector<std::vector<std::uint8_t>> rs_decode_block(
    const MdsCodeSpec& spec,
    const std::vector<std::pair<int, std::vector<std::uint8_t>>>& shares);

}  // namespace lcr
