#pragma once

#include <cstdint>

namespace lcr::gf256 {

// GF(2^8) with the primitive polynomial x^8 + x^4 + x^3 + x^2 + 1 (0x11D)
// and generator alpha = 2. Addition and subtraction are XOR.
inline constexpr unsigned kPrimitivePoly = 0x11D;

inline std::uint8_t add(std::uint8_t a, std::uint8_t b) { return a ^ b; }

std::uint8_t mul(std::uint8_t a, std::uint8_t b);
std::uint8_t inv(std::uint8_t a);                   // throws std::domain_error on 0
std::uint8_t div(std::uint8_t a, std::uint8_t b);   // throws std::domain_error on b == 0

}  // namespace lcr::gf256
