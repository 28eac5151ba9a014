#pragma once

#include "lcr/rational.hpp"
#include "lcr/region.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcr {

// sum over (name, coef) of coef * var <= constant. Normalized form:
// primitive integer coefficients obtained by positive scaling only (the
// direction of the inequality is never flipped), zero coefficients dropped.
struct AffineInequality {
  std::map<std::string, Rational> coef;
  Rational constant;

  void normalize();
  bool trivially_true() const { return coef.empty() && constant.sign() >= 0; }
  bool contradiction() const { return coef.empty() && constant.sign() < 0; }

  Rational eval(const std::map<std::string, Rational>& point) const;
  std::string str() const;

  friend bool operator==(const AffineInequality& a, const AffineInequality& b) {
    return a.coef == b.coef && a.constant == b.constant;
  }
};

struct InequalitySystem {
  std::vector<std::string> vars;  // canonical variable order
  std::vector<AffineInequality> rows;

  // Normalizes, drops trivially true rows and exact duplicates.
  void add(AffineInequality row);
  // Sorts rows by (coefficients in canonical variable order, constant).
  void sort_rows();
  bool satisfied_by(const std::map<std::string, Rational>& point) const;
};

// Fourier-Motzkin elimination of one variable: every positive-coefficient
// row is combined with every negative-coefficient row, rows without the
// variable pass through. Unknown variable throws std::invalid_argument.
InequalitySystem fm_eliminate(const InequalitySystem& system, const std::string& var);

// Keeps a row iff maximizing its left side subject to all other remaining
// rows exceeds its constant (unbounded keeps it). All variables are free;
// sign information must be present as explicit rows.
InequalitySystem remove_redundant(const InequalitySystem& system);

// The defining inequality system of the latent capacity region over
// variables R1..RK, r_i_j, and (when symbolic) Rstar1..RstarK:
//   r_i_j >= 0, sum_j r_i_j <= Rstar_i, R_j <= sum_i phi(i,j) r_i_j, R_j >= 0.
InequalitySystem build_region_system(int K, bool symbolic,
                                     const std::optional<RateVector>& rstar);

struct EliminationLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Eliminates every r_i_j from the region system (cheapest pos*neg product
// first, redundancy removed after each round). K above the bound throws
// EliminationLimitError.
InequalitySystem latent_facets(int K, bool symbolic, const std::optional<RateVector>& rstar,
                               int elimination_bound = 4);

// Vertices of a bounded system over exactly {R1, R2, R3}: every triple of
// rows solved exactly, solutions filtered by the full system, deduplicated
// and sorted. Unbounded systems throw std::domain_error.
std::vector<std::array<Rational, 3>> vertices3(const InequalitySystem& system);

}  // namespace lcr
