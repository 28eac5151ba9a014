#pragma once

#include "lcr/rational.hpp"

#include <variant>
#include <vector>

namespace lcr {

enum class VarSign { NonNegative, Free };

// maximize objective . x
// subject to rows[i] . x <= rhs[i] for every i,
//            x[j] >= 0 where signs[j] == NonNegative.
struct LinearProgram {
  std::vector<Rational> objective;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<VarSign> signs;

  std::size_t num_vars() const { return objective.size(); }
  std::size_t num_rows() const { return rows.size(); }
};

struct LpOptimal {
  Rational value;
  std::vector<Rational> point;  // satisfies every constraint exactly
  std::vector<Rational> duals;  // one per row, >= 0, duals.rhs == value
};

struct LpInfeasible {
  // y >= 0 with y.A >= 0 on non-negative columns, y.A == 0 on free
  // columns, and y.rhs < 0.
  std::vector<Rational> farkas;
};

struct LpUnbounded {
  std::vector<Rational> point;  // feasible starting point
  std::vector<Rational> ray;    // A.ray <= 0, ray >= 0 where required, c.ray > 0
};

using LpOutcome = std::variant<LpOptimal, LpInfeasible, LpUnbounded>;

// Exact two-phase simplex with Bland's smallest-index anti-cycling rule.
// Certificates are verified against the input before returning; a failed
// verification throws std::logic_error. Malformed dimensions throw
// std::invalid_argument.
LpOutcome lp_optimize(const LinearProgram& lp);

}  // namespace lcr
