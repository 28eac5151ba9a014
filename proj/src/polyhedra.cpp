#include "lcr/polyhedra.hpp"

#include "lcr/linprog.hpp"

#include <algorithm>
#include <utility>

namespace lcr {

namespace {

BigInt lcm_big(const BigInt& a, const BigInt& b) {
  return a / boost::multiprecision::gcd(a, b) * b;
}

std::string rvar(int i, int j) { return "r_" + std::to_string(i) + "_" + std::to_string(j); }

}  // namespace

void AffineInequality::normalize() {
  for (auto it = coef.begin(); it != coef.end();) {
    it = it->second.is_zero() ? coef.erase(it) : std::next(it);
  }
  BigInt den{1};
  for (const auto& [name, c] : coef) den = lcm_big(den, c.den());
  den = lcm_big(den, constant.den());
  BigInt num{0};
  auto fold = [&](const Rational& r) {
    BigInt scaled = r.num() * (den / r.den());
    if (scaled < 0) scaled = -scaled;
    num = boost::multiprecision::gcd(num, scaled);
  };
  for (const auto& [name, c] : coef) fold(c);
  fold(constant);
  if (num == 0) {
    // all-zero left side; keep only the sign of the constant
    constant = Rational(constant.sign());
    return;
  }
  const Rational scale{den, num};
  for (auto& [name, c] : coef) c *= scale;
  constant *= scale;
}

Rational AffineInequality::eval(const std::map<std::string, Rational>& point) const {
  Rational s;
  for (const auto& [name, c] : coef) s += c * point.at(name);
  return s;
}

std::string AffineInequality::str() const {
  std::string out;
  for (const auto& [name, c] : coef) {
    if (!out.empty()) out += " + ";
    out += c.str() + "*" + name;
  }
  if (out.empty()) out = "0";
  return out + " <= " + constant.str();
}

void InequalitySystem::add(AffineInequality row) {
  row.normalize();
  if (row.trivially_true()) return;
  if (std::find(rows.begin(), rows.end(), row) != rows.end()) return;
  rows.push_back(std::move(row));
}

void InequalitySystem::sort_rows() {
  auto key = [this](const AffineInequality& row) {
    std::vector<Rational> k;
    k.reserve(vars.size() + 1);
    for (const auto& v : vars) {
      auto it = row.coef.find(v);
      k.push_back(it == row.coef.end() ? Rational{} : it->second);
    }
    k.push_back(row.constant);
    return k;
  };
  std::stable_sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
    return key(a) < key(b);
  });
}

bool InequalitySystem::satisfied_by(const std::map<std::string, Rational>& point) const {
  for (const auto& row : rows) {
    if (row.eval(point) > row.constant) return false;
  }
  return true;
}

InequalitySystem fm_eliminate(const InequalitySystem& system, const std::string& var) {
  if (std::find(system.vars.begin(), system.vars.end(), var) == system.vars.end())
    throw std::invalid_argument("fm_eliminate: unknown variable " + var);

  InequalitySystem out;
  out.vars = system.vars;
  out.vars.erase(std::find(out.vars.begin(), out.vars.end(), var));

  std::vector<const AffineInequality*> pos, neg;
  for (const auto& row : system.rows) {
    auto it = row.coef.find(var);
    if (it == row.coef.end() || it->second.is_zero()) {
      out.add(row);
    } else if (it->second.sign() > 0) {
      pos.push_back(&row);
    } else {
      neg.push_back(&row);
    }
  }
  for (const auto* p : pos) {
    const Rational a = p->coef.at(var);
    for (const auto* q : neg) {
      const Rational c = q->coef.at(var);
      AffineInequality combined;
      // a > 0, c < 0: a * (*q) + (-c) * (*p) cancels var.
      for (const auto& [name, v] : q->coef) combined.coef[name] += a * v;
      for (const auto& [name, v] : p->coef) combined.coef[name] -= c * v;
      combined.coef.erase(var);
      combined.constant = a * q->constant - c * p->constant;
      out.add(std::move(combined));
    }
  }
  return out;
}

InequalitySystem remove_redundant(const InequalitySystem& system) {
  InequalitySystem work;
  work.vars = system.vars;
  for (const auto& row : system.rows) work.add(row);
  work.sort_rows();

  // Cheap dominance pass: identical left sides keep only the tightest row.
  std::vector<AffineInequality> rows;
  for (auto& row : work.rows) {
    if (!rows.empty() && rows.back().coef == row.coef) continue;  // sorted: tightest first
    rows.push_back(std::move(row));
  }

  const std::size_t nvars = work.vars.size();
  std::map<std::string, std::size_t> var_index;
  for (std::size_t v = 0; v < nvars; ++v) var_index[work.vars[v]] = v;
  auto dense = [&](const AffineInequality& row) {
    std::vector<Rational> d(nvars);
    for (const auto& [name, c] : row.coef) d[var_index.at(name)] = c;
    return d;
  };

  std::vector<bool> kept(rows.size(), true);
  for (std::size_t idx = 0; idx < rows.size(); ++idx) {
    LinearProgram lp;
    lp.objective = dense(rows[idx]);
    lp.signs.assign(nvars, VarSign::Free);
    for (std::size_t o = 0; o < rows.size(); ++o) {
      if (o == idx || !kept[o]) continue;
      lp.rows.push_back(dense(rows[o]));
      lp.rhs.push_back(rows[o].constant);
    }
    LpOutcome outcome = lp_optimize(lp);
    if (const auto* opt = std::get_if<LpOptimal>(&outcome)) {
      kept[idx] = opt->value > rows[idx].constant;
    } else {
      kept[idx] = std::holds_alternative<LpUnbounded>(outcome);
    }
  }

  InequalitySystem out;
  out.vars = system.vars;
  for (std::size_t idx = 0; idx < rows.size(); ++idx) {
    if (kept[idx]) out.rows.push_back(std::move(rows[idx]));
  }
  return out;
}

InequalitySystem build_region_system(int K, bool symbolic,
                                     const std::optional<RateVector>& rstar) {
  if (K < 1) throw std::invalid_argument("build_region_system: K must be >= 1");
  if (symbolic && rstar.has_value())
    throw std::invalid_argument("build_region_system: rstar given for a symbolic build");
  if (!symbolic) {
    if (!rstar.has_value()) throw std::invalid_argument("build_region_system: rstar required");
    if (static_cast<int>(rstar->size()) != K)
      throw std::invalid_argument("build_region_system: rstar has wrong length");
    for (const auto& e : *rstar) {
      if (e.sign() < 0) throw std::invalid_argument("build_region_system: negative rstar entry");
    }
  }

  const ExchangeTable table = phi_table(K);
  InequalitySystem sys;
  for (int j = 1; j <= K; ++j) sys.vars.push_back("R" + std::to_string(j));
  if (symbolic) {
    for (int i = 1; i <= K; ++i) sys.vars.push_back("Rstar" + std::to_string(i));
  }
  for (int i = 1; i <= K; ++i) {
    for (int j = 1; j <= K; ++j) sys.vars.push_back(rvar(i, j));
  }

  for (int i = 1; i <= K; ++i) {
    for (int j = 1; j <= K; ++j) {
      AffineInequality row;
      row.coef[rvar(i, j)] = -1;
      sys.add(std::move(row));
    }
  }
  for (int i = 1; i <= K; ++i) {
    AffineInequality row;
    for (int j = 1; j <= K; ++j) row.coef[rvar(i, j)] = 1;
    if (symbolic) {
      row.coef["Rstar" + std::to_string(i)] = -1;
    } else {
      row.constant = (*rstar)[i - 1];
    }
    sys.add(std::move(row));
  }
  for (int j = 1; j <= K; ++j) {
    AffineInequality row;
    row.coef["R" + std::to_string(j)] = 1;
    for (int i = 1; i <= K; ++i) row.coef[rvar(i, j)] = -table.at(i, j);
    sys.add(std::move(row));
  }
  for (int j = 1; j <= K; ++j) {
    AffineInequality row;
    row.coef["R" + std::to_string(j)] = -1;
    sys.add(std::move(row));
  }
  return sys;
}

InequalitySystem latent_facets(int K, bool symbolic, const std::optional<RateVector>& rstar,
                               int elimination_bound) {
  if (K > elimination_bound)
    throw EliminationLimitError("latent_facets: K=" + std::to_string(K) +
                                " exceeds the elimination bound " +
                                std::to_string(elimination_bound));
  InequalitySystem sys = build_region_system(K, symbolic, rstar);

  std::vector<std::string> pending;
  for (int i = 1; i <= K; ++i) {
    for (int j = 1; j <= K; ++j) pending.push_back(rvar(i, j));
  }
  while (!pending.empty()) {
    // Cheapest elimination first: fewest pos * neg combinations.
    std::size_t best = 0;
    long long best_cost = -1;
    for (std::size_t v = 0; v < pending.size(); ++v) {
      long long np = 0, nn = 0;
      for (const auto& row : sys.rows) {
        auto it = row.coef.find(pending[v]);
        if (it == row.coef.end()) continue;
        (it->second.sign() > 0 ? np : nn) += 1;
      }
      const long long cost = np * nn;
      if (best_cost < 0 || cost < best_cost) {
        best = v;
        best_cost = cost;
      }
    }
    const std::string var = pending[best];
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));
    sys = remove_redundant(fm_eliminate(sys, var));
  }
  sys.sort_rows();
  return sys;
}

std::vector<std::array<Rational, 3>> vertices3(const InequalitySystem& system) {
  if (system.vars != std::vector<std::string>{"R1", "R2", "R3"})
    throw std::invalid_argument("vertices3: system must be over R1, R2, R3");

  std::map<std::string, std::size_t> var_index{{"R1", 0}, {"R2", 1}, {"R3", 2}};
  std::vector<std::array<Rational, 3>> lhs;
  std::vector<Rational> rhs;
  for (const auto& row : system.rows) {
    std::array<Rational, 3> d{};
    for (const auto& [name, c] : row.coef) d[var_index.at(name)] = c;
    lhs.push_back(d);
    rhs.push_back(row.constant);
  }

  for (int axis = 0; axis < 3; ++axis) {
    for (int dir = -1; dir <= 1; dir += 2) {
      LinearProgram lp;
      lp.objective.assign(3, Rational{});
      lp.objective[axis] = dir;
      lp.signs.assign(3, VarSign::Free);
      for (std::size_t i = 0; i < lhs.size(); ++i) {
        lp.rows.emplace_back(lhs[i].begin(), lhs[i].end());
        lp.rhs.push_back(rhs[i]);
      }
      if (std::holds_alternative<LpUnbounded>(lp_optimize(lp)))
        throw std::domain_error("vertices3: system is unbounded");
    }
  }

  auto det3 = [](const std::array<std::array<Rational, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };

  std::vector<std::array<Rational, 3>> verts;
  const std::size_t m = lhs.size();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      for (std::size_t c = b + 1; c < m; ++c) {
        const std::array<std::array<Rational, 3>, 3> mat{lhs[a], lhs[b], lhs[c]};
        const Rational det = det3(mat);
        if (det.is_zero()) continue;
        std::array<Rational, 3> x;
        for (int col = 0; col < 3; ++col) {
          auto replaced = mat;
          replaced[0][col] = rhs[a];
          replaced[1][col] = rhs[b];
          replaced[2][col] = rhs[c];
          x[col] = det3(replaced) / det;
        }
        bool inside = true;
        for (std::size_t i = 0; i < m && inside; ++i) {
          Rational v;
          for (int col = 0; col < 3; ++col) v += lhs[i][col] * x[col];
          inside = v <= rhs[i];
        }
        if (inside) verts.push_back(x);
      }
    }
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return verts;
}

}  // namespace lcr
