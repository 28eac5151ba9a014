#include "lcr/broadcast.hpp"
#include "lcr/exchange.hpp"
#include "lcr/infotools.hpp"
#include "lcr/linprog.hpp"
#include "lcr/polyhedra.hpp"
#include "lcr/rational.hpp"
#include "lcr/region.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using lcr::Rational;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitOutside = 3;
constexpr int kExitViolation = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, sep)) out.push_back(token);
  if (!text.empty() && text.back() == sep) out.push_back("");
  return out;
}

std::vector<Rational> parse_rationals(const std::string& text, int expected, const char* flag) {
  const auto tokens = split(text, ',');
  if (expected >= 0 && static_cast<int>(tokens.size()) != expected)
    throw UsageError(std::string(flag) + ": expected " + std::to_string(expected) +
                     " comma-separated values");
  std::vector<Rational> out;
  for (const auto& tok : tokens) {
    auto r = Rational::parse(tok);
    if (!r) throw UsageError(std::string(flag) + ": bad rational '" + tok + "'");
    out.push_back(*r);
  }
  return out;
}

// pre-round so the serialized float carries 12 significant digits
double round12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

ordered_json rationals_json(const std::vector<Rational>& v) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : v) arr.push_back(r.str());
  return arr;
}

ordered_json allocation_json(const lcr::Allocation& alloc) {
  ordered_json rows = ordered_json::array();
  for (int i = 1; i <= alloc.K; ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 1; j <= alloc.K; ++j) row.push_back(alloc.at(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json partition_json(const lcr::ConsecutivePartition& part) {
  ordered_json segments = ordered_json::array();
  int start = 1;
  for (int end : part.ends) {
    ordered_json seg = ordered_json::array();
    for (int l = start; l <= end; ++l) seg.push_back(l);
    segments.push_back(std::move(seg));
    start = end + 1;
  }
  ordered_json out;
  out["segments"] = std::move(segments);
  out["representatives"] = part.reps;
  return out;
}

ordered_json system_json(const lcr::InequalitySystem& sys) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : sys.rows) {
    ordered_json coefs;
    for (const auto& var : sys.vars) {
      auto it = row.coef.find(var);
      if (it != row.coef.end()) coefs[var] = it->second.str();
    }
    ordered_json entry;
    entry["coefficients"] = std::move(coefs);
    entry["constant"] = row.constant.str();
    entry["display"] = row.str();
    rows.push_back(std::move(entry));
  }
  return rows;
}

std::string hex_dump(const std::vector<std::uint8_t>& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out += digits[b >> 4];
    out += digits[b & 0xF];
  }
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw UsageError("cannot open output file " + out_path);
  file << text;
}

void emit_json(const ordered_json& j, const std::string& out_path) {
  emit(j.dump(2) + "\n", out_path);
}

struct Options {
  int k = 0;
  std::string rstar, rates, dir, cap, alloc;
  std::string format = "json";
  std::string out_path;
  std::uint64_t seed = 0;
  int trials = 1;
  bool symbolic = false;
  bool trace = false;
};

int run_phi(const Options& opt) {
  const auto table = lcr::phi_table(opt.k);
  if (opt.format == "csv") {
    std::string text;
    for (int i = 1; i <= opt.k; ++i) {
      for (int j = 1; j <= opt.k; ++j) {
        text += table.at(i, j).str();
        text += j == opt.k ? '\n' : ',';
      }
    }
    emit(text, opt.out_path);
    return kExitOk;
  }
  ordered_json j;
  j["k"] = opt.k;
  ordered_json rows = ordered_json::array();
  for (int i = 1; i <= opt.k; ++i) {
    ordered_json row = ordered_json::array();
    for (int jj = 1; jj <= opt.k; ++jj) row.push_back(table.at(i, jj).str());
    rows.push_back(std::move(row));
  }
  j["phi"] = std::move(rows);
  emit_json(j, opt.out_path);
  return kExitOk;
}

int run_member(const Options& opt) {
  const auto rstar = parse_rationals(opt.rstar, opt.k, "--rstar");
  const auto rates = parse_rationals(opt.rates, opt.k, "--r");
  const auto verdict = lcr::member(opt.k, rstar, rates);
  ordered_json j;
  j["k"] = opt.k;
  j["rstar"] = rationals_json(rstar);
  j["r"] = rationals_json(rates);
  if (const auto* in = std::get_if<lcr::MemberInside>(&verdict)) {
    j["verdict"] = "inside";
    j["witness"] = allocation_json(in->witness);
    emit_json(j, opt.out_path);
    return kExitOk;
  }
  j["verdict"] = "outside";
  j["separator"] = rationals_json(std::get<lcr::MemberOutside>(verdict).separator);
  emit_json(j, opt.out_path);
  return kExitOutside;
}

int run_support(const Options& opt) {
  const auto rstar = parse_rationals(opt.rstar, opt.k, "--rstar");
  const auto dir = parse_rationals(opt.dir, opt.k, "--a");
  const auto lp = lcr::support_lp(opt.k, rstar, dir);
  const auto part = lcr::support_partition(opt.k, rstar, dir);
  ordered_json j;
  j["k"] = opt.k;
  j["rstar"] = rationals_json(rstar);
  j["a"] = rationals_json(dir);
  j["value"] = lp.value.str();
  j["allocation"] = allocation_json(lp.argmax);
  j["point"] = rationals_json(lp.point);
  j["partition"] = partition_json(part.best);
  j["partition_value"] = part.value.str();
  emit_json(j, opt.out_path);
  return lp.value == part.value ? kExitOk : kExitViolation;
}

int run_facets(const Options& opt) {
  std::optional<lcr::RateVector> rstar;
  if (!opt.symbolic) {
    if (opt.rstar.empty()) throw UsageError("facets: --rstar required unless --symbolic");
    rstar = parse_rationals(opt.rstar, opt.k, "--rstar");
  } else if (!opt.rstar.empty()) {
    throw UsageError("facets: --rstar conflicts with --symbolic");
  }
  lcr::InequalitySystem sys;
  try {
    sys = lcr::latent_facets(opt.k, opt.symbolic, rstar);
  } catch (const lcr::EliminationLimitError& e) {
    throw UsageError(e.what());
  }
  ordered_json j;
  j["k"] = opt.k;
  j["symbolic"] = opt.symbolic;
  if (rstar) j["rstar"] = rationals_json(*rstar);
  j["variables"] = sys.vars;
  j["inequalities"] = system_json(sys);
  emit_json(j, opt.out_path);
  return kExitOk;
}

int run_plotdata(const Options& opt) {
  const auto rstar = parse_rationals(opt.rstar, 3, "--rstar");
  const auto sys = lcr::latent_facets(3, false, rstar);
  const auto verts = lcr::vertices3(sys);
  std::string text = "# vertices and facet incidence for rstar=" + opt.rstar + "\n";
  for (std::size_t i = 0; i < sys.rows.size(); ++i)
    text += "# i" + std::to_string(i) + ": " + sys.rows[i].str() + "\n";
  text += "R1,R2,R3";
  for (std::size_t i = 0; i < sys.rows.size(); ++i) text += ",i" + std::to_string(i);
  text += "\n";
  for (const auto& v : verts) {
    text += v[0].str() + "," + v[1].str() + "," + v[2].str();
    const std::map<std::string, Rational> point{{"R1", v[0]}, {"R2", v[1]}, {"R3", v[2]}};
    for (const auto& row : sys.rows) text += row.eval(point) == row.constant ? ",1" : ",0";
    text += "\n";
  }
  emit(text, opt.out_path);
  return kExitOk;
}

int run_simulate(const Options& opt) {
  const auto cap_tokens = split(opt.cap, ',');
  if (static_cast<int>(cap_tokens.size()) != opt.k)
    throw UsageError("--cap: expected " + std::to_string(opt.k) + " comma-separated integers");
  std::vector<int> capacity;
  for (const auto& tok : cap_tokens) {
    try {
      capacity.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw UsageError("--cap: bad integer '" + tok + "'");
    }
  }
  std::vector<std::vector<int>> alloc(opt.k, std::vector<int>(opt.k, 0));
  if (!opt.alloc.empty()) {
    for (const auto& entry : split(opt.alloc, ';')) {
      const auto fields = split(entry, ',');
      if (fields.size() != 3) throw UsageError("--alloc: entry '" + entry + "' is not i,j,amount");
      int i = 0, j = 0, amount = 0;
      try {
        i = std::stoi(fields[0]);
        j = std::stoi(fields[1]);
        amount = std::stoi(fields[2]);
      } catch (const std::exception&) {
        throw UsageError("--alloc: bad integer in '" + entry + "'");
      }
      if (i < 1 || i > opt.k || j < 1 || j > opt.k)
        throw UsageError("--alloc: levels out of range in '" + entry + "'");
      if (alloc[i - 1][j - 1] != 0) throw UsageError("--alloc: duplicate cell in '" + entry + "'");
      alloc[i - 1][j - 1] = amount;
    }
  }
  if (opt.trials < 1) throw UsageError("--trials: must be >= 1");

  ordered_json j;
  j["k"] = opt.k;
  j["capacity"] = capacity;
  j["allocation"] = alloc;
  j["seed"] = opt.seed;
  j["trials"] = opt.trials;
  ordered_json runs = ordered_json::array();
  bool all_ok = true;
  for (int t = 0; t < opt.trials; ++t) {
    lcr::EndToEndReport report;
    try {
      report = lcr::run_end_to_end(opt.k, capacity, alloc, opt.seed + static_cast<std::uint64_t>(t));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (t == 0) {
      j["multiplier"] = report.multiplier;
      ordered_json delivered;
      ordered_json scaled = ordered_json::array();
      for (long long v : report.delivered_scaled) scaled.push_back(v);
      delivered["scaled_per_target_set"] = std::move(scaled);
      delivered["rate_per_level"] = rationals_json(report.delivered_rate);
      j["delivered"] = std::move(delivered);
      j["channel_bytes"] = report.channel_bytes;
      if (opt.trace) {
        ordered_json trace;
        for (const auto& [s, bytes] : report.block.entries)
          trace[lcr::subset::name(s)] = hex_dump(bytes);
        j["trace"] = std::move(trace);
      }
    }
    ordered_json run;
    run["seed"] = opt.seed + static_cast<std::uint64_t>(t);
    run["receivers"] = report.receiver_ok;
    run["ok"] = report.all_ok;
    runs.push_back(std::move(run));
    all_ok = all_ok && report.all_ok;
  }
  j["runs"] = std::move(runs);
  j["ok"] = all_ok;
  emit_json(j, opt.out_path);
  return all_ok ? kExitOk : kExitViolation;
}

int run_check_lemmas(const Options& opt) {
  const int max_k = 12;
  const std::string identity_failure = lcr::run_phi_identity_suite(max_k);
  const auto suite = lcr::run_submodularity_suite(opt.trials, opt.seed);
  ordered_json j;
  ordered_json identities;
  identities["max_k"] = max_k;
  identities["ok"] = identity_failure.empty();
  if (!identity_failure.empty()) identities["failure"] = identity_failure;
  j["identities"] = std::move(identities);
  ordered_json sub;
  sub["trials"] = suite.trials;
  sub["seed"] = opt.seed;
  sub["pair_min_margin"] = round12(suite.pair_min_margin);
  sub["kway_min_margin"] = round12(suite.kway_min_margin);
  sub["violations"] = suite.violations;
  sub["ok"] = suite.violations == 0;
  j["submodularity"] = std::move(sub);
  const bool ok = identity_failure.empty() && suite.violations == 0;
  j["ok"] = ok;
  emit_json(j, opt.out_path);
  return ok ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latent capacity region toolkit for symmetric broadcast"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd, bool with_format) {
    cmd->add_option("--out", opt.out_path, "write output to a file instead of stdout");
    if (with_format)
      cmd->add_option("--format", opt.format, "output format")
          ->check(CLI::IsMember({"json", "csv"}));
  };

  auto* phi = app.add_subcommand("phi", "exchange-rate table");
  phi->add_option("--k", opt.k, "number of users")->required()->check(CLI::PositiveNumber);
  add_common(phi, true);

  auto* member = app.add_subcommand("member", "membership test with witness or separator");
  member->add_option("--k", opt.k)->required()->check(CLI::PositiveNumber);
  member->add_option("--rstar", opt.rstar, "per-level rates of the given code, p/q list")->required();
  member->add_option("--r", opt.rates, "queried latent rates, p/q list")->required();
  add_common(member, false);

  auto* support = app.add_subcommand("support", "support value in a direction");
  support->add_option("--k", opt.k)->required()->check(CLI::PositiveNumber);
  support->add_option("--rstar", opt.rstar)->required();
  support->add_option("--a", opt.dir, "direction weights, p/q list")->required();
  add_common(support, false);

  auto* facets = app.add_subcommand("facets", "facet inequalities of the region");
  facets->add_option("--k", opt.k)->required()->check(CLI::PositiveNumber);
  facets->add_option("--rstar", opt.rstar);
  facets->add_flag("--symbolic", opt.symbolic, "keep the given rates symbolic");
  add_common(facets, false);

  auto* plotdata = app.add_subcommand("plotdata", "K=3 vertex/facet CSV");
  plotdata->add_option("--rstar", opt.rstar)->required();
  add_common(plotdata, false);

  auto* simulate = app.add_subcommand("simulate", "run the coded broadcast simulator");
  simulate->add_option("--k", opt.k)->required()->check(CLI::PositiveNumber);
  simulate->add_option("--cap", opt.cap, "per-level capacities, integers")->required();
  simulate->add_option("--alloc", opt.alloc, "semicolon list of i,j,amount");
  simulate->add_option("--seed", opt.seed, "payload seed");
  simulate->add_option("--trials", opt.trials, "number of seeded runs");
  simulate->add_flag("--trace", opt.trace, "dump channel blocks as hex");
  add_common(simulate, false);

  auto* lemmas = app.add_subcommand("check-lemmas", "exchange identities and entropy margins");
  lemmas->add_option("--trials", opt.trials, "random distributions to test");
  lemmas->add_option("--seed", opt.seed);
  add_common(lemmas, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(phi)) return run_phi(opt);
    if (app.got_subcommand(member)) return run_member(opt);
    if (app.got_subcommand(support)) return run_support(opt);
    if (app.got_subcommand(facets)) return run_facets(opt);
    if (app.got_subcommand(plotdata)) return run_plotdata(opt);
    if (app.got_subcommand(simulate)) return run_simulate(opt);
    if (app.got_subcommand(lemmas)) {
      if (!lemmas->count("--trials")) opt.trials = 10000;
      return run_check_lemmas(opt);
    }
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitUsage;
}
