#pragma once

// Command implementations behind the zqwalk executable. Each writes CSV or
// JSON to a stream; the first CSV line is "# <resolved spec>".

#include <json.hpp>

#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "zqwalk/grouped.hpp"
#include "zqwalk/krawtchouk.hpp"
#include "zqwalk/mc_oracle.hpp"
#include "zqwalk/product_chain.hpp"
#include "zqwalk/torus.hpp"
#include "zqwalk/walk_spec.hpp"

namespace zqwalk::cli {

enum class Format { kCsv, kJson };

struct Options {
  std::optional<int> t;
  std::optional<std::pair<int, int>> t_range;
  long long paths = 10'000;
  std::uint64_t seed = 1;
  double eps = 1e-6;
  Format format = Format::kCsv;
  /// chisq: starting count vector (default: counts of the start state)
  std::optional<std::vector<int>> m0;
  /// simulate: force grouped-count outcomes
  bool grouped = false;
  /// torus: start point and grid size
  double a = 0.0;
  int grid = 256;
  /// eigs on a torus spec: largest frequency listed
  int rmax = 16;
};

/// Parse "A:B" (inclusive) into a pair.
inline std::pair<int, int> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  detail::require(colon != std::string::npos, ErrorKind::kValidation, "t-range must look like A:B");
  try {
    const int a = std::stoi(s.substr(0, colon));
    const int b = std::stoi(s.substr(colon + 1));
    detail::require(a >= 0 && b >= a, ErrorKind::kValidation, "t-range needs 0 <= A <= B");
    return {a, b};
  } catch (const std::logic_error&) {
    detail::fail(ErrorKind::kValidation, "t-range must look like A:B");
  }
}

namespace detail {

using zqwalk::detail::fail;
using zqwalk::detail::require;

inline std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

inline void header(std::ostream& out, const WalkSpec& spec) { out << "# " << spec.resolved().dump() << '\n'; }

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

inline std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return fmt(v.get<double>());
  return v.dump();
}

inline void emit(std::ostream& out, const WalkSpec& spec, const Options& opt, const Table& table, Json extra = {}) {
  if (opt.format == Format::kJson) {
    Json doc{{"spec", spec.resolved()}};
    Json rows = Json::array();
    for (const auto& r : table.rows) {
      Json o = Json::object();
      for (std::size_t i = 0; i < table.columns.size(); ++i) o[table.columns[i]] = r[i];
      rows.push_back(o);
    }
    doc["rows"] = rows;
    if (extra.is_object()) doc.update(extra);
    out << doc.dump(2) << '\n';
    return;
  }
  header(out, spec);
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& r : table.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_cell(r[i]);
    out << '\n';
  }
  if (extra.is_object()) {
    for (const auto& [k, v] : extra.items()) out << "# " << k << ' ' << v.dump() << '\n';
  }
}

inline std::vector<Json> eigen_row(const std::string& index, Complex v) {
  return {index, v.real(), v.imag(), std::abs(v)};
}

inline std::pair<int, int> time_range(const Options& opt, std::pair<int, int> fallback) {
  if (opt.t_range) return *opt.t_range;
  if (opt.t) return {*opt.t, *opt.t};
  return fallback;
}

}  // namespace detail

/// The one-dimensional marginal law of a d = 1 spec.
inline IncrementLaw1D law_1d(const WalkSpec& spec) {
  std::vector<double> v(static_cast<std::size_t>(spec.q));
  double s = 0.0;
  for (int j = 0; j < spec.q; ++j) s += v[static_cast<std::size_t>(j)] = increment_pmf(*spec.increment, {j});
  for (double& x : v) x /= s;
  return IncrementLaw1D(std::move(v));
}

/// Eigenvalue table: eta_r (d = 1), kappa_l (exchangeable), rho_r (otherwise)
/// or ghat(r) for a torus law.
inline void cmd_eigs(const WalkSpec& spec, const Options& opt, std::ostream& out) {
  detail::Table table;
  table.columns = {"index", "re", "im", "modulus"};
  Json extra = Json::object();
  if (spec.is_torus()) {
    extra["table"] = "ghat";
    for (int r = 0; r <= opt.rmax; ++r) table.rows.push_back(detail::eigen_row(std::to_string(r), spec.torus->ghat(r)));
  } else if (spec.d == 1) {
    extra["table"] = "eta";
    const auto eta = eigenvalues_1d(law_1d(spec));
    for (int r = 0; r < spec.q; ++r) table.rows.push_back(detail::eigen_row(std::to_string(r), eta.eta[static_cast<std::size_t>(r)]));
  } else if (spec.increment->is_exchangeable()) {
    extra["table"] = "kappa";
    table.columns = {"index", "order", "re", "im", "modulus"};
    const auto chain = spec.grouped_chain();
    for (std::size_t i = 0; i < chain.indices().size(); ++i) {
      auto row = detail::eigen_row(format_vector(chain.indices()[i].values()), chain.kappa()[i]);
      row.insert(row.begin() + 1, chain.indices()[i].order());
      table.rows.push_back(std::move(row));
    }
  } else {
    extra["table"] = "rho";
    const ProductSpectrum sp(*spec.increment);
    for (std::size_t i = 0; i < sp.size(); ++i) {
      table.rows.push_back(detail::eigen_row(format_vector(StatePoint::from_index(i, spec.q, spec.d).values()), sp[i]));
    }
  }
  detail::emit(out, spec, opt, table, extra);
}

/// (t, chi^2_t(m0), upper, lower); the bounds are filled in for the subset-toggle model.
inline void cmd_chisq(const WalkSpec& spec, const Options& opt, std::ostream& out) {
  detail::require(!spec.is_torus(), ErrorKind::kPrecondition, "chisq needs a lattice walk spec");
  detail::require(spec.increment->is_exchangeable(), ErrorKind::kPrecondition, "chisq needs an exchangeable increment");
  const auto chain = spec.grouped_chain();
  const CountVector m0 = opt.m0 ? CountVector(*opt.m0) : counts_of(spec.start_state().values(), spec.q);
  detail::require(m0.q() == spec.q && m0.d() == spec.d, ErrorKind::kShape, "m0 does not match (q, d)");
  std::optional<double> frac;
  if (spec.model == "subset-toggle") {
    const double f = spec.params.at("A").get<double>() / spec.d;
    if (f > 0.0 && f <= 0.5) frac = f;
  }
  const auto [t0, t1] = detail::time_range(opt, {0, 20});
  detail::Table table;
  table.columns = {"t", "chi2", "upper", "lower"};
  for (int t = t0; t <= t1; ++t) {
    Json up = nullptr;
    Json lo = nullptr;
    if (frac) {
      up = cutoff_upper_bound(spec.d, spec.q, *frac, t);
      lo = cutoff_lower_bound(spec.d, spec.q, *frac, t);
    }
    table.rows.push_back({t, chi_squared(chain, m0, t), up, lo});
  }
  Json extra{{"m0", m0.counts()}};
  if (frac) extra["t_cutoff"] = cutoff_time(spec.d, spec.q, *frac);
  detail::emit(out, spec, opt, table, extra);
}

/// Empirical end-state (or grouped-count) distribution after t steps, with
/// the spectral prediction and a z-score comparison when one is feasible.
inline void cmd_simulate(const WalkSpec& spec, const Options& opt, std::ostream& out) {
  detail::require(!spec.is_torus(), ErrorKind::kPrecondition, "simulate needs a lattice walk spec");
  const int t = opt.t.value_or(1);
  detail::require(t >= 0, ErrorKind::kValidation, "t must be >= 0");
  detail::require(opt.paths >= 1, ErrorKind::kValidation, "paths must be >= 1");
  const auto x0 = spec.start_state();
  const bool exch = spec.increment->is_exchangeable();
  bool small = true;
  try {
    checked_state_count(spec.q, spec.d, 1u << 12);
  } catch (const Error&) {
    small = false;
  }
  const bool grouped = exch && (opt.grouped || !small);
  detail::require(!opt.grouped || exch, ErrorKind::kPrecondition, "grouped outcomes need an exchangeable increment");

  const auto emp = simulate_paths(*spec.increment, x0, t, opt.paths, opt.seed,
                                  grouped ? OutcomeMode::kGroupedCounts : OutcomeMode::kEndState);
  std::optional<std::map<OutcomeKey, double>> expected;
  try {
    if (grouped) {
      const auto table = MvkTable::build(spec.q, spec.d);
      const auto chain = GroupedChain::from_increment(*spec.increment);
      const auto row = grouped_row_raw(chain, table, counts_of(x0.values(), spec.q), t);
      std::map<OutcomeKey, double> e;
      for (std::size_t i = 0; i < row.size(); ++i) e[table.states()[i].counts()] = row[i] > 1e-12 ? row[i] : 0.0;
      expected = std::move(e);
    } else if (small) {
      expected = end_state_table(ProductSpectrum(*spec.increment).kernel(t), x0);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kSize) throw;
  }

  detail::Table table;
  table.columns = {"outcome", "count", "frequency", "expected"};
  std::set<OutcomeKey> keys;
  for (const auto& [k, n] : emp.counts) keys.insert(k);
  if (expected) {
    for (const auto& [k, p] : *expected) {
      if (p > 0.0) keys.insert(k);
    }
  }
  for (const auto& k : keys) {
    auto it = emp.counts.find(k);
    Json e = nullptr;
    if (expected) e = expected->count(k) ? expected->at(k) : 0.0;
    table.rows.push_back({format_vector(k), it == emp.counts.end() ? 0LL : it->second, emp.frequency(k), e});
  }
  Json extra{{"t", t},
             {"paths", opt.paths},
             {"seed", opt.seed},
             {"outcomes", grouped ? "grouped-counts" : "end-state"}};
  if (expected) extra["comparison"] = report_to_json(compare(*expected, emp));
  detail::emit(out, spec, opt, table, extra);
}

/// Density grid b -> f_t(b | a) on b = i / grid.
inline void cmd_torus(const WalkSpec& spec, const Options& opt, std::ostream& out) {
  detail::require(spec.is_torus(), ErrorKind::kValidation, "torus needs a torus-law spec (model von-mises)");
  const int t = opt.t.value_or(1);
  detail::require(t >= 1, ErrorKind::kValidation, "t must be >= 1");
  detail::require(opt.grid >= 1, ErrorKind::kValidation, "grid must be >= 1");
  detail::require(opt.a >= 0.0 && opt.a < 1.0, ErrorKind::kValidation, "a must lie in [0,1)");
  const auto f = density_grid(*spec.torus, t, opt.a, opt.grid, opt.eps);
  detail::Table table;
  table.columns = {"b", "density"};
  double integral = 0.0;
  for (int i = 0; i < opt.grid; ++i) {
    table.rows.push_back({static_cast<double>(i) / opt.grid, f[static_cast<std::size_t>(i)]});
    integral += f[static_cast<std::size_t>(i)] / opt.grid;
  }
  detail::emit(out, spec, opt, table,
               {{"t", t}, {"a", opt.a}, {"eps", opt.eps}, {"radius", truncation_radius(*spec.torus, t, opt.eps)},
                {"integral", integral}});
}

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"eigs", "chisq", "simulate", "torus"};
  return names;
}

/// Run one command; errors propagate as zqwalk::Error.
inline void run(const std::string& command, const WalkSpec& spec, const Options& opt, std::ostream& out) {
  if (command == "eigs") return cmd_eigs(spec, opt, out);
  if (command == "chisq") return cmd_chisq(spec, opt, out);
  if (command == "simulate") return cmd_simulate(spec, opt, out);
  if (command == "torus") return cmd_torus(spec, opt, out);
  detail::fail(ErrorKind::kValidation, "unknown command \"" + command + "\"");
}

}  // namespace zqwalk::cli
