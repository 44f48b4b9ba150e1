#pragma once

// Walk-spec documents ("zqwalk-spec/1") and JSON forms of increment laws.

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "zqwalk/circulant.hpp"
#include "zqwalk/grouped.hpp"
#include "zqwalk/product_chain.hpp"
#include "zqwalk/torus.hpp"

namespace zqwalk {

inline constexpr const char* kSpecSchema = "zqwalk-spec/1";

using Json = nlohmann::json;

namespace detail {

template <class T>
T get_field(const Json& j, const char* key) {
  require(j.is_object() && j.contains(key), ErrorKind::kValidation, std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorKind::kValidation, std::string("field \"") + key + "\" has the wrong type");
  }
}

template <class T>
T get_field_or(const Json& j, const char* key, T fallback) {
  return j.contains(key) ? get_field<T>(j, key) : fallback;
}

}  // namespace detail

inline Json increment_to_json(const IncrementDist& incr) {
  return std::visit(
      [&](const auto& law) -> Json {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, ExplicitLaw>) {
          Json support = Json::array();
          for (std::size_t i = 0; i < law.points.size(); ++i) support.push_back({{"point", law.points[i]}, {"p", law.probs[i]}});
          return {{"type", "explicit"}, {"q", law.q}, {"d", law.d}, {"support", support}};
        } else if constexpr (std::is_same_v<T, IIDProductLaw>) {
          Json marg = Json::array();
          for (const auto& m : law.marginals) marg.push_back(m.probs());
          return {{"type", "iid"}, {"q", incr.q()}, {"marginals", marg}};
        } else if constexpr (std::is_same_v<T, ExchangeableLaw>) {
          Json entries = Json::array();
          for (std::size_t i = 0; i < law.counts.size(); ++i) {
            entries.push_back({{"counts", law.counts[i].counts()}, {"p", law.probs[i]}});
          }
          return {{"type", "exchangeable"}, {"q", law.q}, {"d", law.d}, {"law", entries}};
        } else {
          Json comps = Json::array();
          for (std::size_t i = 0; i < law.components.size(); ++i) {
            comps.push_back({{"weight", law.weights[i]}, {"dist", increment_to_json(law.components[i])}});
          }
          return {{"type", "mixture"}, {"components", comps}};
        }
      },
      incr.law());
}

inline IncrementDist increment_from_json(const Json& j) {
  const auto type = detail::get_field<std::string>(j, "type");
  if (type == "explicit") {
    const int q = detail::get_field<int>(j, "q");
    const int d = detail::get_field<int>(j, "d");
    std::vector<std::vector<int>> pts;
    std::vector<double> probs;
    for (const auto& e : detail::get_field<Json>(j, "support")) {
      pts.push_back(detail::get_field<std::vector<int>>(e, "point"));
      probs.push_back(detail::get_field<double>(e, "p"));
    }
    return IncrementDist::explicit_law(q, d, std::move(pts), std::move(probs));
  }
  if (type == "iid") {
    std::vector<IncrementLaw1D> marg;
    for (const auto& m : detail::get_field<Json>(j, "marginals")) {
      try {
        marg.emplace_back(m.get<std::vector<double>>());
      } catch (const nlohmann::json::exception&) {
        detail::fail(ErrorKind::kValidation, "marginal must be an array of probabilities");
      }
    }
    if (j.contains("q") && !marg.empty()) {
      detail::require(detail::get_field<int>(j, "q") == marg.front().q(), ErrorKind::kShape, "marginals disagree with q");
    }
    return IncrementDist::iid(std::move(marg));
  }
  if (type == "exchangeable") {
    std::vector<CountVector> counts;
    std::vector<double> probs;
    for (const auto& e : detail::get_field<Json>(j, "law")) {
      counts.emplace_back(detail::get_field<std::vector<int>>(e, "counts"));
      probs.push_back(detail::get_field<double>(e, "p"));
    }
    detail::require(!counts.empty(), ErrorKind::kValidation, "exchangeable law is empty");
    if (j.contains("q")) {
      detail::require(detail::get_field<int>(j, "q") == counts.front().q(), ErrorKind::kShape, "counts disagree with q");
    }
    if (j.contains("d")) {
      detail::require(detail::get_field<int>(j, "d") == counts.front().d(), ErrorKind::kShape, "counts disagree with d");
    }
    return IncrementDist::exchangeable(std::move(counts), std::move(probs));
  }
  if (type == "mixture") {
    std::vector<double> w;
    std::vector<IncrementDist> comps;
    for (const auto& e : detail::get_field<Json>(j, "components")) {
      w.push_back(detail::get_field<double>(e, "weight"));
      comps.push_back(increment_from_json(detail::get_field<Json>(e, "dist")));
    }
    return IncrementDist::mixture(std::move(w), std::move(comps));
  }
  detail::fail(ErrorKind::kValidation, "unknown increment type \"" + type + "\"");
}

/// A parsed walk-spec: either an explicit increment or a named model.
struct WalkSpec {
  int q = 2;
  int d = 1;
  std::optional<IncrementDist> increment;
  /// Named-model shortcut and its parameters, if one was used.
  std::string model;
  Json params = Json::object();
  std::optional<TorusLaw> torus;
  std::optional<std::vector<int>> start;

  bool is_torus() const { return torus.has_value(); }

  /// The grouped chain: the closed-form model chain when one exists,
  /// otherwise kappa computed from the exchangeable increment.
  GroupedChain grouped_chain() const {
    detail::require(!is_torus(), ErrorKind::kPrecondition, "torus specs have no grouped chain");
    if (model == "subset-toggle") return subset_toggle_chain(d, q, params.at("A").get<int>());
    if (model == "left-shift") return left_shift_chain(d, q);
    if (model == "neighbor") return neighbor_chain(d, q);
    if (model == "hamming") return HammingModel(q, params.at("qh").get<std::vector<double>>()).chain();
    return GroupedChain::from_increment(*increment);
  }

  StatePoint start_state() const {
    return start ? StatePoint(*start, q) : StatePoint::zero(d, q);
  }

  /// Normalized document with every default filled in.
  Json resolved() const {
    Json j{{"schema", kSpecSchema}};
    if (!is_torus()) {
      j["q"] = q;
      j["d"] = d;
    }
    if (!model.empty()) {
      Json m = params;
      m["name"] = model;
      j["model"] = m;
    } else {
      j["increment"] = increment_to_json(*increment);
    }
    if (start) j["start"] = *start;
    return j;
  }
};

namespace detail {

inline IncrementLaw1D shortcut_law_1d(const std::string& name, int q, Json& params) {
  if (name == "shift") {
    const int step = get_field_or<int>(params, "step", 1);
    params["step"] = step;
    return IncrementLaw1D::point_mass(q, step);
  }
  if (name == "lazy") return IncrementLaw1D::lazy(q, get_field<double>(params, "gamma"));
  if (name == "uniform") return IncrementLaw1D::uniform(q);
  if (name == "mixture") {
    const double beta = get_field<double>(params, "beta");
    const double gamma = get_field<double>(params, "gamma");
    require(beta >= 0 && beta <= 1 && gamma >= 0 && gamma <= 1, ErrorKind::kParameter, "need beta, gamma in [0,1]");
    // unit jumps with probability beta*gamma, otherwise uniform
    std::vector<double> v(static_cast<std::size_t>(q), (1.0 - beta * gamma) / q);
    v[1] += beta * gamma / 2;
    v[static_cast<std::size_t>(q - 1)] += beta * gamma / 2;
    return IncrementLaw1D(std::move(v));
  }
  // symmetric
  IncrementLaw1D law(get_field<std::vector<double>>(params, "v"));
  require(law.q() == q, ErrorKind::kShape, "symmetric law needs q entries");
  require(law.is_symmetric(), ErrorKind::kValidation, "law is not symmetric (v_j != v_{q-j})");
  return law;
}

}  // namespace detail

inline WalkSpec parse_walk_spec(const Json& j) {
  detail::require(j.is_object(), ErrorKind::kValidation, "walk spec must be a JSON object");
  const auto schema = detail::get_field<std::string>(j, "schema");
  detail::require(schema == kSpecSchema, ErrorKind::kValidation, "unsupported schema \"" + schema + "\"");
  const bool has_inc = j.contains("increment");
  const bool has_model = j.contains("model");
  detail::require(has_inc != has_model, ErrorKind::kValidation, "spec needs exactly one of \"increment\" or \"model\"");

  WalkSpec spec;
  if (has_inc) {
    spec.increment = increment_from_json(j.at("increment"));
    spec.q = spec.increment->q();
    spec.d = spec.increment->d();
    if (j.contains("q")) detail::require(detail::get_field<int>(j, "q") == spec.q, ErrorKind::kShape, "q disagrees with increment");
    if (j.contains("d")) detail::require(detail::get_field<int>(j, "d") == spec.d, ErrorKind::kShape, "d disagrees with increment");
  } else {
    const Json& m = j.at("model");
    spec.model = detail::get_field<std::string>(m, "name");
    spec.params = m;
    spec.params.erase("name");
    if (spec.model == "von-mises") {
      const double k = detail::get_field<double>(m, "k");
      spec.torus = TorusLaw::von_mises(k);
      return spec;
    }
    spec.q = detail::get_field<int>(j, "q");
    spec.d = detail::get_field<int>(j, "d");
    check_modulus(spec.q);
    detail::require(spec.d >= 1, ErrorKind::kParameter, "d must be >= 1");
    const auto& name = spec.model;
    if (name == "shift" || name == "lazy" || name == "uniform" || name == "mixture" || name == "symmetric") {
      spec.increment = IncrementDist::iid(detail::shortcut_law_1d(name, spec.q, spec.params), spec.d);
    } else if (name == "subset-toggle") {
      const int A = detail::get_field<int>(m, "A");
      detail::require(A >= 0 && A <= spec.d, ErrorKind::kParameter, "need 0 <= A <= d");
      std::vector<double> qh(static_cast<std::size_t>(spec.d + 1), 0.0);
      qh[static_cast<std::size_t>(A)] = 1.0;
      spec.increment = HammingModel(spec.q, qh).increment();
    } else if (name == "neighbor") {
      spec.increment = neighbor_increment(spec.d, spec.q);
    } else if (name == "left-shift") {
      spec.increment = left_shift_increment(spec.d, spec.q);
    } else if (name == "hamming") {
      const auto qh = detail::get_field<std::vector<double>>(m, "qh");
      detail::require(static_cast<int>(qh.size()) == spec.d + 1, ErrorKind::kShape, "qh needs d+1 entries");
      spec.increment = HammingModel(spec.q, qh).increment();
    } else {
      detail::fail(ErrorKind::kValidation, "unknown model \"" + name + "\"");
    }
  }
  if (j.contains("start")) {
    auto s = detail::get_field<std::vector<int>>(j, "start");
    detail::require(static_cast<int>(s.size()) == spec.d, ErrorKind::kShape, "start state has wrong dimension");
    StatePoint check(s, spec.q);
    spec.start = std::move(s);
  }
  return spec;
}

inline WalkSpec parse_walk_spec(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    detail::fail(ErrorKind::kValidation, std::string("walk spec is not valid JSON: ") + e.what());
  }
  return parse_walk_spec(j);
}

inline WalkSpec parse_walk_spec(const char* text) { return parse_walk_spec(std::string(text)); }

}  // namespace zqwalk
