// SPDX-License-Identifier: Apache-2.0
#include "gaussggm/io.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace gaussggm::io {
namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw std::invalid_argument(std::string("JSON: missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("JSON: bad field '") + key + "': " + e.what());
  }
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> optional_number(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return field<double>(j, key);
}

}  // namespace

Json to_json(const Covariance& sigma) {
  const auto& m = sigma.matrix();
  Json flat = Json::array();
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) flat.push_back(m(r, c));
  return Json{{"n", sigma.modes()}, {"ordering", "qqpp"}, {"sigma", std::move(flat)}};
}

Covariance covariance_from_json(const Json& j) {
  const auto n = field<Index>(j, "n");
  if (n < 1) throw std::invalid_argument("covariance JSON: n must be >= 1");
  if (j.contains("ordering") && field<std::string>(j, "ordering") != "qqpp")
    throw std::invalid_argument("covariance JSON: only 'qqpp' ordering is supported");
  const auto flat = field<std::vector<double>>(j, "sigma");
  if (static_cast<Index>(flat.size()) != 4 * n * n)
    throw std::invalid_argument("covariance JSON: expected " + std::to_string(4 * n * n) +
                                " entries, got " + std::to_string(flat.size()));
  Eigen::MatrixXd m(2 * n, 2 * n);
  for (Index r = 0; r < 2 * n; ++r)
    for (Index c = 0; c < 2 * n; ++c) m(r, c) = flat[static_cast<std::size_t>(r * 2 * n + c)];
  return Covariance(std::move(m));
}

Json to_json(const RandomStateSpec& spec) {
  Json gamma = std::holds_alternative<UniformGamma>(spec.gamma)
                   ? Json("uniform")
                   : Json(std::get<std::vector<double>>(spec.gamma));
  return Json{{"n", spec.n}, {"nu_bar", spec.nu_bar}, {"seed", spec.seed}, {"gamma", gamma}};
}

RandomStateSpec state_spec_from_json(const Json& j) {
  RandomStateSpec spec;
  spec.n = field<Index>(j, "n");
  spec.nu_bar = field<double>(j, "nu_bar");
  if (j.contains("seed")) spec.seed = field<std::uint64_t>(j, "seed");
  if (j.contains("gamma")) {
    const auto& g = j.at("gamma");
    if (g.is_string()) {
      if (g.get<std::string>() != "uniform")
        throw std::invalid_argument("state spec JSON: gamma must be 'uniform' or a list");
      spec.gamma = UniformGamma{};
    } else {
      spec.gamma = field<std::vector<double>>(j, "gamma");
    }
  }
  spec.validate();
  return spec;
}

Json to_json(const GgmResult& result) {
  return Json{{"ggm", result.value},
              {"lambda_max", result.lambda_max},
              {"argmax_modes", result.argmax_subset.indices()},
              {"argmax_spectrum", result.argmax_spectrum}};
}

GgmResult ggm_result_from_json(const Json& j) {
  auto modes = field<std::vector<Index>>(j, "argmax_modes");
  const Index ambient = modes.empty() ? 1 : *std::max_element(modes.begin(), modes.end());
  GgmResult r{field<double>(j, "ggm"), field<double>(j, "lambda_max"),
              ModeSubset(ambient, std::move(modes)),
              field<std::vector<double>>(j, "argmax_spectrum")};
  return r;
}

Json to_json(const Histogram& h) {
  return Json{{"bin_width", h.bin_width()},
              {"right_edges", h.right_edges()},
              {"counts", h.counts()},
              {"fractions", h.fractions()}};
}

Histogram histogram_from_json(const Json& j) {
  return Histogram::from_counts(field<double>(j, "bin_width"),
                                field<std::vector<std::uint64_t>>(j, "counts"));
}

Json to_json(const EnsembleStats& s) {
  return Json{{"n", s.n},
              {"nu_bar", s.nu_bar},
              {"samples", s.samples},
              {"mean", s.mean},
              {"stddev", s.stddev},
              {"standard_error", s.standard_error()},
              {"raw_moments", {{"sum", s.sum}, {"sum_sq", s.sum_sq}}},
              {"histogram", to_json(s.histogram)}};
}

EnsembleStats ensemble_stats_from_json(const Json& j) {
  EnsembleStats s;
  s.n = field<Index>(j, "n");
  s.nu_bar = field<double>(j, "nu_bar");
  s.samples = field<std::uint64_t>(j, "samples");
  s.mean = field<double>(j, "mean");
  s.stddev = field<double>(j, "stddev");
  const Json moments = field<Json>(j, "raw_moments");
  s.sum = field<double>(moments, "sum");
  s.sum_sq = field<double>(moments, "sum_sq");
  s.histogram = histogram_from_json(field<Json>(j, "histogram"));
  return s;
}

Json to_json(const TailEstimate& t) {
  return Json{{"n", t.n},
              {"samples", t.samples},
              {"reference", t.reference},
              {"epsilon_grid", t.epsilon_grid},
              {"probabilities", t.probabilities},
              {"fitted_c", optional_number(t.fitted_c)},
              {"fitted_intercept", optional_number(t.fitted_intercept)}};
}

TailEstimate tail_estimate_from_json(const Json& j) {
  TailEstimate t;
  t.n = field<Index>(j, "n");
  t.samples = field<std::uint64_t>(j, "samples");
  t.reference = field<double>(j, "reference");
  t.epsilon_grid = field<std::vector<double>>(j, "epsilon_grid");
  t.probabilities = field<std::vector<double>>(j, "probabilities");
  if (t.epsilon_grid.size() != t.probabilities.size())
    throw std::invalid_argument("tail JSON: grid and probabilities differ in length");
  t.fitted_c = optional_number(j, "fitted_c");
  t.fitted_intercept = optional_number(j, "fitted_intercept");
  return t;
}

Json to_json(const GammaEquivalenceReport& r) {
  return Json{{"n", r.n},
              {"nu_bar", r.nu_bar},
              {"samples", r.samples},
              {"ks_statistic", r.ks_statistic},
              {"critical_value", r.critical_value},
              {"alpha", r.alpha},
              {"mean_a", r.mean_a},
              {"mean_b", r.mean_b},
              {"stddev_a", r.stddev_a},
              {"stddev_b", r.stddev_b},
              {"verdict", r.equivalent ? "indistinguishable" : "different"}};
}

Json to_json(const ConcentrationSummary& s) {
  return Json{{"n", s.n},
              {"nu_bar", s.nu_bar},
              {"k", s.k},
              {"samples", s.samples},
              {"mean_deviation", s.mean_deviation},
              {"stddev_deviation", s.stddev_deviation}};
}

std::string histogram_csv(const Histogram& h) {
  std::string out = "bin_right_edge,fraction\n";
  const auto edges = h.right_edges();
  const auto fractions = h.fractions();
  char line[64];
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", edges[i], fractions[i]);
    out += line;
  }
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("JSON parse error: ") + e.what());
  }
}

}  // namespace gaussggm::io
