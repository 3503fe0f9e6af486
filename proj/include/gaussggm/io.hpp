// SPDX-License-Identifier: Apache-2.0
//
// JSON and CSV formats.
//
//   covariance   { "n": int, "ordering": "qqpp", "sigma": [4n^2 doubles, row-major] }
//   state spec   { "n": int, "nu_bar": double, "seed": uint64, "gamma": "uniform" | [z...] }
//   ggm result   { "ggm", "lambda_max", "argmax_modes" (1-based), "argmax_spectrum" }
//   histogram    CSV "bin_right_edge,fraction", one row per bin
//
// Doubles are written with the shortest decimal form that parses back to the
// same bits, so every file round-trips exactly.
#pragma once

#include <string>

#include "json.hpp"

#include "gaussggm/ggm.hpp"
#include "gaussggm/haar.hpp"
#include "gaussggm/montecarlo.hpp"

namespace gaussggm::io {

using Json = nlohmann::ordered_json;

Json to_json(const Covariance& sigma);
Covariance covariance_from_json(const Json& j);

Json to_json(const RandomStateSpec& spec);
RandomStateSpec state_spec_from_json(const Json& j);

Json to_json(const GgmResult& result);
GgmResult ggm_result_from_json(const Json& j);

Json to_json(const Histogram& histogram);
Histogram histogram_from_json(const Json& j);

Json to_json(const EnsembleStats& stats);
EnsembleStats ensemble_stats_from_json(const Json& j);

Json to_json(const TailEstimate& tail);
TailEstimate tail_estimate_from_json(const Json& j);

Json to_json(const GammaEquivalenceReport& report);
Json to_json(const ConcentrationSummary& summary);

/// Two-column CSV with header, doubles at 17 significant digits.
std::string histogram_csv(const Histogram& histogram);

/// Indented JSON text with trailing newline.
std::string dump(const Json& j);
Json parse(const std::string& text);

}  // namespace gaussggm::io
