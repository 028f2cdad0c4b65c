#pragma once

// JSON and CSV renderings of estimates and harness reports.

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mink/estimate.hpp"
#include "mink/invariance.hpp"

namespace mink {

/// Finite doubles as numbers; infinities and NaN as the strings "inf", "-inf", "nan".
nlohmann::json json_number(double x);

nlohmann::json to_json(const DimensionFit& fit, bool with_trace = true);
nlohmann::json to_json(const ContentEstimate& est, bool with_trace = true);
nlohmann::json to_json(const EpsSchedule& sched);
nlohmann::json to_json(const ChainCheck& chain);
nlohmann::json to_json(const GammaRatio& g);
nlohmann::json to_json(const EmbeddingReport& rep);
nlohmann::json to_json(const SandwichReport& rep);
nlohmann::json to_json(const AmbientBoundsReport& rep);
nlohmann::json to_json(const ProductReport& rep);
nlohmann::json to_json(const ExtremalityReport& rep);

/// "eps,value" header then one row per pair, 17 significant digits.
void write_trace_csv(std::ostream& out, const std::vector<std::pair<double, double>>& rows);
std::string format_double(double x);

}  // namespace mink
