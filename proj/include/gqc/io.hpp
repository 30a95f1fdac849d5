#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "gqc/covariance.hpp"
#include "gqc/discord.hpp"
#include "gqc/entanglement.hpp"

namespace gqc {

/// Shortest decimal that round-trips the double exactly (std::to_chars).
std::string format_double(double v);

/// {"n_modes": n, "entries": [[...], ...]} with row-major 2n x 2n entries.
/// Reading also accepts a flat row-major array of length (2n)^2.
nlohmann::json cm_to_json(const CovarianceMatrix& cm);
CovarianceMatrix cm_from_json(const nlohmann::json& j);

/// CSV variant: one matrix row per line, shortest round-trip decimals,
/// n_modes inferred from the row count.
void cm_to_csv(const CovarianceMatrix& cm, std::ostream& out);
CovarianceMatrix cm_from_csv(std::istream& in);

/// Loads a CM from a file, dispatching on content (json object vs csv).
CovarianceMatrix cm_from_file(const std::string& path);

nlohmann::json report_to_json(const CorrelationReport& report);
nlohmann::json measurement_to_json(const MeasurementSpec& meas);
nlohmann::json geof_to_json(const GeofResult& result);

}  // namespace gqc
