#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "ellvol/estimate.hpp"
#include "ellvol/select.hpp"

namespace ellvol {

inline constexpr const char* kToolName = "ellvol";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

/// Provenance of the series a fit was run on.
struct InputMeta {
  std::string path;
  std::string digest;  // fnv1a-64 of the raw input bytes, hex
  long observations = 0;
};

/// Canonical model identifier, e.g. "kotz(Q=est)-arch(1)-ar2-ind".
std::string model_id(const MeanSpec& mean, const VolSpec& vol, const LawConfig& law,
                     LikelihoodKind kind);

/// FNV-1a 64-bit digest of a file's bytes, as 16 hex characters.
std::string file_digest(const std::string& path);

nlohmann::json fit_report_json(const FitResult& result,
                               const std::optional<InputMeta>& input = std::nullopt);

/// Inverse of fit_report_json; numeric fields round-trip bit-exactly.
FitResult fit_result_from_json(const nlohmann::json& doc);

nlohmann::json comparison_report_json(const ComparisonReport& report);

void write_json_file(const std::string& path, const nlohmann::json& doc);
nlohmann::json read_json_file(const std::string& path);

}  // namespace ellvol
