#pragma once

#include <string>
#include <string_view>

#include "subrayleigh/scan.hpp"

namespace subrayleigh {

/// Length in meters from "500nm", "20um", "1.5mm", "0.1m" (also "µm").
/// Throws ConfigError for a missing or unknown suffix.
double parse_length(std::string_view text);

/// Strict-schema JSON document to a validated config. Omitted fields take
/// the defaults of ScanConfig; scan_max defaults to 2 lambda r_z / a.
/// Throws ConfigError on parse errors (with line and column), unknown keys,
/// bad types and violated invariants.
ScanConfig parse_config(std::string_view text);

/// Reads and parses a config file. Missing file is an IoError.
ScanConfig load_config(const std::string& path);

/// Fully explicit config document, lengths in meters. parse_config of the
/// result reproduces the config exactly.
std::string config_to_json(const ScanConfig& config);

}  // namespace subrayleigh
