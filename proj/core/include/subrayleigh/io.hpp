#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subrayleigh/analysis.hpp"
#include "subrayleigh/scan.hpp"

namespace subrayleigh {

enum class OutputFormat { Csv, Json };

/// "r_m,signal,classical" rows, 17 significant digits; a leading
/// "# excluded: ..." comment lists dropped singular coordinates.
std::string to_csv(const ScanResult& result);

/// Full result: config, metadata, both signals and reports.
std::string to_json(const ScanResult& result);

/// Writes to path, or to stdout when path is empty. IoError on failure.
void emit(const ScanResult& result, OutputFormat format,
          const std::string& path);

/// Rebuilds a result from to_json output. Signals are bit-identical.
ScanResult result_from_json(std::string_view text);

struct CsvSignals {
  SampledSignal signal;
  std::optional<SampledSignal> classical;
  std::vector<double> excluded;
};

CsvSignals signals_from_csv(std::string_view text);

std::string report_to_json(const ScanResult& result);
std::string oracle_report_to_json(const OracleReport& report);

/// Whole file as a string; IoError with the path on failure.
std::string read_file(const std::string& path);
/// IoError with the path on failure.
void write_file(const std::string& path, std::string_view contents);

}  // namespace subrayleigh
