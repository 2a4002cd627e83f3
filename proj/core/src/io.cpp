#include "subrayleigh/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "subrayleigh/config.hpp"
#include "subrayleigh/errors.hpp"

namespace subrayleigh {

using nlohmann::json;

namespace {

std::string format_number(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

json signal_to_json(const SampledSignal& s) {
  return {{"r_m", s.coordinates()}, {"values", s.values()}};
}

json fringe_to_json(const FringeReport& r) {
  return {{"dominant_frequency", r.dominant_frequency},
          {"zero_count", r.zero_count},
          {"visibility", r.visibility}};
}

json optional_fringe(const std::optional<FringeReport>& r) {
  return r ? fringe_to_json(*r) : json(nullptr);
}

json optional_number(const std::optional<double>& x) {
  return x ? json(*x) : json(nullptr);
}

SampledSignal signal_from_json(const json& v) {
  return SampledSignal(v.at("r_m").get<std::vector<double>>(),
                       v.at("values").get<std::vector<double>>());
}

FringeReport fringe_from_json(const json& v) {
  FringeReport r;
  r.dominant_frequency = v.at("dominant_frequency").get<double>();
  r.zero_count = v.at("zero_count").get<int>();
  r.visibility = v.at("visibility").get<double>();
  return r;
}

EnvelopeKind envelope_from_string(const std::string& name) {
  for (auto kind : {EnvelopeKind::None, EnvelopeKind::InverseSquare,
                    EnvelopeKind::PairPlus, EnvelopeKind::PairMinusExact,
                    EnvelopeKind::SingleSlit, EnvelopeKind::SingleSlitPair}) {
    if (to_string(kind) == name) {
      return kind;
    }
  }
  throw ConfigError("unknown envelope \"" + name + "\"");
}

json metadata_to_json(const ScanMetadata& m) {
  return {{"wavenumber", m.wavenumber},
          {"source_offset", m.source_offset},
          {"detector_offset", m.detector_offset},
          {"validity_margin", m.validity_margin},
          {"excluded", m.excluded},
          {"envelope", std::string(to_string(m.envelope))},
          {"classical_envelope", std::string(to_string(m.classical_envelope))}};
}

ScanMetadata metadata_from_json(const json& v) {
  ScanMetadata m;
  m.wavenumber = v.at("wavenumber").get<double>();
  m.source_offset = v.at("source_offset").get<double>();
  m.detector_offset = v.at("detector_offset").get<double>();
  m.validity_margin = v.at("validity_margin").get<double>();
  m.excluded = v.at("excluded").get<std::vector<double>>();
  m.envelope = envelope_from_string(v.at("envelope").get<std::string>());
  m.classical_envelope =
      envelope_from_string(v.at("classical_envelope").get<std::string>());
  return m;
}

double parse_csv_number(std::string_view field, std::size_t line) {
  const std::string text(field);
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
    throw ConfigError("bad number \"" + text + "\" on CSV line " +
                      std::to_string(line));
  }
  return x;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

constexpr std::string_view kCsvHeader = "r_m,signal,classical";
constexpr std::string_view kExcludedPrefix = "# excluded:";

}  // namespace

std::string to_csv(const ScanResult& result) {
  std::string out;
  if (!result.metadata.excluded.empty()) {
    out += kExcludedPrefix;
    for (std::size_t i = 0; i < result.metadata.excluded.size(); ++i) {
      out += i == 0 ? " " : ", ";
      out += format_number(result.metadata.excluded[i]);
    }
    out += '\n';
  }
  out += kCsvHeader;
  out += '\n';
  const auto& r = result.signal.coordinates();
  const auto& v = result.signal.values();
  for (std::size_t i = 0; i < r.size(); ++i) {
    out += format_number(r[i]);
    out += ',';
    out += format_number(v[i]);
    out += ',';
    if (result.classical_reference) {
      out += format_number(result.classical_reference->values()[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const ScanResult& result) {
  json doc;
  doc["config"] = json::parse(config_to_json(result.config));
  doc["metadata"] = metadata_to_json(result.metadata);
  doc["signal"] = signal_to_json(result.signal);
  doc["classical"] = result.classical_reference
                         ? signal_to_json(*result.classical_reference)
                         : json(nullptr);
  doc["report"] = fringe_to_json(result.report);
  doc["classical_report"] = optional_fringe(result.classical_report);
  doc["frequency_ratio"] = optional_number(result.frequency_ratio());
  return doc.dump(2) + "\n";
}

ScanResult result_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("result document: ") + e.what());
  }
  try {
    ScanResult result{
        .config = parse_config(doc.at("config").dump()),
        .signal = signal_from_json(doc.at("signal")),
        .report = fringe_from_json(doc.at("report")),
        .classical_reference = std::nullopt,
        .classical_report = std::nullopt,
        .metadata = metadata_from_json(doc.at("metadata")),
    };
    if (!doc.at("classical").is_null()) {
      result.classical_reference = signal_from_json(doc["classical"]);
    }
    if (!doc.at("classical_report").is_null()) {
      result.classical_report = fringe_from_json(doc["classical_report"]);
    }
    return result;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("result document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("result document: ") + e.what());
  }
}

CsvSignals signals_from_csv(std::string_view text) {
  std::vector<double> excluded;
  std::vector<double> r, signal, classical;
  bool header_seen = false;
  bool has_classical = true;
  std::size_t line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '#') {
      if (line.starts_with(kExcludedPrefix)) {
        for (auto field : split(line.substr(kExcludedPrefix.size()), ',')) {
          excluded.push_back(parse_csv_number(trim(field), line_no));
        }
      }
      continue;
    }
    if (!header_seen) {
      if (line != kCsvHeader) {
        throw ConfigError("CSV header must be \"" + std::string(kCsvHeader) +
                          "\"");
      }
      header_seen = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 3) {
      throw ConfigError("CSV line " + std::to_string(line_no) +
                        " needs 3 fields");
    }
    r.push_back(parse_csv_number(trim(fields[0]), line_no));
    signal.push_back(parse_csv_number(trim(fields[1]), line_no));
    if (trim(fields[2]).empty()) {
      has_classical = false;
    } else {
      classical.push_back(parse_csv_number(trim(fields[2]), line_no));
    }
  }
  if (!header_seen) {
    throw ConfigError("CSV has no header line");
  }
  try {
    CsvSignals out{.signal = SampledSignal(r, std::move(signal)),
                   .classical = std::nullopt,
                   .excluded = std::move(excluded)};
    if (has_classical) {
      out.classical = SampledSignal(std::move(r), std::move(classical));
    }
    return out;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("CSV signal: ") + e.what());
  }
}

std::string report_to_json(const ScanResult& result) {
  json doc = {
      {"scenario", std::string(to_string(result.config.scenario))},
      {"samples", result.signal.size()},
      {"envelope", std::string(to_string(result.metadata.envelope))},
      {"excluded", result.metadata.excluded},
      {"report", fringe_to_json(result.report)},
      {"classical_report", optional_fringe(result.classical_report)},
      {"frequency_ratio", optional_number(result.frequency_ratio())},
      {"validity_margin", result.metadata.validity_margin},
  };
  return doc.dump(2) + "\n";
}

std::string oracle_report_to_json(const OracleReport& r) {
  json doc = {
      {"sample_count", r.sample_count},
      {"max_relative_error", r.max_relative_error},
      {"max_pointwise_error", r.max_pointwise_error},
      {"max_phase_error", r.max_phase_error},
      {"max_self_change", r.max_self_change},
      {"validity_margin", r.validity_margin},
      {"normalization", r.normalization},
      {"fraunhofer_regime", r.fraunhofer_regime},
      {"agrees", r.agrees},
  };
  return doc.dump(2) + "\n";
}

void emit(const ScanResult& result, OutputFormat format,
          const std::string& path) {
  const std::string text =
      format == OutputFormat::Csv ? to_csv(result) : to_json(result);
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) {
      throw IoError("cannot write to stdout");
    }
    return;
  }
  write_file(path, text);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path + "': " + std::strerror(errno));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw IoError("cannot read '" + path + "'");
  }
  return buffer.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing: " +
                  std::strerror(errno));
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) {
    throw IoError("cannot write '" + path + "'");
  }
}

}  // namespace subrayleigh
