// subrayleigh: scan, oracle and report subcommands.
//
// Exit codes: 0 ok, 1 unexpected failure, 2 config or usage error,
// 3 numerical error, 4 I/O error.

#include <algorithm>
#include <iostream>
#include <map>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "subrayleigh/config.hpp"
#include "subrayleigh/errors.hpp"
#include "subrayleigh/io.hpp"
#include "subrayleigh/scan.hpp"

namespace {

namespace sr = subrayleigh;

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kNumericalError = 3,
  kIoError = 4,
};

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    sr::write_file(path, text);
  }
}

int run_scan_command(const std::string& config_path, std::string output,
                     sr::OutputFormat format, unsigned workers) {
  const auto config = sr::load_config(config_path);
  if (output.empty()) {
    output = config.output_path;
  }
  const auto result = sr::run_scan(config, workers);
  sr::emit(result, format, output);
  if (!output.empty()) {
    std::cerr << sr::report_to_json(result);
  }
  return kOk;
}

int run_oracle_command(const std::string& config_path,
                       const std::string& output) {
  auto config = sr::load_config(config_path);
  if (!config.oracle) {
    config.oracle = sr::OracleSettings{};
  }
  const auto report = sr::run_oracle_check(config);
  write_or_print(output, sr::oracle_report_to_json(report));
  return kOk;
}

int run_report_command(const std::string& input, const std::string& output) {
  auto result = sr::result_from_json(sr::read_file(input));
  sr::analyse_result(result);
  write_or_print(output, sr::report_to_json(result));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sub-Rayleigh correlation scans and diffraction oracles"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output;
  std::string input;
  sr::OutputFormat format = sr::OutputFormat::Csv;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());

  const std::map<std::string, sr::OutputFormat> formats{
      {"csv", sr::OutputFormat::Csv}, {"json", sr::OutputFormat::Json}};

  auto* scan = app.add_subcommand("scan", "Run a scan and write its signal");
  scan->add_option("--config", config_path, "Config document")->required();
  scan->add_option("--output", output,
                   "Output file (default: config output_path, else stdout)");
  scan->add_option("--format", format, "Output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  scan->add_option("--workers", workers, "Worker threads")
      ->check(CLI::PositiveNumber);

  auto* oracle = app.add_subcommand(
      "oracle", "Compare far-field and quadrature fields on the scan grid");
  oracle->add_option("--config", config_path, "Config document")->required();
  oracle->add_option("--output", output, "Report file (default: stdout)");

  auto* report = app.add_subcommand(
      "report", "Re-analyse a JSON scan result and print its fringe report");
  report->add_option("--input", input, "JSON result written by scan")
      ->required();
  report->add_option("--output", output, "Report file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*scan) {
      return run_scan_command(config_path, output, format, workers);
    }
    if (*oracle) {
      return run_oracle_command(config_path, output);
    }
    return run_report_command(input, output);
  } catch (const sr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const sr::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const sr::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}
