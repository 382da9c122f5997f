#pragma once

// Subcommand bodies for yamabe_lab; the executable only parses arguments.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "yamabe/catalog.hpp"
#include "yamabe/spectrum.hpp"
#include "yamabe/verify.hpp"

namespace yamabe::cli {

enum class Format { json, csv };

/// Throws std::invalid_argument for anything but "json" or "csv".
Format parse_format(const std::string& s);

/// One line of a bound report.
struct ReportRow {
  std::string name;
  ClosedForm lower;
  ClosedForm upper;
  bool exact = false;
  std::string provenance;
};

struct BoundsRequest {
  std::optional<int> k;
  std::optional<int> m;
  std::optional<std::string> name;
};

/// Rows for --name, for --k/--m (m defaults to 0), or the full k = 1..3,
/// m = 0..5 table when neither is given. Throws std::out_of_range listing the
/// catalogue for an unknown name.
std::vector<ReportRow> cmd_bounds(const BoundsRequest& req);

std::string render_bounds(const std::vector<ReportRow>& rows, Format format);

struct SpectrumOutput {
  nlohmann::json summary;  // {lambda, sign, residual, N}
  spectrum::NormalizedMetric metric;
};

/// Config keys: N, u, f (expressions), route ("covariance" or "direct") and
/// any SolverConfig field. Errors name the offending key.
SpectrumOutput cmd_spectrum(const nlohmann::json& config);

/// Parses a JSON config file; syntax errors report line and column.
nlohmann::json load_config(const std::string& path);

std::string render_spectrum(const nlohmann::json& summary, Format format);

verify::Report cmd_verify(const std::string& suite, int jobs = 1);

std::string render_verify(const verify::Report& report, Format format);

/// printf("%.12g").
std::string format_number(double x);

/// x rounded to 12 significant digits, for JSON emission.
double round12(double x);

}  // namespace yamabe::cli
