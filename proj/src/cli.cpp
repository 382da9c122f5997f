#include "yamabe/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <stdexcept>

#include "yamabe/expr.hpp"

namespace yamabe::cli {

namespace {

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string sum_name(int k, int m) {
  std::string name = (k == 1 ? "" : std::to_string(k)) + "CP2";
  if (m > 0) name += " # " + (m == 1 ? std::string() : std::to_string(m)) + "(S1xS3)";
  return name;
}

ReportRow sum_row(int k, int m) {
  const catalog::Interval b = catalog::cp2_sum_bounds(k, m);
  return {sum_name(k, m), b.lo, b.hi, b.exact(),
          "connected-sum lower bound from the Fubini-Study quotient; characteristic class eta^2 = " +
              std::to_string(8 + k) + " upper bound"};
}

nlohmann::json row_json(const ReportRow& r) {
  return {{"name", r.name},
          {"lower", round12(r.lower.value())},
          {"upper", round12(r.upper.value())},
          {"lower_symbolic", r.lower.symbolic()},
          {"upper_symbolic", r.upper.symbolic()},
          {"exact", r.exact},
          {"provenance", r.provenance}};
}

template <typename T>
T field(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument(std::string("config: field '") + key + "' is missing or has the wrong type");
  }
}

confgrid::Field sample_expression(const confgrid::ConformalGrid& grid, const nlohmann::json& config, const char* key) {
  const std::string text = field<std::string>(config, key);
  try {
    const expr::Expression e = expr::Expression::parse(text);
    return grid.sample([&](const confgrid::Point& x) { return e(x); });
  } catch (const expr::ParseError& err) {
    throw std::invalid_argument(std::string("config: field '") + key + "': " + err.what());
  }
}

}  // namespace

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  throw std::invalid_argument("unknown format '" + s + "' (expected json or csv)");
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round12(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

std::vector<ReportRow> cmd_bounds(const BoundsRequest& req) {
  if (req.name && (req.k || req.m)) throw std::invalid_argument("bounds: --name cannot be combined with --k/--m");
  std::vector<ReportRow> rows;
  if (req.name) {
    for (const auto& e : catalog::lookup(*req.name))
      rows.push_back({e.name, e.value.lo, e.value.hi, e.value.exact(), e.provenance});
    return rows;
  }
  if (req.k) {
    rows.push_back(sum_row(*req.k, req.m.value_or(0)));
    return rows;
  }
  if (req.m) throw std::invalid_argument("bounds: --m requires --k");
  for (int k = 1; k <= 3; ++k)
    for (int m = 0; m <= 5; ++m) rows.push_back(sum_row(k, m));
  return rows;
}

std::string render_bounds(const std::vector<ReportRow>& rows, Format format) {
  if (format == Format::json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) arr.push_back(row_json(r));
    return arr.dump(2) + "\n";
  }
  std::string out = "name,lower,upper,lower_symbolic,upper_symbolic,exact,provenance\n";
  for (const auto& r : rows) {
    out += csv_quote(r.name) + "," + format_number(r.lower.value()) + "," + format_number(r.upper.value()) + "," +
           r.lower.symbolic() + "," + r.upper.symbolic() + "," + (r.exact ? "true" : "false") + "," +
           csv_quote(r.provenance) + "\n";
  }
  return out;
}

SpectrumOutput cmd_spectrum(const nlohmann::json& config) {
  if (!config.is_object()) throw std::invalid_argument("config: top level must be a JSON object");
  static const std::set<std::string> own{"N", "u", "f", "route"};
  nlohmann::json solver = nlohmann::json::object();
  for (const auto& [key, value] : config.items())
    if (!own.count(key)) solver[key] = value;

  const auto n_signed = field<long long>(config, "N");
  if (n_signed < 2 || n_signed > 64) throw std::invalid_argument("config: field 'N' must lie in 2..64");
  const auto n = static_cast<std::size_t>(n_signed);

  spectrum::Assembly route = spectrum::Assembly::covariance;
  if (config.contains("route")) {
    const std::string r = field<std::string>(config, "route");
    if (r == "direct") route = spectrum::Assembly::direct_stencil;
    else if (r != "covariance")
      throw std::invalid_argument("config: field 'route' must be \"covariance\" or \"direct\"");
  }

  const spectrum::SolverConfig sc = spectrum::SolverConfig::from_json(solver);
  const confgrid::ConformalGrid flat = confgrid::ConformalGrid::flat(n);
  confgrid::Field u = sample_expression(flat, config, "u");
  for (std::size_t i = 0; i < u.size(); ++i)
    if (!(u[i] > 0.0))
      throw std::invalid_argument("config: field 'u' must be positive on the grid (fails at node " +
                                  std::to_string(i) + ")");
  const confgrid::ConformalGrid grid(n, std::move(u));
  confgrid::WeightedField f{sample_expression(flat, config, "f"), -2};

  spectrum::NormalizedMetric metric = spectrum::conformal_normalize(grid, f, sc, route);
  nlohmann::json summary = spectrum::to_json(metric.spectral, n, metric.sign);
  summary["lambda"] = round12(metric.spectral.lambda);
  summary["residual"] = round12(metric.spectral.residual);
  return {std::move(summary), std::move(metric)};
}

nlohmann::json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw std::invalid_argument("config: " + path + ":" + std::to_string(line) + ":" + std::to_string(column) +
                                ": malformed JSON");
  }
}

std::string render_spectrum(const nlohmann::json& summary, Format format) {
  if (format == Format::json) return summary.dump(2) + "\n";
  return "N,lambda,sign,residual\n" + std::to_string(summary.at("N").get<std::size_t>()) + "," +
         format_number(summary.at("lambda").get<double>()) + "," + summary.at("sign").get<std::string>() + "," +
         format_number(summary.at("residual").get<double>()) + "\n";
}

verify::Report cmd_verify(const std::string& suite, int jobs) { return verify::run_suite(suite, jobs); }

std::string render_verify(const verify::Report& report, Format format) {
  if (format == Format::json) return verify::to_json(report).dump(2) + "\n";
  std::string out = "suite,check,passed,detail\n";
  for (const auto& c : report.checks)
    out += report.suite + "," + c.name + "," + (c.passed ? "true" : "false") + "," + csv_quote(c.detail) + "\n";
  return out;
}

}  // namespace yamabe::cli
