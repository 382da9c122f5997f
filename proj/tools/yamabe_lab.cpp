// yamabe_lab: bound tables, spectral diagnostics and verification suites.

#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "yamabe/cli.hpp"
#include "yamabe/field_io.hpp"

namespace {

int default_jobs() {
  if (const char* env = std::getenv("YAMABE_LAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

bool ends_with(const std::string& s, const std::string& tail) {
  return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

void write_field(const std::string& path, const yamabe::spectrum::NormalizedMetric& metric) {
  const auto& g = metric.grid;
  const yamabe::confgrid::WeightedField u{{g.conformal_factor().begin(), g.conformal_factor().end()}, 0};
  const auto rec = yamabe::io::FieldRecord::from(g.n(), u);
  if (ends_with(path, ".json")) {
    std::ofstream out(path);
    out << yamabe::io::to_json(rec).dump() << "\n";
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
  } else {
    std::ofstream out(path, std::ios::binary);
    yamabe::io::write_binary(out, rec);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Yamabe invariant bounds, perturbed Yamabe spectra and verification suites"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  int jobs = default_jobs();
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--jobs", jobs, "Worker threads (default: $YAMABE_LAB_THREADS or 1)")->check(CLI::PositiveNumber);

  yamabe::cli::BoundsRequest bounds;
  int k = 0, m = 0;
  std::string name;
  auto* bounds_cmd = app.add_subcommand("bounds", "Yamabe invariant bounds for k CP2 # m (S1xS3) or a named manifold");
  auto* k_opt = bounds_cmd->add_option("--k", k, "Number of CP2 summands (1..3)");
  auto* m_opt = bounds_cmd->add_option("--m", m, "Number of S1xS3 summands");
  auto* name_opt = bounds_cmd->add_option("--name", name, "Catalogue entry");

  std::string config_path, field_out;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Lowest eigenpair and conformal normal form from a JSON config");
  spectrum_cmd->add_option("config", config_path, "Config file")->required();
  spectrum_cmd->add_option("--field-out", field_out, "Write the normalised conformal factor (.json or binary)");

  std::string suite;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("suite", suite, "algebra | constants | covariance | lattice | trichotomy")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    omp_set_num_threads(jobs);
    const auto fmt = yamabe::cli::parse_format(format);
    if (bounds_cmd->parsed()) {
      if (*k_opt) bounds.k = k;
      if (*m_opt) bounds.m = m;
      if (*name_opt) bounds.name = name;
      std::cout << yamabe::cli::render_bounds(yamabe::cli::cmd_bounds(bounds), fmt);
      return 0;
    }
    if (spectrum_cmd->parsed()) {
      const auto out = yamabe::cli::cmd_spectrum(yamabe::cli::load_config(config_path));
      if (!field_out.empty()) write_field(field_out, out.metric);
      std::cout << yamabe::cli::render_spectrum(out.summary, fmt);
      return 0;
    }
    const auto report = yamabe::cli::cmd_verify(suite, jobs);
    std::cout << yamabe::cli::render_verify(report, fmt);
    return report.passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "yamabe_lab: " << e.what() << "\n";
    return 2;
  }
}
