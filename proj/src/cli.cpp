// SPDX-License-Identifier: Apache-2.0
#include "gaussggm/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "gaussggm/io.hpp"

namespace gaussggm::cli {
namespace {

struct Config {
  Index n = 3;
  double nu_bar = 2.6;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 42;
  std::uint64_t seed_b = 0;
  double bins = 0.05;
  std::string gamma = "uniform";
  std::string gamma_b = "uniform";
  unsigned workers = 1;
  std::string out;
  std::string format;
  std::string ggm_mode = "full";
  std::vector<double> epsilons{0.0001, 0.0004, 0.001, 0.0025, 0.005, 0.01};
  std::optional<double> reference;
  std::string input = "-";
};

GammaPolicy parse_gamma(const std::string& text) {
  if (text == "uniform") return UniformGamma{};
  std::vector<double> z;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size())
      throw CLI::ValidationError("--gamma", "expected 'uniform' or a comma-separated list");
    z.push_back(v);
  }
  if (z.empty()) throw CLI::ValidationError("--gamma", "empty squeezing list");
  return z;
}

GgmMode parse_mode(const std::string& text) {
  return text == "single" ? GgmMode::single_mode : GgmMode::full;
}

RandomStateSpec state_spec(const Config& c, const std::string& gamma, std::uint64_t seed) {
  RandomStateSpec s;
  s.n = c.n;
  s.nu_bar = c.nu_bar;
  s.seed = seed;
  s.gamma = parse_gamma(gamma);
  return s;
}

EnsembleSpec ensemble_spec(const Config& c, Index n, const std::string& gamma, std::uint64_t seed) {
  EnsembleSpec e;
  e.state = state_spec(c, gamma, seed);
  e.state.n = n;
  e.samples = c.samples;
  e.mode = parse_mode(c.ggm_mode);
  e.workers = c.workers;
  e.bin_width = c.bins;
  return e;
}

void emit(const Config& c, const std::string& text, std::ostream& out,
          const std::string& path_override = {}) {
  const std::string& path = path_override.empty() ? c.out : path_override;
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

std::string sibling_csv(const std::string& path) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + ".csv";
  return path.substr(0, dot) + ".csv";
}

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    buf << f.rdbuf();
  }
  return buf.str();
}

int cmd_sample(const Config& c, std::ostream& out) {
  emit(c, io::dump(io::to_json(sample_state(state_spec(c, c.gamma, c.seed)))), out);
  return kExitOk;
}

int cmd_ggm(const Config& c, std::istream& in, std::ostream& out) {
  const Covariance sigma = io::covariance_from_json(io::parse(read_input(c.input, in)));
  const GgmResult r = parse_mode(c.ggm_mode) == GgmMode::full ? compute_ggm(sigma)
                                                               : compute_ggm_single_mode(sigma);
  emit(c, io::dump(io::to_json(r)), out);
  return kExitOk;
}

int cmd_ensemble(const Config& c, std::ostream& out) {
  const EnsembleStats stats = run_ensemble(ensemble_spec(c, c.n, c.gamma, c.seed));
  if (c.format == "csv") {
    emit(c, io::histogram_csv(stats.histogram), out);
    return kExitOk;
  }
  emit(c, io::dump(io::to_json(stats)), out);
  if (!c.out.empty()) emit(c, io::histogram_csv(stats.histogram), out, sibling_csv(c.out));
  return kExitOk;
}

int cmd_asymptotic(const Config& c, std::ostream& out) {
  std::ostringstream s;
  s << std::setprecision(15) << asymptotic_ggm(c.nu_bar) << "\n";
  emit(c, s.str(), out);
  return kExitOk;
}

int cmd_tail(const Config& c, std::ostream& out) {
  const double reference = c.reference.value_or(asymptotic_ggm(c.nu_bar));
  const TailEstimate t =
      tail_probability(ensemble_spec(c, c.n, c.gamma, c.seed), reference, c.epsilons);
  emit(c, io::dump(io::to_json(t)), out);
  return kExitOk;
}

int cmd_gamma_test(const Config& c, std::ostream& out) {
  const auto report = gamma_equivalence_test(ensemble_spec(c, c.n, c.gamma, c.seed),
                                             ensemble_spec(c, c.n, c.gamma_b, c.seed_b));
  emit(c, io::dump(io::to_json(report)), out);
  return kExitOk;
}

int cmd_table1(const Config& c, std::ostream& out) {
  std::vector<EnsembleStats> rows;
  for (Index n = 3; n <= 6; ++n) rows.push_back(run_ensemble(ensemble_spec(c, n, "uniform", c.seed)));

  std::ostringstream s;
  if (c.format == "json") {
    io::Json arr = io::Json::array();
    for (const auto& r : rows) arr.push_back(io::to_json(r));
    s << io::dump(arr);
  } else if (c.format == "csv") {
    s << "n,mean,stddev,standard_error\n" << std::setprecision(17);
    for (const auto& r : rows)
      s << r.n << ',' << r.mean << ',' << r.stddev << ',' << r.standard_error() << '\n';
  } else {
    s << "nu_bar = " << c.nu_bar << ", N = " << c.samples << "\n";
    s << std::fixed << std::setprecision(4);
    s << "n        ";
    for (const auto& r : rows) s << std::setw(9) << r.n;
    s << "\nE[G]     ";
    for (const auto& r : rows) s << std::setw(9) << r.mean;
    s << "\nE[dG]    ";
    for (const auto& r : rows) s << std::setw(9) << r.stddev;
    s << "\n";
  }
  emit(c, s.str(), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Config c;
  if (const char* env = std::getenv("GAUSS_GGM_SEED")) {
    try {
      c.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "GAUSS_GGM_SEED is not an unsigned integer: " << env << "\n";
      return kExitUsage;
    }
  }

  CLI::App app{"Haar-random pure Gaussian states and their genuine multimode entanglement",
               "gauss-ggm"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--n", c.n, "number of modes")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--nu-bar", c.nu_bar, "average energy per mode (>= 1)")->capture_default_str();
  app.add_option("--samples", c.samples, "ensemble size")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--seed", c.seed, "random seed (default 42, or $GAUSS_GGM_SEED)");
  app.add_option("--bins", c.bins, "histogram bin width")->capture_default_str();
  app.add_option("--gamma", c.gamma, "squeezing: 'uniform' or comma list z_1,...,z_n")->capture_default_str();
  app.add_option("--workers", c.workers, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--out", c.out, "output file (default stdout)");
  app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--ggm-mode", c.ggm_mode, "subset enumeration: full or single")
      ->capture_default_str()
      ->check(CLI::IsMember({"full", "single"}));

  app.add_subcommand("sample", "emit one random covariance matrix as JSON");
  auto* ggm = app.add_subcommand("ggm", "compute the GGM of a covariance matrix JSON file");
  ggm->add_option("input", c.input, "covariance JSON file, '-' for stdin");
  app.add_subcommand("ensemble", "GGM statistics of a random ensemble");
  app.add_subcommand("asymptotic", "large-n GGM (nu_bar - 1)/(nu_bar + 1)");
  auto* tail = app.add_subcommand("tail", "empirical Prob{(G - reference)^2 > eps}");
  tail->add_option("--epsilons", c.epsilons, "epsilon grid")->delimiter(',');
  tail->add_option("--reference", c.reference, "reference GGM (default: asymptotic value)");
  auto* gamma_test = app.add_subcommand("gamma-test", "compare GGM distributions of two spectra");
  gamma_test->add_option("--gamma-b", c.gamma_b, "second squeezing spectrum")->capture_default_str();
  auto* seed_b_opt = gamma_test->add_option("--seed-b", c.seed_b, "seed of the second ensemble (default --seed)");
  app.add_subcommand("table1", "GGM mean and spread for n = 3..6");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  if (seed_b_opt->count() == 0) c.seed_b = c.seed;

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "sample") return cmd_sample(c, out);
    if (command == "ggm") return cmd_ggm(c, in, out);
    if (command == "ensemble") return cmd_ensemble(c, out);
    if (command == "asymptotic") return cmd_asymptotic(c, out);
    if (command == "tail") return cmd_tail(c, out);
    if (command == "gamma-test") return cmd_gamma_test(c, out);
    if (command == "table1") return cmd_table1(c, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  err << "error: unknown command " << command << "\n";
  return kExitUsage;
}

}  // namespace gaussggm::cli
