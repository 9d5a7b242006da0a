// urnctl: exact, simulated and bounded views of the non-isolated ball count.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "urn/bounds.hpp"
#include "urn/constants.hpp"
#include "urn/coupling.hpp"
#include "urn/error.hpp"
#include "urn/exact.hpp"
#include "urn/increment.hpp"
#include "urn/monte_carlo.hpp"
#include "urn/parallel.hpp"
#include "urn/report.hpp"
#include "urn/verify.hpp"

namespace {

using urn::Json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadConfig = 2;

struct RunConfig {
  std::string model;
  std::uint64_t samples = 100'000;
  std::optional<std::uint64_t> seed;
  unsigned threads = urn::default_threads();
  std::string out;
  std::string format = "json";
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_all(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

urn::UrnModel load_model(const std::string& spec) {
  if (spec.empty()) throw ConfigError("--model is required");
  if (spec == "-") return urn::parse_model(read_all(std::cin));
  const auto first = spec.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && spec[first] == '{') return urn::parse_model(spec);
  std::ifstream file(spec);
  if (!file) throw ConfigError("cannot open model file '" + spec + "'");
  return urn::parse_model(read_all(file));
}

std::uint64_t resolve_seed(const RunConfig& cfg) {
  if (cfg.seed) return *cfg.seed;
  std::random_device device;
  return (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

Json header(const std::string& command, const std::optional<urn::UrnModel>& model,
            std::optional<std::uint64_t> seed, std::uint64_t samples) {
  Json out;
  out["version"] = urn::version();
  out["command"] = command;
  out["model"] = model ? urn::to_json(*model) : Json();
  out["seed"] = seed ? Json(*seed) : Json();
  out["samples"] = samples;
  return out;
}

std::string csv_preamble(const Json& head) {
  std::ostringstream s;
  s << "# version=" << head["version"].get<std::string>() << " command=" << head["command"].get<std::string>()
    << " seed=" << head["seed"].dump() << " samples=" << head["samples"].dump() << '\n';
  s << "# model=" << head["model"].dump() << '\n';
  return s.str();
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
  if (!file) throw ConfigError("cannot write '" + cfg.out + "'");
  file << text;
}

void emit_json(const RunConfig& cfg, const Json& doc) { emit(cfg, doc.dump(2) + "\n"); }

void check_format(const RunConfig& cfg) {
  if (cfg.format != "json" && cfg.format != "csv") throw ConfigError("--format must be json or csv");
}

// exact ---------------------------------------------------------------------

int run_exact(const RunConfig& cfg) {
  check_format(cfg);
  const urn::UrnModel model = load_model(cfg.model);
  Json doc = header("exact", model, std::nullopt, 0);
  const urn::Moments moments = urn::exact_moments(model);
  doc["moments"] = urn::to_json(moments);
  std::optional<urn::IntegerPmf> pmf;
  try {
    pmf = urn::exact_pmf(model);
  } catch (const urn::CapacityError& e) {
    doc["pmf"] = nullptr;
    doc["note"] = e.what();
  }
  if (cfg.format == "csv") {
    if (!pmf) throw ConfigError("no exact pmf for this model; use --format json for moments");
    std::ostringstream s;
    s << csv_preamble(doc);
    urn::write_pmf_csv(s, *pmf);
    emit(cfg, s.str());
    return kExitOk;
  }
  doc["mean"] = moments.mean;
  doc["variance"] = moments.variance;
  if (pmf) {
    doc["pmf"] = urn::to_json(*pmf);
    if (moments.variance > 0.0) {
      doc["kolmogorov_distance"] = urn::kolmogorov_distance(*pmf);
      doc["kolmogorov_lower_bound"] = urn::kolmogorov_lower_bound(std::sqrt(moments.variance));
    } else {
      doc["kolmogorov_distance"] = nullptr;
    }
  }
  emit_json(cfg, doc);
  return kExitOk;
}

// simulate ------------------------------------------------------------------

int run_simulate(const RunConfig& cfg, bool exact_standardization) {
  check_format(cfg);
  const urn::UrnModel model = load_model(cfg.model);
  const std::uint64_t seed = resolve_seed(cfg);
  urn::McOptions options;
  options.samples = cfg.samples;
  options.seed = seed;
  options.threads = cfg.threads;
  if (exact_standardization) {
    const urn::Moments m = urn::exact_moments(model);
    options.exact_mean = m.mean;
    options.exact_stddev = m.stddev();
  }
  const urn::McSummary summary = urn::mc_run(model, options);
  std::cerr << "simulate: " << summary.samples << " replicates in " << summary.wall_seconds
            << " s (" << summary.replicates_per_second << " /s, " << cfg.threads << " threads)\n";
  Json doc = header("simulate", model, seed, cfg.samples);
  if (cfg.format == "csv") {
    std::ostringstream s;
    s << csv_preamble(doc);
    urn::write_pmf_csv(s, summary.pmf);
    emit(cfg, s.str());
    return kExitOk;
  }
  doc["summary"] = urn::to_json(summary);
  emit_json(cfg, doc);
  return kExitOk;
}

// couple --------------------------------------------------------------------

int run_couple(const RunConfig& cfg, const std::string& coupler) {
  check_format(cfg);
  const urn::UrnModel model = load_model(cfg.model);
  const std::uint64_t seed = resolve_seed(cfg);
  urn::CouplingBatchOptions options;
  if (coupler == "uniform") {
    options.kind = urn::CouplerKind::kUniform;
  } else if (coupler == "general") {
    options.kind = urn::CouplerKind::kGeneral;
  } else if (coupler == "auto") {
    options.kind = model.is_uniform() ? urn::CouplerKind::kUniform : urn::CouplerKind::kGeneral;
  } else {
    throw ConfigError("--coupler must be uniform, general or auto");
  }
  options.samples = cfg.samples;
  options.seed = seed;
  options.threads = cfg.threads;
  options.keep_draws = cfg.format == "csv" ? cfg.samples : 0;
  const urn::CouplingBatch batch = urn::couple_batch(model, options);

  Json doc = header("couple", model, seed, cfg.samples);
  if (cfg.format == "csv") {
    std::ostringstream s;
    s << csv_preamble(doc);
    urn::write_coupling_csv(s, batch.draws);
    emit(cfg, s.str());
    return kExitOk;
  }
  doc["batch"] = urn::to_json(batch);
  Json law;
  try {
    const urn::IntegerPmf exact = urn::exact_pmf(model);
    const urn::IntegerPmf target = exact.size_biased();
    std::vector<double> dense(model.n() + 1, 0.0);
    for (std::size_t i = 0; i < target.support().size(); ++i) {
      dense[static_cast<std::size_t>(target.support()[i])] = target.mass()[i];
    }
    const urn::ChiSquaredResult fit = urn::chi_squared_gof(batch.y_sb_histogram, dense);
    law["target"] = urn::to_json(target);
    law["chi_squared"] = fit.statistic;
    law["degrees_of_freedom"] = fit.degrees_of_freedom;
    law["p_value"] = fit.p_value;
    law["passed"] = fit.p_value > urn::kLawPValue;
    const double var_over_mean = exact.variance() / exact.mean();
    law["exact_mean_increment"] = var_over_mean;
  } catch (const urn::CapacityError& e) {
    law["note"] = e.what();
  }
  doc["sizebias_check"] = law;
  emit_json(cfg, doc);
  return kExitOk;
}

// bounds --------------------------------------------------------------------

int run_bounds(const RunConfig& cfg, std::optional<double> alpha, double gamma) {
  Json doc = header("bounds", std::nullopt, std::nullopt, 0);
  if (!cfg.model.empty()) {
    const urn::UrnModel model = load_model(cfg.model);
    doc["model"] = urn::to_json(model);
    doc["report"] = urn::to_json(urn::all_bounds(model));
  }
  if (alpha || cfg.model.empty()) {
    const double a = alpha.value_or(1.0);
    const double g = urn::limit_sd_scale(a);
    const urn::BoundValue rate = urn::asymptotic_rate_terms(a);
    Json asym;
    asym["alpha"] = a;
    asym["g"] = g;
    asym["g_squared"] = g * g;
    asym["rate_constant"] = rate.value;
    Json terms = Json::array();
    for (const auto& t : rate.terms) terms.push_back({{"name", t.name}, {"value", t.value}});
    asym["rate_terms"] = terms;
    if (a == 1.0) {
      asym["published_rate_constant"] = urn::constants::kPublishedRateConstantAlphaOne;
      asym["published_note"] =
          "published rounded value differs from the evaluated constant";
    }
    doc["asymptotic"] = asym;
  }
  Json general;
  general["gamma"] = gamma;
  general["C_gamma"] = urn::general_delta_constant(gamma);
  general["n_threshold"] = urn::ball_count_threshold(gamma);
  general["n_threshold_ceil"] = std::ceil(urn::ball_count_threshold(gamma));
  general["lower_bound_scale"] = 1.0 / std::sqrt(8.0 * std::numbers::pi * std::numbers::e);
  doc["general"] = general;
  check_format(cfg);
  if (cfg.format == "csv") throw ConfigError("bounds emits JSON only");
  emit_json(cfg, doc);
  return kExitOk;
}

// verify --------------------------------------------------------------------

std::vector<std::uint32_t> parse_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long value = std::stoul(item, &used);
      if (used != item.size() || value == 0) throw std::invalid_argument(item);
      out.push_back(static_cast<std::uint32_t>(value));
    } catch (const std::exception&) {
      throw ConfigError("bad integer list entry '" + item + "'");
    }
  }
  return out;
}

int run_verify(const RunConfig& cfg, std::vector<std::string> checks, const std::string& n_list) {
  check_format(cfg);
  if (cfg.format == "csv") throw ConfigError("verify emits JSON only");
  const std::uint64_t seed = resolve_seed(cfg);
  std::optional<urn::UrnModel> model;
  if (!cfg.model.empty()) model = load_model(cfg.model);
  if (checks.empty()) {
    checks = model ? std::vector<std::string>{"sizebias", "covariance", "delta"}
                   : std::vector<std::string>{"rate"};
  }
  Json doc = header("verify", model, seed, cfg.samples);
  Json reports = Json::array();
  bool passed = true;
  auto record = [&](const urn::CheckReport& r) {
    passed = passed && r.passed;
    reports.push_back(urn::to_json(r));
  };
  for (const std::string& check : checks) {
    if (check == "rate") {
      record(urn::rate_check(parse_list(n_list), cfg.samples, seed, cfg.threads));
      continue;
    }
    if (!model) throw ConfigError("check '" + check + "' needs --model");
    if (check == "sizebias") {
      record(urn::sizebias_law_check(*model, cfg.samples, seed, cfg.threads));
    } else if (check == "covariance") {
      record(urn::covariance_bound_check(*model, urn::CovarianceFamily::kPair, cfg.samples, seed,
                                         cfg.threads));
      if (model->n() >= 4) {
        record(urn::covariance_bound_check(*model, urn::CovarianceFamily::kQuad, cfg.samples,
                                           seed, cfg.threads));
      }
    } else if (check == "delta") {
      record(urn::delta_check(*model, cfg.samples, seed, cfg.threads));
    } else {
      throw ConfigError("unknown check '" + check + "'");
    }
  }
  doc["passed"] = passed;
  doc["checks"] = reports;
  emit_json(cfg, doc);
  return passed ? kExitOk : kExitCheckFailed;
}

// sweep ---------------------------------------------------------------------

struct SweepRange {
  std::string variable;
  double from = 0.0;
  double to = 0.0;
  double step = 1.0;
  bool multiplicative = false;

  std::vector<double> values() const {
    std::vector<double> out;
    const double tolerance = 1e-9 * std::max(1.0, std::fabs(to));
    for (double v = from; v <= to + tolerance; v = multiplicative ? v * step : v + step) {
      out.push_back(v);
      if (out.size() > 100'000) throw ConfigError("sweep grid is too large");
    }
    return out;
  }
};

// var=a..b, var=a..b:step (additive) or var=a..b*factor (multiplicative).
SweepRange parse_sweep(const std::string& text) {
  SweepRange r;
  const auto eq = text.find('=');
  const auto dots = text.find("..");
  if (eq == std::string::npos || dots == std::string::npos || dots < eq) {
    throw ConfigError("--sweep must look like n=a..b[:step|*factor]");
  }
  r.variable = text.substr(0, eq);
  if (r.variable != "n" && r.variable != "m" && r.variable != "alpha") {
    throw ConfigError("--sweep variable must be n, m or alpha");
  }
  std::string upper = text.substr(dots + 2);
  const auto op = upper.find_first_of(":*");
  try {
    r.from = std::stod(text.substr(eq + 1, dots - eq - 1));
    if (op != std::string::npos) {
      r.multiplicative = upper[op] == '*';
      r.step = std::stod(upper.substr(op + 1));
      upper = upper.substr(0, op);
    }
    r.to = std::stod(upper);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse --sweep '" + text + "'");
  }
  if (!(r.from > 0.0) || r.to < r.from) throw ConfigError("--sweep needs 0 < a <= b");
  if (r.multiplicative ? !(r.step > 1.0) : !(r.step > 0.0)) {
    throw ConfigError("--sweep step must be positive (factor above 1)");
  }
  return r;
}

std::uint32_t positive_count(double value, const char* what) {
  const double rounded = std::round(value);
  if (!(rounded >= 1.0) || rounded > 4e9) throw ConfigError(std::string(what) + " out of range");
  return static_cast<std::uint32_t>(rounded);
}

int run_sweep(const RunConfig& cfg, const std::string& sweep, std::optional<std::uint32_t> fixed_n,
              std::optional<std::uint32_t> fixed_m, std::optional<double> alpha) {
  check_format(cfg);
  if (sweep.empty()) throw ConfigError("sweep needs --sweep");
  const SweepRange range = parse_sweep(sweep);
  const std::uint64_t seed = resolve_seed(cfg);

  std::vector<std::pair<std::uint32_t, std::uint32_t>> grid;
  for (const double v : range.values()) {
    if (range.variable == "n") {
      const std::uint32_t n = positive_count(v, "n");
      const std::uint32_t m = fixed_m ? *fixed_m : positive_count(n / alpha.value_or(1.0), "m");
      grid.emplace_back(n, m);
    } else if (range.variable == "m") {
      if (!fixed_n) throw ConfigError("sweeping m needs --n");
      grid.emplace_back(*fixed_n, positive_count(v, "m"));
    } else {
      if (!fixed_n) throw ConfigError("sweeping alpha needs --n");
      grid.emplace_back(*fixed_n, positive_count(*fixed_n / v, "m"));
    }
  }

  Json head = header("sweep", std::nullopt, seed, cfg.samples);
  head["sweep"] = sweep;
  Json rows = Json::array();
  std::ostringstream csv;
  csv << csv_preamble(head) << urn::kSweepCsvHeader << '\n';
  for (const auto& [n, m] : grid) {
    const urn::UrnModel model = urn::build_model(n, urn::UniformUrns{m});
    const urn::Moments moments = urn::exact_moments(model);
    const double sigma = moments.stddev();
    urn::McOptions options;
    options.samples = cfg.samples;
    options.seed = seed;
    options.threads = cfg.threads;
    std::optional<double> d_hat, d_radius, upper, lower;
    if (sigma > 0.0) {
      options.exact_mean = moments.mean;
      options.exact_stddev = sigma;
      const urn::McSummary mc = urn::mc_run(model, options);
      d_hat = mc.d_hat;
      d_radius = mc.d_radius;
      lower = urn::kolmogorov_lower_bound(sigma);
      if (n >= 2 && m >= 4) {
        upper = urn::uniform_kolmogorov_bound(n, m, moments.mean, sigma).bounds.front().value;
      }
    }
    const double a = static_cast<double>(n) / m;
    auto cell = [](const std::optional<double>& v) { return v ? urn::format_double(*v) : std::string(); };
    csv << n << ',' << m << ',' << urn::format_double(a) << ',' << urn::format_double(moments.mean)
        << ',' << urn::format_double(sigma) << ',' << cell(d_hat) << ',' << cell(d_radius) << ','
        << cell(upper) << ',' << cell(lower) << '\n';
    auto value = [](const std::optional<double>& v) { return v ? Json(*v) : Json(); };
    rows.push_back({{"n", n}, {"m", m}, {"alpha", a}, {"mu", moments.mean}, {"sigma", sigma},
                    {"d_hat", value(d_hat)}, {"d_radius", value(d_radius)},
                    {"thm1_bound", value(upper)}, {"lower_bound", value(lower)}});
  }
  if (cfg.format == "csv") {
    emit(cfg, csv.str());
  } else {
    head["rows"] = rows;
    emit_json(cfg, head);
  }
  return kExitOk;
}

void add_common(CLI::App* cmd, RunConfig& cfg, bool sampled) {
  cmd->add_option("--model", cfg.model, "Model JSON: inline text, a file path, or - for stdin");
  cmd->add_option("--out", cfg.out, "Output path (default stdout)");
  cmd->add_option("--format", cfg.format, "json or csv");
  if (sampled) {
    cmd->add_option("--samples", cfg.samples, "Number of replicates");
    cmd->add_option("--seed", cfg.seed, "Generator seed (drawn from entropy and recorded if omitted)");
    cmd->add_option("--threads", cfg.threads, "Worker threads (default from URN_THREADS)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distribution of the number of non-isolated balls in an urn occupancy model"};
  app.set_version_flag("--version", std::string(urn::version()));
  app.require_subcommand(1);

  RunConfig cfg;
  bool exact_standardization = false;
  std::string coupler = "auto";
  std::optional<double> alpha;
  double gamma = 1.0;
  std::vector<std::string> checks;
  std::string n_list = "256,512,1024,2048";
  std::string sweep;
  std::optional<std::uint32_t> fixed_n, fixed_m;

  auto* exact = app.add_subcommand("exact", "Exact pmf, moments and Kolmogorov distance");
  add_common(exact, cfg, false);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo law of Y");
  add_common(simulate, cfg, true);
  simulate->add_flag("--exact-standardization", exact_standardization,
                     "Standardize D-hat with exact moments");

  auto* couple = app.add_subcommand("couple", "Size-biased coupling batch");
  add_common(couple, cfg, true);
  couple->add_option("--coupler", coupler, "uniform, general or auto");

  auto* bounds = app.add_subcommand("bounds", "Evaluate every bound and constant");
  add_common(bounds, cfg, false);
  bounds->add_option("--alpha", alpha, "Limit ratio n/m for the asymptotic constant");
  bounds->add_option("--gamma", gamma, "gamma for C(gamma) and the ball-count threshold");

  auto* verify = app.add_subcommand("verify", "Run the verification checks");
  add_common(verify, cfg, true);
  verify->add_option("--check", checks, "sizebias, covariance, delta or rate (repeatable)");
  verify->add_option("--n-list", n_list, "Comma-separated sizes for the rate check");

  auto* sweep_cmd = app.add_subcommand("sweep", "Uniform-model grid as plot data");
  add_common(sweep_cmd, cfg, true);
  sweep_cmd->add_option("--sweep", sweep, "n=a..b, m=a..b or alpha=a..b, with :step or *factor");
  sweep_cmd->add_option("--alpha", alpha, "n/m when sweeping n (default 1)");
  sweep_cmd->add_option("--n", fixed_n, "Fixed n when sweeping m or alpha");
  sweep_cmd->add_option("--m", fixed_m, "Fixed m when sweeping n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadConfig;
  }

  try {
    if (cfg.threads < 1) throw ConfigError("--threads must be at least 1");
    if (*exact) return run_exact(cfg);
    if (*simulate) return run_simulate(cfg, exact_standardization);
    if (*couple) return run_couple(cfg, coupler);
    if (*bounds) return run_bounds(cfg, alpha, gamma);
    if (*verify) return run_verify(cfg, checks, n_list);
    if (*sweep_cmd) return run_sweep(cfg, sweep, fixed_n, fixed_m, alpha);
  } catch (const ConfigError& e) {
    std::cerr << "urnctl: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const urn::Error& e) {
    std::cerr << "urnctl: " << e.what() << '\n';
    return kExitBadConfig;
  }
  return kExitBadConfig;
}
