#include "robustgauss/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "robustgauss/io.hpp"
#include "robustgauss/rng.hpp"
#include "robustgauss/svg.hpp"

namespace robustgauss {

std::string estimator_name(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::plugin: return "plugin";
    case EstimatorKind::known_sigma: return "known_sigma";
    case EstimatorKind::mean_baseline: return "mean_baseline";
  }
  return "?";
}

EstimatorKind parse_estimator(const std::string& name) {
  if (name == "plugin") return EstimatorKind::plugin;
  if (name == "known_sigma" || name == "known-sigma") return EstimatorKind::known_sigma;
  if (name == "mean_baseline" || name == "mean-baseline") return EstimatorKind::mean_baseline;
  throw std::invalid_argument("unknown estimator \"" + name + "\" (plugin, known_sigma, mean_baseline)");
}

void ExperimentConfig::validate() const {
  if (r_set.empty() || n_set.empty() || estimators.empty()) {
    throw std::invalid_argument("config: r_set, n_set and estimators must be non-empty");
  }
  for (double r : r_set) {
    if (!(r > 0.0)) throw std::invalid_argument("config: r values must be > 0");
  }
  for (long n : n_set) {
    if (n < 1) throw std::invalid_argument("config: n values must be >= 1");
  }
  if (reps < 1) throw std::invalid_argument("config: reps must be >= 1");
  if (d < 1) throw std::invalid_argument("config: d must be >= 1");
  if (!(eps >= 0.0)) throw std::invalid_argument("config: eps must be >= 0");
  if (!(ridge >= 0.0)) throw std::invalid_argument("config: ridge must be >= 0");
  if (jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
}

GaussianMixture experiment_model(const ExperimentConfig& config, double r) {
  Vec mu = Vec::Constant(config.d, config.eps);
  mu[0] = r + config.eps;
  return GaussianMixture(std::move(mu), SpdMatrix::identity(config.d));
}

namespace {

FitResult fit_one(EstimatorKind kind, const Dataset& data, const ExperimentConfig& config,
                  const SpdMatrix& sigma_true) {
  switch (kind) {
    case EstimatorKind::plugin: {
      FitOptions opts;
      opts.ridge = config.ridge;
      return fit_plugin(data, config.ball, config.eps, opts);
    }
    case EstimatorKind::known_sigma:
      return fit_known_sigma(data, sigma_true, config.ball, config.eps);
    case EstimatorKind::mean_baseline:
      return fit_mean_baseline(data);
  }
  throw std::logic_error("fit_one: unreachable");
}

struct RPrecompute {
  GaussianMixture model;
  double optimal_risk;
};

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();

  std::vector<RPrecompute> per_r;
  per_r.reserve(config.r_set.size());
  SolveOptions tight;
  tight.tol = 1e-11;
  for (double r : config.r_set) {
    GaussianMixture model = experiment_model(config, r);
    const double rstar = optimal_robust_risk(model, config.ball, config.eps, tight);
    per_r.push_back(RPrecompute{std::move(model), rstar});
  }

  const std::size_t n_cells = config.r_set.size() * config.n_set.size() * static_cast<std::size_t>(config.reps);
  const std::size_t n_est = config.estimators.size();
  std::vector<TrialRecord> trials(n_cells * n_est);

  auto run_cell = [&](std::size_t cell) {
    const std::size_t per_r_cells = config.n_set.size() * static_cast<std::size_t>(config.reps);
    const std::size_t ri = cell / per_r_cells;
    const std::size_t ni = (cell % per_r_cells) / static_cast<std::size_t>(config.reps);
    const int rep = static_cast<int>(cell % static_cast<std::size_t>(config.reps));
    const double r = config.r_set[ri];
    const long n = config.n_set[ni];
    // The seed is a pure function of the grid position: estimator choice and
    // execution order cannot change the data.
    const std::uint64_t seed = derive_seed(config.master_seed, static_cast<std::uint64_t>(cell));
    const RPrecompute& pre = per_r[ri];
    const Dataset data = sample(pre.model, n, seed);
    for (std::size_t ei = 0; ei < n_est; ++ei) {
      const EstimatorKind kind = config.estimators[ei];
      const auto t0 = std::chrono::steady_clock::now();
      const FitResult fit = fit_one(kind, data, config, pre.model.sigma);
      const auto t1 = std::chrono::steady_clock::now();
      TrialRecord rec;
      rec.r = r;
      rec.n = n;
      rec.rep = rep;
      rec.seed = seed;
      rec.estimator = kind;
      rec.robust_risk = robust_risk_linear(fit.classifier, pre.model, config.ball, config.eps);
      rec.excess_risk = rec.robust_risk - pre.optimal_risk;
      rec.solver_iterations = fit.solver.iterations;
      rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      trials[cell * n_est + ei] = rec;
    }
  };

  if (config.jobs <= 1) {
    for (std::size_t cell = 0; cell < n_cells; ++cell) run_cell(cell);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (;;) {
        const std::size_t cell = next.fetch_add(1);
        if (cell >= n_cells) return;
        try {
          run_cell(cell);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    const int n_threads = std::min<int>(config.jobs, static_cast<int>(n_cells));
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  ExperimentResult result;
  result.trials = std::move(trials);

  for (std::size_t ri = 0; ri < config.r_set.size(); ++ri) {
    for (std::size_t ni = 0; ni < config.n_set.size(); ++ni) {
      for (std::size_t ei = 0; ei < n_est; ++ei) {
        double sum = 0.0;
        for (int rep = 0; rep < config.reps; ++rep) {
          const std::size_t cell =
              (ri * config.n_set.size() + ni) * static_cast<std::size_t>(config.reps) + static_cast<std::size_t>(rep);
          sum += result.trials[cell * n_est + ei].excess_risk;
        }
        const double mean = sum / config.reps;
        double ss = 0.0;
        for (int rep = 0; rep < config.reps; ++rep) {
          const std::size_t cell =
              (ri * config.n_set.size() + ni) * static_cast<std::size_t>(config.reps) + static_cast<std::size_t>(rep);
          const double dev = result.trials[cell * n_est + ei].excess_risk - mean;
          ss += dev * dev;
        }
        AggregateRecord agg;
        agg.r = config.r_set[ri];
        agg.n = config.n_set[ni];
        agg.estimator = config.estimators[ei];
        agg.mean_excess = mean;
        agg.stderr_excess =
            config.reps > 1 ? std::sqrt(ss / (config.reps - 1)) / std::sqrt(static_cast<double>(config.reps)) : 0.0;
        result.aggregates.push_back(agg);
      }
    }
  }

  const long n_max = *std::max_element(config.n_set.begin(), config.n_set.end());
  const long n_lo = n_max / 10;
  for (double r : config.r_set) {
    for (EstimatorKind kind : config.estimators) {
      SlopeRecord slope;
      slope.r = r;
      slope.estimator = kind;
      slope.slope = fit_loglog_slope(result.aggregates, r, kind, n_lo, n_max);
      result.slopes.push_back(slope);
    }
  }
  return result;
}

double fit_loglog_slope(const std::vector<AggregateRecord>& aggregates, double r, EstimatorKind kind,
                        long n_lo, long n_hi) {
  std::vector<std::pair<double, double>> pts;
  for (const AggregateRecord& a : aggregates) {
    if (a.r == r && a.estimator == kind && a.n >= n_lo && a.n <= n_hi && a.mean_excess > 0.0) {
      pts.emplace_back(std::log(static_cast<double>(a.n)), std::log(a.mean_excess));
    }
  }
  if (pts.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(pts.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

void write_trials_csv(const std::string& path, const std::vector<TrialRecord>& trials) {
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << "r,n,rep,seed,estimator,excess_risk,robust_risk,solver_iters,wall_ms\n";
  for (const TrialRecord& t : trials) {
    out << format_sig(t.r) << ',' << t.n << ',' << t.rep << ',' << t.seed << ',' << estimator_name(t.estimator)
        << ',' << format_sig(t.excess_risk) << ',' << format_sig(t.robust_risk) << ',' << t.solver_iterations
        << ',' << format_sig(t.wall_ms) << '\n';
  }
  if (!out) throw IoError(path + ": write failed");
}

void write_aggregate_csv(const std::string& path, const std::vector<AggregateRecord>& aggregates) {
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << "r,n,estimator,mean_excess,stderr_excess\n";
  for (const AggregateRecord& a : aggregates) {
    out << format_sig(a.r) << ',' << a.n << ',' << estimator_name(a.estimator) << ','
        << format_sig(a.mean_excess) << ',' << format_sig(a.stderr_excess) << '\n';
  }
  if (!out) throw IoError(path + ": write failed");
}

void write_slopes_csv(const std::string& path, const std::vector<SlopeRecord>& slopes) {
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << "r,estimator,loglog_slope\n";
  for (const SlopeRecord& s : slopes) {
    out << format_sig(s.r) << ',' << estimator_name(s.estimator) << ',' << format_sig(s.slope) << '\n';
  }
  if (!out) throw IoError(path + ": write failed");
}

namespace {

std::string series_color(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::plugin: return "#1f77b4";
    case EstimatorKind::known_sigma: return "#2ca02c";
    case EstimatorKind::mean_baseline: return "#d62728";
  }
  return "#000";
}

void probe_writable(const std::vector<std::string>& paths) {
  for (const std::string& path : paths) {
    std::ofstream probe(path);
    if (!probe) throw IoError(path + ": output directory is not writable");
  }
}

std::string join(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  return dir.back() == '/' ? dir + name : dir + "/" + name;
}

}  // namespace

void write_panels_svg(const std::string& path, const ExperimentResult& result,
                      const ExperimentConfig& config) {
  std::vector<SvgPanel> panels;
  char title[48];
  for (double r : config.r_set) {
    SvgPanel panel;
    std::snprintf(title, sizeof(title), "r = %g", r);
    panel.title = title;
    for (EstimatorKind kind : config.estimators) {
      SvgSeries series;
      series.label = estimator_name(kind);
      series.color = series_color(kind);
      for (const AggregateRecord& a : result.aggregates) {
        if (a.r == r && a.estimator == kind) {
          series.points.emplace_back(static_cast<double>(a.n), a.mean_excess);
        }
      }
      panel.series.push_back(std::move(series));
    }
    panels.push_back(std::move(panel));
  }
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << render_loglog_panels(panels, "training samples n", "mean excess risk");
  if (!out) throw IoError(path + ": write failed");
}

ExperimentResult run_figure1(const ExperimentConfig& config) {
  config.validate();
  const std::string trials_path = join(config.output_dir, "trials.csv");
  const std::string agg_path = join(config.output_dir, "aggregate.csv");
  const std::string svg_path = join(config.output_dir, "figure1.svg");
  probe_writable({trials_path, agg_path, svg_path});
  ExperimentResult result = run_experiment(config);
  write_trials_csv(trials_path, result.trials);
  write_aggregate_csv(agg_path, result.aggregates);
  write_panels_svg(svg_path, result, config);
  return result;
}

ExperimentResult run_rate_study(ExperimentConfig config) {
  config.estimators = {EstimatorKind::plugin, EstimatorKind::known_sigma};
  config.validate();
  const std::string trials_path = join(config.output_dir, "rate_trials.csv");
  const std::string agg_path = join(config.output_dir, "rate_aggregate.csv");
  const std::string slopes_path = join(config.output_dir, "rate_slopes.csv");
  const std::string svg_path = join(config.output_dir, "rate_study.svg");
  probe_writable({trials_path, agg_path, slopes_path, svg_path});
  ExperimentResult result = run_experiment(config);
  write_trials_csv(trials_path, result.trials);
  write_aggregate_csv(agg_path, result.aggregates);
  write_slopes_csv(slopes_path, result.slopes);
  write_panels_svg(svg_path, result, config);
  return result;
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(s);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

ExperimentConfig read_config_file(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open for reading");
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw IoError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    try {
      if (key == "r_set") {
        base.r_set.clear();
        for (const std::string& v : split_list(value)) base.r_set.push_back(std::stod(v));
      } else if (key == "n_set") {
        base.n_set.clear();
        for (const std::string& v : split_list(value)) base.n_set.push_back(std::stol(v));
      } else if (key == "reps") {
        base.reps = std::stoi(value);
      } else if (key == "d") {
        base.d = std::stoi(value);
      } else if (key == "ball") {
        base.ball = BallSpec::parse(value);
      } else if (key == "eps") {
        base.eps = std::stod(value);
      } else if (key == "master_seed") {
        base.master_seed = std::stoull(value);
      } else if (key == "estimators") {
        base.estimators.clear();
        for (const std::string& v : split_list(value)) base.estimators.push_back(parse_estimator(v));
      } else if (key == "ridge") {
        base.ridge = std::stod(value);
      } else if (key == "output_dir") {
        base.output_dir = value;
      } else if (key == "jobs") {
        base.jobs = std::stoi(value);
      } else {
        throw IoError(path + ":" + std::to_string(lineno) + ": unknown key \"" + key + "\"");
      }
    } catch (const IoError&) {
      throw;
    } catch (const std::exception& e) {
      throw IoError(path + ":" + std::to_string(lineno) + ": bad value for \"" + key + "\": " + e.what());
    }
  }
  return base;
}

}  // namespace robustgauss
