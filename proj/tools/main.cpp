// Command-line front end. Exit codes: 0 success, 2 usage error,
// 3 numerical failure, 4 I/O error.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "robustgauss/estimators.hpp"
#include "robustgauss/experiment.hpp"
#include "robustgauss/io.hpp"
#include "robustgauss/risk.hpp"

using namespace robustgauss;

namespace {

struct ModelArgs {
  std::string mu_path;
  std::string sigma_path;

  GaussianMixture load() const {
    Vec mu = read_vector_file(mu_path);
    Mat sigma = read_matrix_file(sigma_path);
    return GaussianMixture(std::move(mu), SpdMatrix::cholesky(sigma));
  }
};

struct AdversaryArgs {
  std::string ball_text = "linf";
  double eps = 0.0;

  BallSpec ball() const { return BallSpec::parse(ball_text); }
};

void add_model_flags(CLI::App* cmd, ModelArgs& args) {
  cmd->add_option("--mu", args.mu_path, "mean vector file")->required();
  cmd->add_option("--sigma", args.sigma_path, "covariance matrix file")->required();
}

void add_adversary_flags(CLI::App* cmd, AdversaryArgs& args, bool require) {
  auto* ball_opt = cmd->add_option("--ball", args.ball_text, "perturbation ball: linf, l2, l1, or lp:<p>");
  auto* eps_opt = cmd->add_option("--eps", args.eps, "perturbation budget (>= 0)");
  if (require) {
    ball_opt->required();
    eps_opt->required();
  }
}

struct ExperimentArgs {
  ExperimentConfig flags;  // values set by CLI flags
  std::string config_path;
  std::vector<std::string> estimators;
  std::string ball_text;

  void add_to(CLI::App* cmd, bool with_estimators) {
    cmd->add_option("--config", config_path, "key = value config file");
    cmd->add_option("--seed", flags.master_seed, "master seed (64-bit)");
    cmd->add_option("--out", flags.output_dir, "output directory");
    cmd->add_option("--jobs", flags.jobs, "worker threads");
    cmd->add_option("--d", flags.d, "dimension");
    cmd->add_option("--eps", flags.eps, "perturbation budget");
    cmd->add_option("--reps", flags.reps, "repetitions per grid cell");
    cmd->add_option("--ridge", flags.ridge, "ridge added to the sample covariance");
    cmd->add_option("--ball", ball_text, "perturbation ball: linf, l2, l1, or lp:<p>");
    cmd->add_option("--r-set", flags.r_set, "signal levels r")->delimiter(',');
    cmd->add_option("--n-set", flags.n_set, "sample sizes n")->delimiter(',');
    if (with_estimators) {
      cmd->add_option("--estimators", estimators, "subset of plugin,known_sigma,mean_baseline")
          ->delimiter(',');
    }
  }

  // Config file first, CLI flags on top.
  ExperimentConfig resolve(CLI::App* cmd) const {
    ExperimentConfig config = config_path.empty() ? ExperimentConfig{} : read_config_file(config_path);
    if (cmd->count("--seed")) config.master_seed = flags.master_seed;
    if (cmd->count("--out")) config.output_dir = flags.output_dir;
    if (cmd->count("--jobs")) config.jobs = flags.jobs;
    if (cmd->count("--d")) config.d = flags.d;
    if (cmd->count("--eps")) config.eps = flags.eps;
    if (cmd->count("--reps")) config.reps = flags.reps;
    if (cmd->count("--ridge")) config.ridge = flags.ridge;
    if (cmd->count("--ball")) config.ball = BallSpec::parse(ball_text);
    if (cmd->count("--r-set")) config.r_set = flags.r_set;
    if (cmd->count("--n-set")) config.n_set = flags.n_set;
    if (!estimators.empty()) {
      config.estimators.clear();
      for (const std::string& name : estimators) config.estimators.push_back(parse_estimator(name));
    }
    return config;
  }
};

void print_vector(const Vec& v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (i) std::printf(",");
    std::printf("%s", format_sig(v[i]).c_str());
  }
  std::printf("\n");
}

void print_experiment_summary(const ExperimentResult& result, const ExperimentConfig& config) {
  std::printf("%zu trials, %zu aggregates written to %s\n", result.trials.size(), result.aggregates.size(),
              config.output_dir.c_str());
  for (const SlopeRecord& s : result.slopes) {
    std::printf("slope r=%s %s: %s\n", format_sig(s.r).c_str(), estimator_name(s.estimator).c_str(),
                format_sig(s.slope).c_str());
  }
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Robust classification calculus for two-component Gaussian mixtures"};
  app.require_subcommand(1);

  auto* sample_cmd = app.add_subcommand("sample", "draw labeled data from a Gaussian mixture");
  ModelArgs sample_model;
  long sample_n = 0;
  std::uint64_t sample_seed = 0;
  std::string sample_out;
  add_model_flags(sample_cmd, sample_model);
  sample_cmd->add_option("--n", sample_n, "number of samples")->required();
  sample_cmd->add_option("--seed", sample_seed, "sampling seed")->required();
  sample_cmd->add_option("--out", sample_out, "output dataset CSV")->required();

  auto* advsnr_cmd = app.add_subcommand("advsnr", "adversarial signal-to-noise ratio of a model");
  ModelArgs advsnr_model;
  AdversaryArgs advsnr_adv;
  add_model_flags(advsnr_cmd, advsnr_model);
  add_adversary_flags(advsnr_cmd, advsnr_adv, true);

  auto* optrisk_cmd = app.add_subcommand("optimal-risk", "minimal robust classification error");
  ModelArgs optrisk_model;
  AdversaryArgs optrisk_adv;
  add_model_flags(optrisk_cmd, optrisk_model);
  add_adversary_flags(optrisk_cmd, optrisk_adv, true);

  auto* risk_cmd = app.add_subcommand("risk", "risk report for a linear classifier");
  ModelArgs risk_model;
  AdversaryArgs risk_adv;  // optional: omitting the flags means no adversary
  std::string risk_w_path;
  risk_cmd->add_option("--w", risk_w_path, "weight vector file")->required();
  add_model_flags(risk_cmd, risk_model);
  add_adversary_flags(risk_cmd, risk_adv, false);

  auto* fit_cmd = app.add_subcommand("fit", "fit an estimator to a dataset");
  std::string fit_data_path, fit_estimator = "plugin", fit_sigma_path, fit_out_w;
  AdversaryArgs fit_adv;
  double fit_ridge = 0.0;
  fit_cmd->add_option("--data", fit_data_path, "dataset CSV")->required();
  fit_cmd->add_option("--estimator", fit_estimator, "plugin, known_sigma, or mean_baseline");
  fit_cmd->add_option("--sigma", fit_sigma_path, "known covariance file (known_sigma only)");
  fit_cmd->add_option("--ridge", fit_ridge, "ridge for the plug-in covariance");
  fit_cmd->add_option("--out-w", fit_out_w, "write the weights to this file instead of stdout");
  add_adversary_flags(fit_cmd, fit_adv, false);

  auto* make_cmd = app.add_subcommand("make-instance", "mean with a prescribed post-attack separation");
  std::string make_mu_prime_path, make_sigma_path, make_out;
  AdversaryArgs make_adv;
  make_cmd->add_option("--mu-prime", make_mu_prime_path, "target effective mean file")->required();
  make_cmd->add_option("--sigma", make_sigma_path, "covariance matrix file")->required();
  make_cmd->add_option("--out", make_out, "write the constructed mean to this file");
  add_adversary_flags(make_cmd, make_adv, true);

  auto* fig_cmd = app.add_subcommand("figure1", "run the excess-risk sweep and plot it");
  ExperimentArgs fig_args;
  fig_args.add_to(fig_cmd, true);

  auto* rate_cmd = app.add_subcommand("rate-study", "excess-risk rates for plugin and known-sigma");
  ExperimentArgs rate_args;
  rate_args.add_to(rate_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (sample_cmd->parsed()) {
    const GaussianMixture model = sample_model.load();
    const Dataset data = sample(model, sample_n, sample_seed);
    write_dataset_csv(sample_out, data);
    std::printf("wrote %ld samples to %s\n", static_cast<long>(data.n()), sample_out.c_str());
    return 0;
  }

  if (advsnr_cmd->parsed()) {
    const GaussianMixture model = advsnr_model.load();
    std::printf("%s\n", format_sig(adv_snr(model, advsnr_adv.ball(), advsnr_adv.eps)).c_str());
    return 0;
  }

  if (optrisk_cmd->parsed()) {
    const GaussianMixture model = optrisk_model.load();
    std::printf("%s\n", format_sig(optimal_robust_risk(model, optrisk_adv.ball(), optrisk_adv.eps)).c_str());
    return 0;
  }

  if (risk_cmd->parsed()) {
    const GaussianMixture model = risk_model.load();
    const LinearClassifier clf(read_vector_file(risk_w_path));
    const RiskReport report = risk_report(clf, model, risk_adv.ball(), risk_adv.eps);
    std::printf("robust_risk %s\n", format_sig(report.robust_risk).c_str());
    std::printf("standard_risk %s\n", format_sig(report.standard_risk).c_str());
    std::printf("optimal_robust_risk %s\n", format_sig(report.optimal_robust_risk).c_str());
    std::printf("excess_risk %s\n", format_sig(report.excess_risk).c_str());
    std::printf("adv_snr %s\n", format_sig(report.adv_snr).c_str());
    std::printf("std_snr %s\n", format_sig(report.std_snr).c_str());
    return 0;
  }

  if (fit_cmd->parsed()) {
    const Dataset data = read_dataset_csv(fit_data_path);
    const EstimatorKind kind = parse_estimator(fit_estimator);
    FitResult fit = [&] {
      switch (kind) {
        case EstimatorKind::plugin: {
          FitOptions opts;
          opts.ridge = fit_ridge;
          return fit_plugin(data, fit_adv.ball(), fit_adv.eps, opts);
        }
        case EstimatorKind::known_sigma: {
          if (fit_sigma_path.empty()) {
            throw std::invalid_argument("--sigma is required for the known_sigma estimator");
          }
          const SpdMatrix sigma = SpdMatrix::cholesky(read_matrix_file(fit_sigma_path));
          return fit_known_sigma(data, sigma, fit_adv.ball(), fit_adv.eps);
        }
        case EstimatorKind::mean_baseline:
          return fit_mean_baseline(data);
      }
      throw std::logic_error("unreachable");
    }();
    if (!fit_out_w.empty()) {
      write_vector_file(fit_out_w, fit.classifier.w);
    } else {
      print_vector(fit.classifier.w);
    }
    std::fprintf(stderr, "solver: %ld iterations, fw_gap %s, converged %d\n", fit.solver.iterations,
                 format_sig(fit.solver.fw_gap).c_str(), fit.solver.converged ? 1 : 0);
    return 0;
  }

  if (make_cmd->parsed()) {
    const Vec mu_prime = read_vector_file(make_mu_prime_path);
    const SpdMatrix sigma = SpdMatrix::cholesky(read_matrix_file(make_sigma_path));
    const AdvInstance inst = make_adv_instance(mu_prime, sigma, make_adv.ball(), make_adv.eps);
    if (inst.degenerate) {
      std::fprintf(stderr, "warning: mu' = 0 gives a degenerate instance (AdvSNR 0)\n");
    }
    if (!make_out.empty()) {
      write_vector_file(make_out, inst.model.mu);
    } else {
      print_vector(inst.model.mu);
    }
    return 0;
  }

  if (fig_cmd->parsed()) {
    const ExperimentConfig config = fig_args.resolve(fig_cmd);
    print_experiment_summary(run_figure1(config), config);
    return 0;
  }

  if (rate_cmd->parsed()) {
    const ExperimentConfig config = rate_args.resolve(rate_cmd);
    print_experiment_summary(run_rate_study(config), config);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
