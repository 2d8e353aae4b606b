#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "robustgauss/experiment.hpp"
#include "robustgauss/io.hpp"
#include "robustgauss/risk.hpp"
#include "testers.hpp"

using namespace robustgauss;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("robustgauss_exp_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

ExperimentConfig tiny_config() {
  ExperimentConfig config;
  config.r_set = {1.0};
  config.n_set = {50, 100};
  config.reps = 3;
  config.d = 8;
  config.eps = 0.1;
  config.ball = BallSpec::linf();
  config.master_seed = 7;
  config.estimators = {EstimatorKind::plugin, EstimatorKind::mean_baseline};
  config.ridge = 1e-8;
  return config;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// trials.csv minus the timing column, which is the one nondeterministic field.
std::string strip_wall_ms(const std::string& csv) {
  std::stringstream out;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.rfind(',');
    out << line.substr(0, pos) << '\n';
  }
  return out.str();
}

}  // namespace

TEST_CASE("experiment model matches the caption construction") {
  ExperimentConfig config;
  config.d = 50;
  config.eps = 0.1;
  const GaussianMixture model = experiment_model(config, 1.0);
  CHECK(model.mu[0] == doctest::Approx(1.1).epsilon(1e-15));
  for (Index i = 1; i < 50; ++i) CHECK(model.mu[i] == 0.1);
  CHECK((model.sigma.matrix() - Mat::Identity(50, 50)).norm() == 0.0);
  // Clipping oracle: optimal risk is phi_bar(r).
  CHECK(std::abs(optimal_robust_risk(model, config.ball, config.eps) - phi_bar(1.0)) <= 1e-9);
}

TEST_CASE("tiny run produces the expected record counts") {
  ExperimentConfig config = tiny_config();
  config.r_set = {1.0};
  config.n_set = {50};
  config.reps = 1;
  const ExperimentResult result = run_experiment(config);
  CHECK(result.trials.size() == 2);  // one per estimator
  CHECK(result.aggregates.size() == 2);
  for (const TrialRecord& t : result.trials) CHECK(t.excess_risk >= -1e-8);
}

TEST_CASE("aggregates are the means of their trial rows") {
  const ExperimentConfig config = tiny_config();
  const ExperimentResult result = run_experiment(config);
  for (const AggregateRecord& agg : result.aggregates) {
    double sum = 0.0;
    int count = 0;
    for (const TrialRecord& t : result.trials) {
      if (t.r == agg.r && t.n == agg.n && t.estimator == agg.estimator) {
        sum += t.excess_risk;
        ++count;
      }
    }
    REQUIRE(count == config.reps);
    CHECK(agg.mean_excess == doctest::Approx(sum / count).epsilon(1e-12));
  }
}

TEST_CASE("serial and parallel runs agree") {
  ExperimentConfig config = tiny_config();
  config.jobs = 1;
  const ExperimentResult serial = run_experiment(config);
  config.jobs = 4;
  const ExperimentResult parallel = run_experiment(config);
  REQUIRE(serial.trials.size() == parallel.trials.size());
  for (std::size_t i = 0; i < serial.trials.size(); ++i) {
    CHECK(serial.trials[i].seed == parallel.trials[i].seed);
    CHECK(serial.trials[i].excess_risk == parallel.trials[i].excess_risk);
    CHECK(serial.trials[i].robust_risk == parallel.trials[i].robust_risk);
  }
  for (std::size_t i = 0; i < serial.aggregates.size(); ++i) {
    CHECK(serial.aggregates[i].mean_excess == parallel.aggregates[i].mean_excess);
  }
}

TEST_CASE("figure output is reproducible from the master seed") {
  TempDir a, b;
  ExperimentConfig config = tiny_config();
  config.output_dir = a.path.string();
  run_figure1(config);
  config.output_dir = b.path.string();
  config.jobs = 2;
  run_figure1(config);

  CHECK(slurp(a.file("aggregate.csv")) == slurp(b.file("aggregate.csv")));
  CHECK(strip_wall_ms(slurp(a.file("trials.csv"))) == strip_wall_ms(slurp(b.file("trials.csv"))));
}

TEST_CASE("figure csv headers match the documented schemas") {
  TempDir dir;
  ExperimentConfig config = tiny_config();
  config.output_dir = dir.path.string();
  run_figure1(config);
  std::ifstream trials(dir.file("trials.csv"));
  std::string line;
  std::getline(trials, line);
  CHECK(line == "r,n,rep,seed,estimator,excess_risk,robust_risk,solver_iters,wall_ms");
  std::ifstream agg(dir.file("aggregate.csv"));
  std::getline(agg, line);
  CHECK(line == "r,n,estimator,mean_excess,stderr_excess");
}

TEST_CASE("unwritable output fails before any computation") {
  ExperimentConfig config = tiny_config();
  config.output_dir = "/nonexistent/subdir";
  CHECK_THROWS_AS(run_figure1(config), IoError);
}

TEST_CASE("svg plot is written with one panel per r and one polyline per estimator") {
  TempDir dir;
  ExperimentConfig config = tiny_config();
  config.r_set = {0.5, 1.0};
  config.output_dir = dir.path.string();
  run_figure1(config);
  const std::string svg = slurp(dir.file("figure1.svg"));
  CHECK(svg.find("<svg") != std::string::npos);
  std::size_t polylines = 0;
  for (std::size_t pos = 0; (pos = svg.find("<polyline", pos)) != std::string::npos; ++pos) ++polylines;
  CHECK(polylines == config.r_set.size() * config.estimators.size());
  CHECK(svg.find("r = 0.5") != std::string::npos);
  CHECK(svg.find("r = 1") != std::string::npos);
  CHECK(svg.find("mean excess risk") != std::string::npos);
}

TEST_CASE("rate study emits slopes for both estimators") {
  TempDir dir;
  ExperimentConfig config = tiny_config();
  config.n_set = {50, 100, 200, 400};
  config.reps = 2;
  config.output_dir = dir.path.string();
  const ExperimentResult result = run_rate_study(config);
  CHECK(result.slopes.size() == 2);  // one r, two estimators
  const std::string slopes = slurp(dir.file("rate_slopes.csv"));
  CHECK(slopes.find("r,estimator,loglog_slope") == 0);
  CHECK(slopes.find("plugin") != std::string::npos);
  CHECK(slopes.find("known_sigma") != std::string::npos);
}

TEST_CASE("loglog slope recovers an exact power law") {
  std::vector<AggregateRecord> aggs;
  for (long n : {100L, 200L, 400L, 800L}) {
    AggregateRecord a;
    a.r = 1.0;
    a.n = n;
    a.estimator = EstimatorKind::plugin;
    a.mean_excess = 3.0 / static_cast<double>(n);
    aggs.push_back(a);
  }
  CHECK(fit_loglog_slope(aggs, 1.0, EstimatorKind::plugin, 100, 800) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::isnan(fit_loglog_slope(aggs, 2.0, EstimatorKind::plugin, 100, 800)));
}

TEST_CASE("config files override defaults and reject unknown keys") {
  TempDir dir;
  {
    std::ofstream out(dir.file("good.cfg"));
    out << "# sweep setup\n";
    out << "d = 12\n";
    out << "eps = 0.25\n";
    out << "ball = lp:1.5\n";
    out << "r_set = 0.5, 2.0\n";
    out << "n_set = 10,20\n";
    out << "reps = 4\n";
    out << "master_seed = 99\n";
    out << "estimators = plugin, known_sigma\n";
    out << "ridge = 0.001\n";
    out << "jobs = 2\n";
    out << "output_dir = /tmp/somewhere\n";
  }
  const ExperimentConfig config = read_config_file(dir.file("good.cfg"));
  CHECK(config.d == 12);
  CHECK(config.eps == 0.25);
  CHECK(config.ball.p() == 1.5);
  CHECK(config.r_set == std::vector<double>{0.5, 2.0});
  CHECK(config.n_set == std::vector<long>{10, 20});
  CHECK(config.reps == 4);
  CHECK(config.master_seed == 99);
  CHECK(config.estimators.size() == 2);
  CHECK(config.ridge == 0.001);
  CHECK(config.jobs == 2);
  CHECK(config.output_dir == "/tmp/somewhere");

  {
    std::ofstream out(dir.file("bad_key.cfg"));
    out << "dee = 12\n";
  }
  CHECK_THROWS_AS(read_config_file(dir.file("bad_key.cfg")), IoError);

  {
    std::ofstream out(dir.file("bad_value.cfg"));
    out << "d = twelve\n";
  }
  try {
    read_config_file(dir.file("bad_value.cfg"));
    FAIL("expected a throw");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find(":1:") != std::string::npos);
  }
}

TEST_CASE("config validation rejects bad grids") {
  ExperimentConfig config = tiny_config();
  config.r_set = {0.0};
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = tiny_config();
  config.n_set.clear();
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = tiny_config();
  config.reps = 0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("estimator names round trip") {
  for (EstimatorKind kind :
       {EstimatorKind::plugin, EstimatorKind::known_sigma, EstimatorKind::mean_baseline}) {
    CHECK(parse_estimator(estimator_name(kind)) == kind);
  }
  CHECK_THROWS_AS(parse_estimator("unknown"), std::invalid_argument);
}
