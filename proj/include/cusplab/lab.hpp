#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cusplab/asymptotics.hpp"
#include "cusplab/laplace2d.hpp"
#include "cusplab/profiles.hpp"
#include "cusplab/schrodinger1d.hpp"

namespace cusplab {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResourceRefusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string profile = "power:alpha=2";
  std::string sigma = "const:v=1";
  std::string sigma2;  // optional second coefficient (pair mode)
  double lambda_lo = 100.0;
  double lambda_hi = 1000.0;
  int lambda_steps = 5;
  bool log_sweep = true;
  std::vector<std::string> routes = {"modesum", "predict"};
  int nx = 0;           // 0 = auto
  int nt = 0;           // 0 = auto
  double xmax = 0.0;    // 0 = auto (also pins X in convergence studies)
  double resolution = 10.0;
  std::string out_dir = ".";
  int threads = 1;
  unsigned seed = 12345;

  void validate() const;
};

// Flat key=value file; '#' starts a comment line. Unknown keys are errors.
ExperimentConfig load_config(const std::string& path);
void apply_config_line(ExperimentConfig& cfg, const std::string& key,
                       const std::string& value);

std::vector<double> lambda_sweep(const ExperimentConfig& cfg);

CuspProfile config_profile(const ExperimentConfig& cfg);
BoundaryCoefficient config_sigma(const ExperimentConfig& cfg);

// Mesh sizing rules for the 2D route (X from the 1D truncation rule on W_σ,
// geometric-x shrink rule and transverse mode resolution for nx/nt).
struct MeshPlan {
  double X = 0.0;
  int nx = 0;
  int nt = 0;
  size_t dof_estimate = 0;
  size_t bytes_estimate = 0;
};
MeshPlan plan_mesh(const CuspProfile& p, const BoundaryCoefficient& s,
                   double lambda_max, const ExperimentConfig& cfg);

struct RouteResult {
  std::string route;
  bool ok = false;
  double value = 0.0;
  long count = 0;
  double seconds = 0.0;
  std::string error;
  double X = 0.0;
  int n = 0;
  int modes = 0;
};

struct ComparisonRow {
  double lambda = 0.0;
  std::vector<RouteResult> results;
  const RouteResult* find(const std::string& route) const;
  std::optional<double> ratio_to_predict(const std::string& route) const;
};

struct RunOutput {
  std::vector<ComparisonRow> rows;
  bool any_failure = false;
  std::string csv_path;
  std::string json_path;
};

RunOutput run(const ExperimentConfig& cfg);

struct ConvergenceLevel {
  int level = 0;
  int nx = 0, nt = 0;
  double X = 0.0;
  long count2d = -1;
  long modesum = -1;
};

// Halves h (doubles nx, nt) per level; doubles X unless cfg.xmax pins it.
std::vector<ConvergenceLevel> convergence_study(const ExperimentConfig& cfg,
                                                int refinements,
                                                double lambda);

struct ScalingRow {
  double lambda = 0.0;
  double eps = 0.0;
  long n = 0, n_plus = 0, n_minus = 0;
  double empirical_constant = 0.0;  // max |N±/N - 1| / eps
};

// N_λ((1±ε)H) via N_{λ/(1±ε)}(H); b_variant uses the k=1 Dirichlet mode
// potential instead of W_σ.
std::vector<ScalingRow> scaling_sweep(const ExperimentConfig& cfg,
                                      const std::vector<double>& epsilons,
                                      bool b_variant = false);

// Formats a double with 17 significant digits (%.17g).
std::string fmt17(double v);

// "lo:hi:steps" -> log-spaced sweep; a single number -> one-element sweep.
std::vector<double> parse_range_spec(const std::string& spec);

}  // namespace cusplab
