#include "cusplab/lab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace cusplab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> parse_range_spec(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() == 1) return {std::stod(parts[0])};
  if (parts.size() != 3)
    throw ConfigError("range spec must be a number or lo:hi:steps: " + spec);
  const double lo = std::stod(parts[0]);
  const double hi = std::stod(parts[1]);
  const int steps = std::stoi(parts[2]);
  if (!(hi > lo) || !(lo > 0.0) || steps < 1)
    throw ConfigError("range spec needs hi > lo > 0 and steps >= 1: " + spec);
  std::vector<double> out;
  if (steps == 1) return {lo};
  for (int i = 0; i < steps; ++i) {
    out.push_back(lo * std::pow(hi / lo, double(i) / (steps - 1)));
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (routes.empty()) throw ConfigError("at least one route is required");
  for (const auto& r : routes) {
    if (r != "count2d" && r != "modesum" && r != "predict")
      throw ConfigError("unknown route: " + r);
  }
  if (!(lambda_hi > lambda_lo) || !(lambda_lo > 0.0))
    throw ConfigError("lambda sweep needs hi > lo > 0");
  if (lambda_steps < 1) throw ConfigError("lambda_steps must be >= 1");
  if (resolution < 10.0) throw ConfigError("resolution must be >= 10");
  if (threads < 1) throw ConfigError("threads must be >= 1");
}

void apply_config_line(ExperimentConfig& cfg, const std::string& key,
                       const std::string& value) {
  if (key == "profile") cfg.profile = value;
  else if (key == "sigma") cfg.sigma = value;
  else if (key == "sigma2") cfg.sigma2 = value;
  else if (key == "lambda_lo") cfg.lambda_lo = std::stod(value);
  else if (key == "lambda_hi") cfg.lambda_hi = std::stod(value);
  else if (key == "lambda_steps") cfg.lambda_steps = std::stoi(value);
  else if (key == "log_sweep") cfg.log_sweep = (value == "1" || value == "true");
  else if (key == "routes") cfg.routes = split(value, ',');
  else if (key == "nx") cfg.nx = std::stoi(value);
  else if (key == "nt") cfg.nt = std::stoi(value);
  else if (key == "xmax") cfg.xmax = std::stod(value);
  else if (key == "resolution") cfg.resolution = std::stod(value);
  else if (key == "out_dir") cfg.out_dir = value;
  else if (key == "threads") cfg.threads = std::stoi(value);
  else if (key == "seed") cfg.seed = static_cast<unsigned>(std::stoul(value));
  else throw ConfigError("unknown config key: " + key);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  ExperimentConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line is not key=value: " + line);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    apply_config_line(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

std::vector<double> lambda_sweep(const ExperimentConfig& cfg) {
  std::vector<double> out;
  if (cfg.lambda_steps == 1) return {cfg.lambda_lo};
  for (int i = 0; i < cfg.lambda_steps; ++i) {
    const double u = double(i) / (cfg.lambda_steps - 1);
    out.push_back(cfg.log_sweep
                      ? cfg.lambda_lo * std::pow(cfg.lambda_hi / cfg.lambda_lo, u)
                      : cfg.lambda_lo + (cfg.lambda_hi - cfg.lambda_lo) * u);
  }
  return out;
}

CuspProfile config_profile(const ExperimentConfig& cfg) {
  return parse_profile_spec(cfg.profile);
}

BoundaryCoefficient config_sigma(const ExperimentConfig& cfg) {
  BoundaryCoefficient s = parse_sigma_spec(cfg.sigma);
  if (!cfg.sigma2.empty()) {
    s = make_pair_sigma(std::move(s), parse_sigma_spec(cfg.sigma2));
  }
  return s;
}

MeshPlan plan_mesh(const CuspProfile& p, const BoundaryCoefficient& s,
                   double lambda_max, const ExperimentConfig& cfg) {
  MeshPlan plan;
  if (cfg.xmax > 0.0) {
    plan.X = cfg.xmax;
  } else {
    auto W = [&p, &s](double x) { return eval_W(p, s, x); };
    plan.X = build_grid(p.a, lambda_max, W, cfg.resolution).X;
  }

  if (cfg.nx > 0) {
    plan.nx = cfg.nx;
  } else {
    // Geometric cells must shrink f by <= 3% each; the x-resolution must
    // also track the fastest oscillation sqrt(lambda).
    double shrink_cells = 64;
    if (p.kind == ProfileKind::PowerLaw) {
      shrink_cells = p.param * std::log(plan.X / p.a) / std::log(1.0 / 0.97);
    }
    const double h_osc = 2.0 * kPi / (cfg.resolution * std::sqrt(lambda_max));
    const double osc_cells = (plan.X - p.a) / h_osc;
    plan.nx = static_cast<int>(
        std::clamp(std::max(shrink_cells, osc_cells), 64.0, 4000.0));
  }

  if (cfg.nt > 0) {
    plan.nt = cfg.nt;
  } else {
    // Resolve every transverse mode open at the domain's widest point.
    const double f_max = std::max(p.f(p.a), p.f(plan.X));
    const int k_max = std::max(
        1, static_cast<int>(std::ceil(2.0 * f_max * std::sqrt(lambda_max) / kPi)));
    plan.nt = std::clamp(10 * k_max, 16, 200);
  }

  plan.dof_estimate = size_t(plan.nx + 1) * size_t(plan.nt + 1);
  plan.bytes_estimate = plan.dof_estimate * size_t(plan.nt + 3) * 8 * 3;
  return plan;
}

const RouteResult* ComparisonRow::find(const std::string& route) const {
  for (const auto& r : results)
    if (r.route == route) return &r;
  return nullptr;
}

std::optional<double> ComparisonRow::ratio_to_predict(
    const std::string& route) const {
  const RouteResult* p = find("predict");
  const RouteResult* r = find(route);
  if (!p || !r || !p->ok || !r->ok || !(p->value > 0.0)) return std::nullopt;
  return r->value / p->value;
}

namespace {

RouteResult run_route(const std::string& route, const ExperimentConfig& cfg,
                      const CuspProfile& p, const BoundaryCoefficient& s,
                      double lambda) {
  RouteResult res;
  res.route = route;
  const double t0 = now_seconds();
  try {
    if (route == "predict") {
      const SpectralPrediction pred = composite_prediction(p, s, lambda);
      res.value = pred.total;
      res.ok = true;
    } else if (route == "modesum") {
      ModeSumOptions opts;
      opts.resolution = cfg.resolution;
      if (cfg.xmax > 0.0) opts.X_override = cfg.xmax;
      const CountResult r = mode_sum_count(p, s, false, lambda, p.a, opts);
      res.value = static_cast<double>(r.count);
      res.count = r.count;
      res.X = r.X;
      res.n = r.n;
      res.modes = r.modes_used;
      res.ok = true;
    } else if (route == "count2d") {
      const MeshPlan plan = plan_mesh(p, s, lambda, cfg);
      if (plan.bytes_estimate > size_t(6) << 30) {
        throw ResourceRefusal("count2d: pencil would need " +
                              std::to_string(plan.bytes_estimate >> 20) +
                              " MiB; refine the plan");
      }
      const MappedMesh mesh = make_mesh(p, plan.X, plan.nx, plan.nt);
      const GeneralizedPencil pencil = assemble_robin(p, s, mesh, EdgeBcs{});
      const CountResult r = count_below_2d(pencil, lambda);
      res.value = static_cast<double>(r.count);
      res.count = r.count;
      res.X = plan.X;
      res.n = r.n;
      res.ok = true;
    }
  } catch (const std::exception& e) {
    res.ok = false;
    res.error = e.what();
  }
  res.seconds = now_seconds() - t0;
  return res;
}

void write_csv(const RunOutput& out, const ExperimentConfig& cfg,
               const std::string& path) {
  std::ofstream f(path);
  f << "lambda";
  for (const auto& r : cfg.routes) f << "," << r;
  for (const auto& r : cfg.routes) {
    if (r != "predict") f << ",ratio_" << r;
  }
  // No timing columns here: the file must be byte-identical across runs
  // at a fixed seed (timings live on RouteResult for interactive display).
  f << "\n";
  for (const auto& row : out.rows) {
    f << fmt17(row.lambda);
    for (const auto& rname : cfg.routes) {
      const RouteResult* r = row.find(rname);
      f << "," << (r && r->ok ? fmt17(r->value) : "nan");
    }
    for (const auto& rname : cfg.routes) {
      if (rname == "predict") continue;
      const auto ratio = row.ratio_to_predict(rname);
      f << "," << (ratio ? fmt17(*ratio) : "");
    }
    f << "\n";
  }
}

void write_summary_json(const RunOutput& out, const ExperimentConfig& cfg,
                        const CuspProfile& p, const std::string& path) {
  std::ofstream f(path);
  f << "{\n  \"schema_version\": 1,\n";
  f << "  \"profile\": \"" << cfg.profile << "\",\n";
  f << "  \"sigma\": \"" << cfg.sigma << "\",\n";
  f << "  \"regime\": \"" << to_string(classify_weyl_regime(p)) << "\",\n";
  f << "  \"any_failure\": " << (out.any_failure ? "true" : "false") << ",\n";
  f << "  \"slopes\": {";
  bool first = true;
  for (const auto& rname : cfg.routes) {
    std::vector<double> lx, ly;
    for (const auto& row : out.rows) {
      const RouteResult* r = row.find(rname);
      if (r && r->ok && r->value > 0.0) {
        lx.push_back(std::log(row.lambda));
        ly.push_back(std::log(r->value));
      }
    }
    if (lx.size() < 2) continue;
    if (!first) f << ",";
    first = false;
    f << "\n    \"" << rname << "\": " << fmt17(ls_slope(lx, ly));
  }
  f << "\n  },\n  \"rows\": " << out.rows.size() << "\n}\n";
}

}  // namespace

RunOutput run(const ExperimentConfig& cfg) {
  cfg.validate();
  const CuspProfile p = config_profile(cfg);
  const BoundaryCoefficient s = config_sigma(cfg);
  const std::vector<double> lambdas = lambda_sweep(cfg);

  RunOutput out;
  out.rows.resize(lambdas.size());

  const int nthreads =
      std::max(1, std::min(cfg.threads, static_cast<int>(lambdas.size())));
  std::vector<std::thread> pool;
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next.fetch_add(1); i < lambdas.size(); i = next.fetch_add(1)) {
      ComparisonRow row;
      row.lambda = lambdas[i];
      for (const auto& rname : cfg.routes) {
        row.results.push_back(run_route(rname, cfg, p, s, lambdas[i]));
      }
      out.rows[i] = std::move(row);
    }
  };
  if (nthreads == 1) {
    worker();
  } else {
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (const auto& row : out.rows) {
    for (const auto& r : row.results) {
      if (!r.ok) out.any_failure = true;
    }
  }

  std::filesystem::create_directories(cfg.out_dir);
  out.csv_path = cfg.out_dir + "/compare.csv";
  out.json_path = cfg.out_dir + "/summary.json";
  write_csv(out, cfg, out.csv_path);
  write_summary_json(out, cfg, p, out.json_path);
  return out;
}

std::vector<ConvergenceLevel> convergence_study(const ExperimentConfig& cfg,
                                                int refinements, double lambda) {
  if (refinements < 2) throw ConfigError("convergence study needs >= 2 levels");
  const CuspProfile p = config_profile(cfg);
  const BoundaryCoefficient s = config_sigma(cfg);
  const MeshPlan base = plan_mesh(p, s, lambda, cfg);

  const bool want_2d = std::count(cfg.routes.begin(), cfg.routes.end(),
                                  std::string("count2d")) > 0;
  const bool want_ms = std::count(cfg.routes.begin(), cfg.routes.end(),
                                  std::string("modesum")) > 0;
  std::vector<ConvergenceLevel> levels;
  for (int lev = 0; lev < refinements; ++lev) {
    ConvergenceLevel L;
    L.level = lev;
    const int scale = 1 << lev;
    L.nx = base.nx * scale;
    L.nt = base.nt * scale;
    L.X = (cfg.xmax > 0.0) ? cfg.xmax : base.X * scale;
    const size_t bytes = size_t(L.nx + 1) * (L.nt + 1) * (L.nt + 3) * 8 * 3;
    if (want_2d && bytes > (size_t(6) << 30)) {
      throw ResourceRefusal(
          "convergence level " + std::to_string(lev) + " needs ~" +
          std::to_string(bytes >> 20) + " MiB of pencil storage");
    }
    if (want_2d) {
      const MappedMesh mesh = make_mesh(p, L.X, L.nx, L.nt);
      const GeneralizedPencil pencil = assemble_robin(p, s, mesh, EdgeBcs{});
      L.count2d = count_below_2d(pencil, lambda).count;
    }
    if (want_ms) {
      ModeSumOptions opts;
      opts.resolution = cfg.resolution * scale;
      opts.X_override = L.X;
      L.modesum = mode_sum_count(p, s, false, lambda, p.a, opts).count;
    }
    levels.push_back(L);
  }
  return levels;
}

std::vector<ScalingRow> scaling_sweep(const ExperimentConfig& cfg,
                                      const std::vector<double>& epsilons,
                                      bool b_variant) {
  for (double e : epsilons) {
    if (!(e > 0.0) || e > 0.5) throw ConfigError("epsilon must lie in (0, 1/2]");
  }
  const CuspProfile p = config_profile(cfg);
  const BoundaryCoefficient s = config_sigma(cfg);

  std::vector<ScalingRow> rows;
  for (double lambda : lambda_sweep(cfg)) {
    const RealFn q = b_variant ? dirichlet_mode_potential(p, 1)
                               : mode_potential(p, s, 0);
    // One grid sized for the largest effective lambda of the row.
    const Grid1D grid = build_grid(p.a, 2.0 * lambda, q, cfg.resolution);
    const TridiagonalOperator T = assemble(grid, q, Bc::Dirichlet, Bc::Dirichlet);
    for (double eps : epsilons) {
      ScalingRow r;
      r.lambda = lambda;
      r.eps = eps;
      // N_λ((1±ε)H) = N_{λ/(1±ε)}(H)
      r.n = count_below(T, lambda).count;
      r.n_plus = count_below(T, lambda / (1.0 + eps)).count;
      r.n_minus = count_below(T, lambda / (1.0 - eps)).count;
      if (r.n > 0) {
        const double dev =
            std::max(std::abs(double(r.n_plus) / r.n - 1.0),
                     std::abs(double(r.n_minus) / r.n - 1.0));
        r.empirical_constant = dev / eps;
      }
      rows.push_back(r);
    }
  }
  return rows;
}

}  // namespace cusplab
