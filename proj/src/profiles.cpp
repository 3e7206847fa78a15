#include "cusplab/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace cusplab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool strictly_decreasing_tail(const std::vector<double>& v) {
  const size_t n = v.size();
  return n >= 3 && v[n - 1] < v[n - 2] && v[n - 2] < v[n - 3];
}

bool strictly_increasing_tail(const std::vector<double>& v) {
  const size_t n = v.size();
  return n >= 3 && v[n - 1] > v[n - 2] && v[n - 2] > v[n - 3];
}

Verdict trend_to_zero(const std::vector<double>& abs_vals) {
  const size_t n = abs_vals.size();
  if (strictly_decreasing_tail(abs_vals)) return Verdict::Holds;
  // Already negligible relative to the first probe: converged to zero.
  if (abs_vals[n - 1] <= 1e-12 * (std::abs(abs_vals.front()) + 1e-300))
    return Verdict::Holds;
  // A flat or growing tail at a non-negligible level does not tend to zero.
  if (abs_vals[n - 1] >= abs_vals[n - 2] && abs_vals[n - 2] >= abs_vals[n - 3])
    return Verdict::Fails;
  return Verdict::Inconclusive;
}

Verdict trend_to_infinity(const std::vector<double>& vals) {
  const size_t n = vals.size();
  if (strictly_increasing_tail(vals)) return Verdict::Holds;
  if (vals[n - 1] <= vals[n - 2] && vals[n - 2] <= vals[n - 3])
    return Verdict::Fails;
  return Verdict::Inconclusive;
}

double parse_kv(const std::string& body, const std::string& key) {
  // body looks like "alpha=2" or "s=1,beta=0.5"
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) continue;
    if (item.substr(0, eq) == key) return std::stod(item.substr(eq + 1));
  }
  throw std::invalid_argument("spec missing key '" + key + "' in: " + body);
}

}  // namespace

bool AssumptionReport::all_hold() const {
  // The Neumann criterion is a diagnostic, not a standing assumption: the
  // Robin problem stays discrete even when the Neumann one is not.
  return std::all_of(checks.begin(), checks.end(), [](const AssumptionCheck& c) {
    return c.name == "neumann_criterion" || c.verdict == Verdict::Holds;
  });
}

const AssumptionCheck* AssumptionReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

CuspProfile make_power_profile(double alpha, double a) {
  if (!(alpha > 0.0)) throw std::invalid_argument("power profile: alpha must be positive");
  CuspProfile p;
  p.a = a;
  p.kind = ProfileKind::PowerLaw;
  p.param = alpha;
  p.f = [alpha](double x) { return std::pow(x, -alpha); };
  p.f1 = [alpha](double x) { return -alpha * std::pow(x, -alpha - 1.0); };
  p.f2 = [alpha](double x) { return alpha * (alpha + 1.0) * std::pow(x, -alpha - 2.0); };
  if (alpha > 1.0) p.tail_integral_hint = std::pow(a, 1.0 - alpha) / (alpha - 1.0);
  return p;
}

CuspProfile make_exponential_profile(double c, double a) {
  if (!(c > 0.0)) throw std::invalid_argument("exponential profile: rate must be positive");
  CuspProfile p;
  p.a = a;
  p.kind = ProfileKind::Exponential;
  p.param = c;
  p.f = [c](double x) { return std::exp(-c * x); };
  p.f1 = [c](double x) { return -c * std::exp(-c * x); };
  p.f2 = [c](double x) { return c * c * std::exp(-c * x); };
  p.tail_integral_hint = std::exp(-c * a) / c;
  return p;
}

CuspProfile make_constant_profile(double v, double a) {
  if (!(v > 0.0)) throw std::invalid_argument("constant profile: value must be positive");
  CuspProfile p;
  p.a = a;
  p.kind = ProfileKind::Constant;
  p.param = v;
  p.f = [v](double) { return v; };
  p.f1 = [](double) { return 0.0; };
  p.f2 = [](double) { return 0.0; };
  return p;
}

CuspProfile make_table_profile(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw std::invalid_argument("table profile: cannot open " + csv_path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> xs, fs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string sx, sf;
    if (!std::getline(ss, sx, ',') || !std::getline(ss, sf, ',')) {
      throw std::invalid_argument("table profile: malformed row: " + line);
    }
    xs.push_back(std::stod(sx));
    fs.push_back(std::stod(sf));
  }
  if (xs.size() < 3) throw std::invalid_argument("table profile: need >= 3 rows");
  for (double v : fs)
    if (!(v > 0.0)) throw std::invalid_argument("table profile: f must be positive");
  auto spline = std::make_shared<SteffenSpline>(xs, fs);
  CuspProfile p;
  p.a = xs.front();
  p.kind = ProfileKind::Table;
  p.param = xs.back();  // table right edge, used for range checks
  p.f = [spline](double x) { return spline->eval(x); };
  p.f1 = [spline](double x) { return spline->deriv(x); };
  p.f2 = [spline](double x) { return spline->deriv2(x); };
  return p;
}

BoundaryCoefficient make_constant_sigma(double v) {
  if (v < 0.0) throw std::invalid_argument("sigma must be nonnegative");
  BoundaryCoefficient s;
  s.kind = SigmaKind::Constant;
  s.s0 = v;
  s.sigma = [v](double) { return v; };
  s.sigma1 = [](double) { return 0.0; };
  s.sigma2_deriv = [](double) { return 0.0; };
  return s;
}

BoundaryCoefficient make_power_sigma(double s0, double beta) {
  if (s0 < 0.0) throw std::invalid_argument("sigma must be nonnegative");
  BoundaryCoefficient s;
  s.kind = SigmaKind::PowerLaw;
  s.s0 = s0;
  s.beta = beta;
  s.sigma = [s0, beta](double x) { return s0 * std::pow(x, -beta); };
  s.sigma1 = [s0, beta](double x) { return -s0 * beta * std::pow(x, -beta - 1.0); };
  s.sigma2_deriv = [s0, beta](double x) {
    return s0 * beta * (beta + 1.0) * std::pow(x, -beta - 2.0);
  };
  return s;
}

BoundaryCoefficient make_pair_sigma(BoundaryCoefficient s1, BoundaryCoefficient s2) {
  s1.second = std::make_shared<BoundaryCoefficient>(std::move(s2));
  return s1;
}

CuspProfile parse_profile_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("bad profile spec: " + spec);
  const std::string tag = spec.substr(0, colon);
  const std::string body = spec.substr(colon + 1);
  if (tag == "power") return make_power_profile(parse_kv(body, "alpha"));
  if (tag == "exp") return make_exponential_profile(parse_kv(body, "c"));
  if (tag == "const") return make_constant_profile(parse_kv(body, "v"));
  if (tag == "table") return make_table_profile(body);
  throw std::invalid_argument("unknown profile kind: " + tag);
}

BoundaryCoefficient parse_sigma_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("bad sigma spec: " + spec);
  const std::string tag = spec.substr(0, colon);
  const std::string body = spec.substr(colon + 1);
  if (tag == "const") return make_constant_sigma(parse_kv(body, "v"));
  if (tag == "powersigma")
    return make_power_sigma(parse_kv(body, "s"), parse_kv(body, "beta"));
  throw std::invalid_argument("unknown sigma kind: " + tag);
}

double eval_V(const CuspProfile& p, double x) {
  const double f = p.f(x);
  const double f1 = p.f1(x);
  const double f2 = p.f2(x);
  if (!(f > 0.0) || !std::isfinite(f1) || !std::isfinite(f2)) {
    throw std::domain_error("eval_V: degenerate profile value at x");
  }
  const double r = f1 / f;
  return 0.25 * r * r + 0.5 * (f2 / f - r * r);
}

double eval_W(const CuspProfile& p, const BoundaryCoefficient& s, double x) {
  return eval_V(p, x) + s.effective_at(x) / p.f(x);
}

AssumptionReport audit_assumptions(const CuspProfile& p,
                                   const BoundaryCoefficient& s,
                                   const std::vector<double>& grid) {
  if (grid.size() < 8)
    throw std::invalid_argument("audit_assumptions: need >= 8 probe points");
  for (size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("audit_assumptions: grid not increasing");

  AssumptionReport rep;
  auto sample = [&grid](const RealFn& fn) {
    std::vector<double> v;
    v.reserve(grid.size());
    for (double x : grid) v.push_back(fn(x));
    return v;
  };

  auto add = [&rep, &grid](std::string name, std::vector<double> vals, Verdict v) {
    rep.checks.push_back({std::move(name), grid, std::move(vals), v});
  };

  // f > 0 everywhere sampled.
  auto fv = sample(p.f);
  add("f_positive", fv,
      std::all_of(fv.begin(), fv.end(), [](double v) { return v > 0.0; })
          ? Verdict::Holds
          : Verdict::Fails);

  // f eventually decreasing (f' <= 0 on the tail probes).
  auto f1v = sample(p.f1);
  {
    const size_t n = f1v.size();
    const bool tail_nonpos = f1v[n - 1] <= 0 && f1v[n - 2] <= 0 && f1v[n - 3] <= 0;
    const bool tail_pos = f1v[n - 1] > 0 && f1v[n - 2] > 0 && f1v[n - 3] > 0;
    add("f_eventually_decreasing", f1v,
        tail_nonpos ? Verdict::Holds : (tail_pos ? Verdict::Fails : Verdict::Inconclusive));
  }

  add("f_to_zero", fv, trend_to_zero(fv));

  std::vector<double> f2abs;
  for (double x : grid) f2abs.push_back(std::abs(p.f2(x)));
  add("f2_to_zero", f2abs, trend_to_zero(f2abs));

  std::vector<double> sv, s1v, s2v;
  for (double x : grid) {
    sv.push_back(s.effective_at(x));
    s1v.push_back(std::abs(s.sigma1(x)));
    s2v.push_back(std::abs(s.sigma2_deriv(x)));
  }
  add("sigma_nonnegative", sv,
      std::all_of(sv.begin(), sv.end(), [](double v) { return v >= 0.0; })
          ? Verdict::Holds
          : Verdict::Fails);

  auto bounded = [](const std::vector<double>& v) {
    // Bounded means not blowing up: the tail must not be strictly growing.
    return strictly_increasing_tail(v) ? Verdict::Fails : Verdict::Holds;
  };
  add("sigma_bounded", sv, bounded(sv));
  add("sigma1_bounded", s1v, bounded(s1v));
  add("sigma2_bounded", s2v, bounded(s2v));

  std::vector<double> wv;
  for (double x : grid) wv.push_back(eval_W(p, s, x));
  add("W_sigma_to_infinity", wv, trend_to_infinity(wv));

  // Neumann discreteness criterion value along the last probes.
  std::vector<double> nv;
  for (double x : grid) nv.push_back(neumann_discreteness_value(p, x));
  Verdict nverdict;
  if (std::any_of(nv.begin(), nv.end(), [](double v) { return std::isinf(v); })) {
    nverdict = Verdict::Fails;
  } else {
    nverdict = trend_to_zero(nv);
  }
  add("neumann_criterion", nv, nverdict);

  return rep;
}

LandauCheck landau_check(const CuspProfile& p, double x, int tail_samples) {
  if (tail_samples < 64)
    throw std::invalid_argument("landau_check: need >= 64 tail samples");
  LandauCheck out;
  const double f1 = p.f1(x);
  out.lhs = f1 * f1;
  double sup_f = 0.0, sup_f2 = 0.0;
  const double ratio = std::pow(1000.0, 1.0 / (tail_samples - 1));
  double t = x;
  for (int i = 0; i < tail_samples; ++i, t *= ratio) {
    sup_f = std::max(sup_f, p.f(t));
    sup_f2 = std::max(sup_f2, std::abs(p.f2(t)));
  }
  out.rhs = 2.0 * sup_f * sup_f2;
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-9);
  return out;
}

double neumann_discreteness_value(const CuspProfile& p, double x) {
  if (!(x > p.a)) throw std::invalid_argument("neumann criterion: need x > a");

  const double inv_f = adaptive_simpson(
      [&p](double t) { return 1.0 / p.f(t); }, p.a, x, 1e-12 * (x - p.a));

  double tail;
  if (p.tail_integral_hint && p.kind == ProfileKind::PowerLaw) {
    const double alpha = p.param;
    tail = std::pow(x, 1.0 - alpha) / (alpha - 1.0);
  } else if (p.kind == ProfileKind::Exponential) {
    tail = std::exp(-p.param * x) / p.param;
  } else if (p.kind == ProfileKind::PowerLaw || p.kind == ProfileKind::Constant) {
    return kInf;  // divergent tail integral
  } else {
    // Generic decaying profile: truncate where f has dropped by 1e14.
    const double fx = p.f(x);
    double X = x;
    const double limit = x * 1e8;
    while (p.f(X) > 1e-14 * fx) {
      X *= 1.5;
      if (X > limit) return kInf;
    }
    tail = adaptive_simpson(p.f, x, X, 1e-14 * fx * (X - x));
  }
  return inv_f * tail;
}

WeylRegime classify_weyl_regime(const CuspProfile& p) {
  switch (p.kind) {
    case ProfileKind::Exponential:
      return WeylRegime::Weyl;
    case ProfileKind::PowerLaw:
      if (p.param > 2.0) return WeylRegime::Weyl;
      if (p.param == 2.0) return WeylRegime::Linear;
      return WeylRegime::Superlinear;
    default:
      return WeylRegime::Inconclusive;
  }
}

double linear_regime_a(const CuspProfile& p) {
  if (p.kind != ProfileKind::PowerLaw || p.param != 2.0)
    throw std::domain_error("linear_regime_a: profile is not x^-2");
  // x^2 f(x) -> a^2; the power preset is exactly x^-2 so a = 1.
  return 1.0;
}

double domain_volume(const CuspProfile& p) {
  if (p.tail_integral_hint) return 2.0 * *p.tail_integral_hint;
  if (p.kind == ProfileKind::PowerLaw || p.kind == ProfileKind::Constant)
    return kInf;  // alpha <= 1 power laws and constants have infinite volume
  // Table profiles: integrate over the sampled range only.
  return 2.0 * adaptive_simpson(p.f, p.a, p.param, 1e-12);
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    default: return "inconclusive";
  }
}

const char* to_string(WeylRegime r) {
  switch (r) {
    case WeylRegime::Weyl: return "weyl";
    case WeylRegime::Linear: return "linear";
    case WeylRegime::Superlinear: return "superlinear";
    default: return "inconclusive";
  }
}

}  // namespace cusplab
