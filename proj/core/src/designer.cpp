#include "spinstar/designer.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "spinstar/cubic.hpp"

namespace spinstar {

RootChoice RootChoice::parse(std::string_view text) {
  if (text == "smallest") return smallest();
  if (text == "largest") return largest();
  constexpr std::string_view kPrefix = "index:";
  if (text.starts_with(kPrefix)) {
    const std::string_view digits = text.substr(kPrefix.size());
    std::size_t k = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty()) {
      return at(k);
    }
  }
  throw ValidationError("root choice must be smallest, largest or index:k, got '" +
                        std::string(text) + "'");
}

std::string RootChoice::to_string() const {
  switch (kind) {
    case Kind::kSmallest:
      return "smallest";
    case Kind::kLargest:
      return "largest";
    case Kind::kIndex:
      return "index:" + std::to_string(index);
  }
  return "smallest";
}

void DesignInput::validate() const {
  if (m < 1) throw ValidationError("bystander count M must be at least 1");
  if (eta < 2 || eta % 2 != 0) {
    throw ValidationError("eta must be a positive even integer, got " + std::to_string(eta));
  }
}

namespace {

std::string describe(const FeasibilityReport& r) {
  std::string msg = "no positive root of g_M for M=" + std::to_string(r.m) +
                    ", eta=" + std::to_string(r.eta) + ": g_min=" + std::to_string(r.g_min);
  if (!r.e_star_defined) msg += " (eta <= 1, e_* undefined)";
  return msg;
}

void check_m(int m) {
  if (m < 1) throw ValidationError("bystander count M must be at least 1");
}

// Root of the cubic g(u) inside [lo, hi] where g changes sign, starting from
// `seed`. Newton steps, falling back to bisection whenever a step leaves the
// bracket.
double polish_root(const GPolynomial& g, double lo, double hi, double seed) {
  double g_lo = g.in_square(lo);
  double u = (seed > lo && seed < hi) ? seed : 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double value = g.in_square(u);
    if (value == 0.0) return u;
    if ((value > 0.0) == (g_lo > 0.0)) {
      lo = u;
      g_lo = value;
    } else {
      hi = u;
    }
    const double slope = g.derivative_in_square(u);
    double next = slope != 0.0 ? u - value / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) <= 2.0 * std::numeric_limits<double>::epsilon() * std::abs(u)) {
      return next;
    }
    u = next;
  }
  return u;
}

}  // namespace

InfeasibleDesignError::InfeasibleDesignError(FeasibilityReport report)
    : Error(describe(report)), report_(report) {}

LambdaCoefficients lambda_coefficients(double a, double b, double c, double d, double e) {
  if (e == 0.0) throw DomainError("lambda coefficients are undefined for e = 0");
  LambdaCoefficients l;
  l.lambda0 = (a * d * e - b * b * e - 2.0 * c * c * d) / (e * e * e);
  l.lambda1 = (b * b + 2.0 * c * c - a * d - (a + d) * e) / (e * e);
  l.lambda2 = (a + d + e) / e;
  return l;
}

GPolynomial g_polynomial(int m, double eta) {
  check_m(m);
  const double k = 1.0 - eta * eta;
  GPolynomial g;
  g.x0 = m + 2.0;
  g.x2 = 3.0 - eta * eta;
  g.x4 = 1.5 * k;
  g.x6 = 0.25 * k * k;
  return g;
}

FeasibilityReport feasibility(int m, double eta) {
  check_m(m);
  FeasibilityReport r;
  r.m = m;
  r.eta = eta;
  r.asymptotic_threshold = 9.0 / (4.0 * std::numbers::sqrt3) * m;
  if (!(eta > 1.0) || !std::isfinite(eta)) {
    // g is increasing in e^2 here, so its minimum over real e is g(0).
    r.e_star_defined = false;
    r.e_star = std::numeric_limits<double>::quiet_NaN();
    r.g_min = m + 2.0;
    r.feasible = false;
    return r;
  }
  const double u_star = (6.0 + 2.0 * std::numbers::sqrt3 * eta) / (3.0 * (eta * eta - 1.0));
  r.e_star_defined = true;
  r.e_star = std::sqrt(u_star);
  r.g_min = g_polynomial(m, eta).in_square(u_star);
  r.feasible = r.g_min < 0.0;
  return r;
}

std::vector<double> solve_e(int m, double eta) {
  const FeasibilityReport report = feasibility(m, eta);
  if (!report.feasible) throw InfeasibleDesignError(report);

  const GPolynomial g = g_polynomial(m, eta);
  const double u_star = report.e_star * report.e_star;

  // g(0) = M + 2 > 0 and g(u_*) < 0, with a positive leading coefficient:
  // exactly one root on each side of u_*.
  double u_hi = 2.0 * u_star;
  while (g.in_square(u_hi) <= 0.0) u_hi *= 2.0;

  std::vector<double> seeds;
  for (double u : real_cubic_roots(g.x6, g.x4, g.x2, g.x0)) {
    if (u > 0.0) seeds.push_back(u);
  }
  auto seed_in = [&](double lo, double hi) {
    for (double s : seeds) {
      if (s > lo && s < hi) return s;
    }
    return 0.5 * (lo + hi);
  };

  const double lower = polish_root(g, 0.0, u_star, seed_in(0.0, u_star));
  const double upper = polish_root(g, u_star, u_hi, seed_in(u_star, u_hi));

  std::vector<double> roots{std::sqrt(lower), std::sqrt(upper)};
  const double tol = 1e-10 * (m + 2.0);
  for (double e : roots) {
    if (!(std::abs(g(e)) < tol)) {
      throw Error("root polishing failed to reach |g| < " + std::to_string(tol) +
                  " at e=" + std::to_string(e));
    }
  }
  return roots;
}

double select_root(const std::vector<double>& roots, const RootChoice& policy) {
  if (roots.empty()) throw ValidationError("no roots to select from");
  switch (policy.kind) {
    case RootChoice::Kind::kSmallest:
      return roots.front();
    case RootChoice::Kind::kLargest:
      return roots.back();
    case RootChoice::Kind::kIndex:
      if (policy.index >= roots.size()) {
        throw ValidationError("root index " + std::to_string(policy.index) + " out of range (" +
                              std::to_string(roots.size()) + " roots)");
      }
      return roots[policy.index];
  }
  return roots.front();
}

HubAndBystander back_solve(double e, int m, double eta) {
  check_m(m);
  if (e == 0.0) throw DomainError("back_solve requires e != 0");

  // a + d = -e and a d = M + 2 + (1 - eta^2) e^2, so a and d are the roots
  // of t^2 + e t + product.
  const double product = m + 2.0 + (1.0 - eta * eta) * e * e;
  double disc = e * e - 4.0 * product;
  const double scale = std::max(e * e, 4.0 * std::abs(product));
  if (disc < 0.0) {
    if (disc < -1e-12 * scale) {
      throw NoRealDesignError("no real (a, d) for e=" + std::to_string(e) +
                              ": discriminant " + std::to_string(disc));
    }
    disc = 0.0;
  }
  const double q = -0.5 * (e + std::copysign(std::sqrt(disc), e));
  const double t1 = q;
  const double t2 = q != 0.0 ? product / q : 0.0;

  const double b = std::sqrt(static_cast<double>(m));
  // The constant-term condition picks which root is the hub potential.
  auto lambda0_error = [&](double a, double d) {
    const double magnitude = (std::abs(a * d * e) + m * std::abs(e) + 2.0 * std::abs(d)) /
                             std::abs(e * e * e);
    const double value = lambda_coefficients(a, b, 1.0, d, e).lambda0;
    return std::abs(value) / std::max(1.0, magnitude);
  };
  const double err12 = lambda0_error(t1, t2);
  const double err21 = lambda0_error(t2, t1);
  HubAndBystander out = err12 <= err21 ? HubAndBystander{t1, t2} : HubAndBystander{t2, t1};
  if (std::min(err12, err21) > 1e-9) {
    throw NoRealDesignError("neither (a, d) assignment satisfies the constant-term condition "
                            "for e=" + std::to_string(e));
  }
  return out;
}

int min_feasible_even_eta(int m) {
  check_m(m);
  int eta = 2;
  while (!feasibility(m, eta).feasible) eta += 2;
  return eta;
}

std::array<double, 4> sorted_target_spectrum(double e, double eta) {
  std::array<double, 4> s{0.0, e, eta * e, -eta * e};
  std::sort(s.begin(), s.end());
  return s;
}

StarSpec realize_star(const ReducedParams& params) {
  StarSpec spec;
  spec.edge_count = params.m + 2;
  spec.coupling = params.c;
  spec.potentials.assign(static_cast<std::size_t>(spec.edge_count) + 1, params.d);
  spec.potentials[kHub] = params.a;
  spec.potentials[1] = params.e;
  spec.potentials[2] = params.e;
  return spec;
}

DesignSolution design(const DesignInput& input) {
  input.validate();
  const std::vector<double> roots = solve_e(input.m, input.eta);
  const double e = select_root(roots, input.root);
  const HubAndBystander ad = back_solve(e, input.m, input.eta);

  DesignSolution s;
  s.params.a = ad.a;
  s.params.b = std::sqrt(static_cast<double>(input.m));
  s.params.c = 1.0;
  s.params.d = ad.d;
  s.params.e = e;
  s.params.m = input.m;
  s.eta = input.eta;
  s.root = input.root;
  s.transfer_time = std::numbers::pi / e;
  const double eta = input.eta;
  s.target_spectrum = {0.0, e, eta * e, -eta * e};
  s.root_residual = std::abs(g_polynomial(input.m, eta)(e));
  const LambdaCoefficients l =
      lambda_coefficients(s.params.a, s.params.b, s.params.c, s.params.d, s.params.e);
  s.lambda_residual = std::max(
      {std::abs(l.lambda0), std::abs(l.lambda1 - eta * eta), std::abs(l.lambda2)});
  s.realized = realize_star(s.params);
  return s;
}

}  // namespace spinstar
