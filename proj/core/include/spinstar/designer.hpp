#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "spinstar/errors.hpp"
#include "spinstar/model.hpp"

namespace spinstar {

/// Which positive root of g_M the designer uses.
struct RootChoice {
  enum class Kind { kSmallest, kLargest, kIndex };

  Kind kind = Kind::kSmallest;
  std::size_t index = 0;  // 0-based into the ascending root list, kIndex only

  static RootChoice smallest() { return {}; }
  static RootChoice largest() { return {Kind::kLargest, 0}; }
  static RootChoice at(std::size_t k) { return {Kind::kIndex, k}; }

  /// "smallest", "largest" or "index:k".
  static RootChoice parse(std::string_view text);
  std::string to_string() const;

  bool operator==(const RootChoice&) const = default;
};

struct DesignInput {
  int m = 1;
  int eta = 4;
  RootChoice root;

  void validate() const;
};

/// Coefficients of g_M(e; eta) = x0 + x2 e^2 + x4 e^4 + x6 e^6.
struct GPolynomial {
  double x0 = 0.0;
  double x2 = 0.0;
  double x4 = 0.0;
  double x6 = 0.0;

  double operator()(double e) const { return in_square(e * e); }
  /// The same polynomial as a cubic in u = e^2.
  double in_square(double u) const { return x0 + u * (x2 + u * (x4 + u * x6)); }
  double derivative_in_square(double u) const { return x2 + u * (2.0 * x4 + 3.0 * u * x6); }
};

struct FeasibilityReport {
  int m = 1;
  double eta = 0.0;
  bool e_star_defined = false;
  double e_star = 0.0;  // sqrt of the minimizing e^2
  double g_min = 0.0;
  bool feasible = false;
  double asymptotic_threshold = 0.0;  // large-eta estimate of the eta needed
};

class InfeasibleDesignError : public Error {
 public:
  explicit InfeasibleDesignError(FeasibilityReport report);
  const FeasibilityReport& report() const { return report_; }

 private:
  FeasibilityReport report_;
};

struct LambdaCoefficients {
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

struct HubAndBystander {
  double a = 0.0;
  double d = 0.0;
};

struct DesignSolution {
  ReducedParams params;
  int eta = 0;
  RootChoice root;
  double transfer_time = 0.0;
  std::array<double, 4> target_spectrum{};  // {0, e, eta e, -eta e}
  double root_residual = 0.0;                // |g_M(e; eta)|
  double lambda_residual = 0.0;              // max deviation from (0, eta^2, 0)
  StarSpec realized;                         // route 1 -> 2, bystanders 3..N
};

/// Normalized characteristic-polynomial coefficients of the 4x4 Hamiltonian
/// with the trivial eigenvalue e factored out. Throws DomainError for e = 0.
LambdaCoefficients lambda_coefficients(double a, double b, double c, double d, double e);

GPolynomial g_polynomial(int m, double eta);

/// All positive roots of g_M(e; eta), ascending. Throws InfeasibleDesignError
/// when there are none.
std::vector<double> solve_e(int m, double eta);

/// Root picked from solve_e's list by `policy`. Throws ValidationError for an
/// out-of-range index.
double select_root(const std::vector<double>& roots, const RootChoice& policy);

/// Hub and bystander potentials for a root e in units c = 1, b^2 = M.
HubAndBystander back_solve(double e, int m, double eta);

FeasibilityReport feasibility(int m, double eta);

/// Smallest even eta >= 2 for which feasibility(m, eta).feasible holds.
int min_feasible_even_eta(int m);

/// Sorted eigenvalues of the 4x4 target spectrum.
std::array<double, 4> sorted_target_spectrum(double e, double eta);

/// Realizes the default-route star (hub a, nodes 1 and 2 at e, bystanders at
/// d) for the given parameters.
StarSpec realize_star(const ReducedParams& params);

DesignSolution design(const DesignInput& input);

}  // namespace spinstar
