#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "spinstar/designer.hpp"
#include "spinstar/dynamics.hpp"
#include "spinstar/errors.hpp"

namespace spinstar {

std::vector<std::pair<double, int>> exchange_parities(const Eigen::MatrixXd& h, std::size_t i,
                                                      std::size_t j, double cluster_tol) {
  const SpectralDecomposition dec(h);
  const Eigen::MatrixXd p = exchange_operator(dec.dimension(), i, j);
  const Eigen::VectorXd& values = dec.eigenvalues();
  const Eigen::MatrixXd& vectors = dec.eigenvectors();

  std::vector<std::pair<double, int>> out;
  Eigen::Index start = 0;
  while (start < values.size()) {
    Eigen::Index stop = start + 1;
    while (stop < values.size() && values(stop) - values(stop - 1) <= cluster_tol) ++stop;

    // P restricted to the (possibly degenerate) eigenspace; its eigenvalues
    // are the parities, independent of which basis the solver returned.
    const Eigen::MatrixXd q = vectors.middleCols(start, stop - start);
    const Eigen::MatrixXd restricted = q.transpose() * p * q;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> local(restricted);
    for (Eigen::Index k = 0; k < local.eigenvalues().size(); ++k) {
      const double parity = local.eigenvalues()(k);
      int sign = 0;
      if (std::abs(parity - 1.0) < 1e-6) sign = 1;
      if (std::abs(parity + 1.0) < 1e-6) sign = -1;
      out.emplace_back(values(start + k), sign);
    }
    start = stop;
  }
  return out;
}

VerificationReport verify_route(const DesignSolution& solution, const StarSpec& realized,
                                NodeIndex source, NodeIndex target, double tol) {
  VerificationReport report;
  report.tolerance = tol;
  const ReducedParams& p = solution.params;
  const Eigen::Matrix4d h4 = reduced_matrix(p);

  const SpectralDecomposition reduced(h4);
  const auto expected = sorted_target_spectrum(p.e, solution.eta);
  for (int k = 0; k < 4; ++k) {
    report.spectrum_deviation = std::max(report.spectrum_deviation,
                                         std::abs(reduced.eigenvalues()(k) - expected[k]));
  }

  try {
    const ReducedParams from_star = build_reduced(realized, source, target);
    report.params_deviation = std::max({std::abs(from_star.a - p.a), std::abs(from_star.b - p.b),
                                        std::abs(from_star.c - p.c), std::abs(from_star.d - p.d),
                                        std::abs(from_star.e - p.e)});
    if (from_star.m != p.m) report.params_deviation = std::numeric_limits<double>::infinity();
  } catch (const Error&) {
    report.params_deviation = std::numeric_limits<double>::infinity();
  }

  const double tau = solution.transfer_time;
  const ComplexAmplitude reduced_amp = reduced.amplitude(tau, kReducedSource, kReducedTarget);
  ComplexAmplitude full_amp{0.0, 0.0};
  try {
    const ArrowheadSpectrum full(build_arrowhead(realized));
    full_amp = full.amplitude(tau, source, target);
  } catch (const ValidationError&) {
    full_amp = {std::numeric_limits<double>::quiet_NaN(), 0.0};
  }

  report.reduced_fidelity = std::norm(reduced_amp);
  report.full_fidelity = std::norm(full_amp);
  report.fidelity_at_tau = std::min(report.reduced_fidelity, report.full_fidelity);
  report.amplitude_at_tau = full_amp;
  report.amplitude_real_positive = reduced_amp.real() > 0.0 && full_amp.real() > 0.0 &&
                                   std::abs(reduced_amp.imag()) <= tol &&
                                   std::abs(full_amp.imag()) <= tol;
  report.reduction_deviation = std::abs(reduced_amp - full_amp);

  const double scale = std::max(1.0, h4.cwiseAbs().maxCoeff());
  const auto parities = exchange_parities(h4, kReducedSource, kReducedTarget, 1e-8 * scale);
  int odd = 0;
  bool all_resolved = true;
  bool odd_at_e = false;
  for (const auto& [value, sign] : parities) {
    if (sign == 0) all_resolved = false;
    if (sign == -1) {
      ++odd;
      odd_at_e = std::abs(value - p.e) <= tol * scale;
    }
  }
  report.parity_check = all_resolved && odd == 1 && odd_at_e;

  report.passed = report.spectrum_deviation <= tol && 1.0 - report.fidelity_at_tau <= tol &&
                  report.amplitude_real_positive && report.reduction_deviation <= tol &&
                  report.params_deviation <= tol && report.parity_check;
  if (std::isnan(report.fidelity_at_tau) || std::isnan(report.reduction_deviation)) {
    report.passed = false;
  }
  return report;
}

VerificationReport verify_design(const DesignSolution& solution, double tol) {
  return verify_route(solution, solution.realized, 1, 2, tol);
}

}  // namespace spinstar
