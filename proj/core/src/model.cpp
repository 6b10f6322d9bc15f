#include "spinstar/model.hpp"

#include <cmath>
#include <string>

#include "spinstar/dynamics.hpp"
#include "spinstar/errors.hpp"

namespace spinstar {

void StarSpec::validate() const {
  if (edge_count < 3) {
    throw ValidationError("edge_count must be at least 3, got " + std::to_string(edge_count));
  }
  if (!std::isfinite(coupling) || coupling <= 0.0) {
    throw ValidationError("coupling must be positive and finite");
  }
  if (potentials.size() != static_cast<std::size_t>(edge_count) + 1) {
    throw ValidationError("expected " + std::to_string(edge_count + 1) + " potentials, got " +
                          std::to_string(potentials.size()));
  }
  for (std::size_t k = 0; k < potentials.size(); ++k) {
    if (!std::isfinite(potentials[k])) {
      throw ValidationError("potential " + std::to_string(k) + " is not finite");
    }
  }
}

ArrowheadMatrix::ArrowheadMatrix(double hub_value, std::vector<double> arm_couplings,
                                 std::vector<double> arm_values)
    : hub_value_(hub_value),
      arm_couplings_(std::move(arm_couplings)),
      arm_values_(std::move(arm_values)) {
  if (arm_couplings_.size() != arm_values_.size()) {
    throw ValidationError("arrowhead arm couplings and values differ in length");
  }
}

double ArrowheadMatrix::operator()(std::size_t row, std::size_t col) const {
  if (row >= dimension() || col >= dimension()) {
    throw ValidationError("arrowhead index out of range");
  }
  if (row == 0 && col == 0) return hub_value_;
  if (row == 0) return arm_couplings_[col - 1];
  if (col == 0) return arm_couplings_[row - 1];
  return row == col ? arm_values_[row - 1] : 0.0;
}

Eigen::MatrixXd ArrowheadMatrix::dense() const {
  const auto n = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  h(0, 0) = hub_value_;
  for (Eigen::Index k = 1; k < n; ++k) {
    h(0, k) = arm_couplings_[k - 1];
    h(k, 0) = arm_couplings_[k - 1];
    h(k, k) = arm_values_[k - 1];
  }
  return h;
}

ArrowheadMatrix build_arrowhead(const StarSpec& spec) {
  spec.validate();
  const auto n = static_cast<std::size_t>(spec.edge_count);
  std::vector<double> arms(n, spec.coupling);
  std::vector<double> values(spec.potentials.begin() + 1, spec.potentials.end());
  return ArrowheadMatrix(spec.potentials[0], std::move(arms), std::move(values));
}

namespace {

void check_route(const StarSpec& spec, NodeIndex source, NodeIndex target) {
  const auto n = static_cast<NodeIndex>(spec.edge_count);
  if (source < 1 || source > n || target < 1 || target > n) {
    throw ValidationError("source and target must be edge nodes in 1.." + std::to_string(n));
  }
  if (source == target) {
    throw ValidationError("source and target must differ");
  }
}

}  // namespace

ReducedParams build_reduced(const StarSpec& spec, NodeIndex source, NodeIndex target) {
  spec.validate();
  check_route(spec, source, target);

  const double active = spec.potentials[source];
  if (std::abs(spec.potentials[target] - active) > kSymmetryTolerance) {
    throw SymmetryError("source and target potentials differ: " +
                        std::to_string(spec.potentials[source]) + " vs " +
                        std::to_string(spec.potentials[target]));
  }

  bool have_bystander = false;
  double bystander = 0.0;
  for (NodeIndex k = 1; k <= static_cast<NodeIndex>(spec.edge_count); ++k) {
    if (k == source || k == target) continue;
    if (!have_bystander) {
      bystander = spec.potentials[k];
      have_bystander = true;
    } else if (std::abs(spec.potentials[k] - bystander) > kSymmetryTolerance) {
      throw SymmetryError("bystander potentials are not uniform at node " + std::to_string(k));
    }
  }

  ReducedParams p;
  p.m = spec.bystander_count();
  p.a = spec.potentials[kHub];
  p.b = std::sqrt(static_cast<double>(p.m)) * spec.coupling;
  p.c = spec.coupling;
  p.d = bystander;
  p.e = active;
  return p;
}

Eigen::Matrix4d reduced_matrix(const ReducedParams& p) {
  Eigen::Matrix4d h;
  // clang-format off
  h << p.a, p.b, p.c, p.c,
       p.b, p.d, 0.0, 0.0,
       p.c, 0.0, p.e, 0.0,
       p.c, 0.0, 0.0, p.e;
  // clang-format on
  return h;
}

Eigen::MatrixXd exchange_operator(std::size_t dimension, std::size_t i, std::size_t j) {
  if (i >= dimension || j >= dimension) {
    throw ValidationError("exchange indices out of range");
  }
  if (i == j) {
    throw ValidationError("exchange indices must differ");
  }
  const auto n = static_cast<Eigen::Index>(dimension);
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(n, n);
  const auto ii = static_cast<Eigen::Index>(i);
  const auto jj = static_cast<Eigen::Index>(j);
  p(ii, ii) = 0.0;
  p(jj, jj) = 0.0;
  p(ii, jj) = 1.0;
  p(jj, ii) = 1.0;
  return p;
}

bool is_exchange_symmetric(const Eigen::MatrixXd& h, std::size_t i, std::size_t j, double tol) {
  if (h.rows() != h.cols()) {
    throw ValidationError("matrix must be square");
  }
  const Eigen::MatrixXd p = exchange_operator(static_cast<std::size_t>(h.rows()), i, j);
  return (p * h * p - h).cwiseAbs().maxCoeff() <= tol;
}

ComplexAmplitude lift_reduced_amplitude(const StarSpec& spec, NodeIndex source,
                                        NodeIndex target, double t) {
  const ReducedParams p = build_reduced(spec, source, target);
  const SpectralDecomposition reduced(reduced_matrix(p));
  return reduced.amplitude(t, kReducedSource, kReducedTarget);
}

}  // namespace spinstar
