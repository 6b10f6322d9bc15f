#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "spinstar/model.hpp"

namespace spinstar {

// Tolerance for accepting a matrix as symmetric.
inline constexpr double kSymmetricInputTolerance = 1e-12;

/// Eigendecomposition H = V diag(E) V^T of a real symmetric matrix, reused
/// for evolution at any number of times. Immutable once built.
class SpectralDecomposition {
 public:
  /// Throws ValidationError if `h` is not square or not symmetric within
  /// kSymmetricInputTolerance.
  explicit SpectralDecomposition(const Eigen::MatrixXd& h);

  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }
  std::size_t dimension() const { return static_cast<std::size_t>(eigenvalues_.size()); }
  /// FNV-1a hash of the source matrix bytes.
  std::uint64_t fingerprint() const { return fingerprint_; }

  /// U(t) = exp(-i H t).
  Eigen::MatrixXcd propagator(double t) const;
  /// <dst|U(t)|src>.
  ComplexAmplitude amplitude(double t, std::size_t src, std::size_t dst) const;

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
  std::uint64_t fingerprint_ = 0;
};

Eigen::MatrixXcd propagate(const Eigen::MatrixXd& h, double t);

ComplexAmplitude transition_amplitude(const Eigen::MatrixXd& h, double t, std::size_t src,
                                      std::size_t dst);

/// One eigendecomposition, evaluated on every grid point. Throws
/// ValidationError for an empty or non-increasing grid.
FidelityTrace fidelity_trace(const Eigen::MatrixXd& h, std::span<const double> times,
                             std::size_t src, std::size_t dst);

/// `points` equally spaced times from 0 to t_max inclusive.
std::vector<double> uniform_grid(double t_max, std::size_t points);

/// Throws ValidationError unless `times` is nonempty and strictly increasing.
void check_time_grid(std::span<const double> times);

/// Spectral data of an arrowhead matrix in O(N) memory.
///
/// Edge nodes with equal diagonal value are grouped. Inside a group the
/// couplings z_j combine into a single arm of weight |z|; the orthogonal
/// complement of z within the group consists of eigenvectors with the group's
/// diagonal value and no hub weight. The remaining arrowhead has distinct
/// poles, and its eigenvalues are the roots of the secular function
///   f(x) = x - hub - sum_g |z_g|^2 / (x - pole_g),
/// one per interval between consecutive poles plus one on each side.
class ArrowheadSpectrum {
 public:
  explicit ArrowheadSpectrum(const ArrowheadMatrix& h);

  std::size_t dimension() const { return dimension_; }
  /// Eigenvalues, ascending, including deflated multiplicities.
  std::vector<double> eigenvalues() const;

  /// <dst|U(t)|src> for any nodes 0..N. Cost O(number of distinct poles).
  ComplexAmplitude amplitude(double t, NodeIndex src, NodeIndex dst) const;

  FidelityTrace fidelity_trace(std::span<const double> times, NodeIndex src,
                               NodeIndex dst) const;

 private:
  struct Group {
    double pole = 0.0;
    double weight = 0.0;  // |z_g|
    std::size_t size = 0;
  };
  struct SecularRoot {
    double value = 0.0;
    double hub_component = 0.0;     // normalized eigenvector entry at the hub
    std::vector<double> group_amp;  // entry per group, before multiplying u_j
  };

  // Projection weight of a node onto its group's coupled direction.
  double unit_component(NodeIndex node) const;

  std::size_t dimension_ = 0;
  std::vector<Group> groups_;
  std::vector<std::size_t> group_of_;  // per edge node (index node-1)
  std::vector<double> couplings_;      // per edge node
  std::vector<SecularRoot> roots_;
};

/// Outcome of checking a design end to end; failures are reported here
/// rather than thrown.
struct VerificationReport {
  double spectrum_deviation = 0.0;
  double fidelity_at_tau = 0.0;     // min over reduced and full evaluations
  double reduced_fidelity = 0.0;
  double full_fidelity = 0.0;
  ComplexAmplitude amplitude_at_tau{};
  bool amplitude_real_positive = false;
  double reduction_deviation = 0.0;  // |reduced - full| amplitude at tau
  double params_deviation = 0.0;     // realized star vs design parameters
  bool parity_check = false;
  bool passed = false;
  double tolerance = 0.0;
};

inline constexpr double kDefaultVerifyTolerance = 1e-9;

struct DesignSolution;

VerificationReport verify_design(const DesignSolution& solution,
                                 double tol = kDefaultVerifyTolerance);

/// Same checks, with the route and potentials taken from `realized` rather
/// than the design's default 1 -> 2 realization.
VerificationReport verify_route(const DesignSolution& solution, const StarSpec& realized,
                                NodeIndex source, NodeIndex target,
                                double tol = kDefaultVerifyTolerance);

/// Parities (+1/-1) of the eigenvectors of `h` under the (i j) exchange,
/// resolved inside each cluster of eigenvalues closer than `cluster_tol`.
/// Returned pairs are (eigenvalue, parity), eigenvalues ascending.
std::vector<std::pair<double, int>> exchange_parities(const Eigen::MatrixXd& h, std::size_t i,
                                                      std::size_t j, double cluster_tol);

}  // namespace spinstar
