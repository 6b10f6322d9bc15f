#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace spinstar {

using ComplexAmplitude = std::complex<double>;

// Index of a node in the star: 0 is the hub, 1..N are edge nodes.
using NodeIndex = std::size_t;

inline constexpr NodeIndex kHub = 0;

// Absolute tolerance on potential equality for the reduction preconditions.
inline constexpr double kSymmetryTolerance = 1e-12;

// Largest edge count accepted by build_full_spin_hamiltonian (2^11 states).
inline constexpr int kMaxFullSpinEdges = 10;

/// An (N+1)-spin star: hub 0 coupled with uniform strength to edge nodes
/// 1..N, each node carrying a local potential.
struct StarSpec {
  int edge_count = 0;
  double coupling = 1.0;
  std::vector<double> potentials;  // hub first, then edges 1..N

  /// Throws ValidationError unless N >= 3, coupling > 0 and finite, and
  /// there are exactly N+1 finite potentials.
  void validate() const;

  /// M, the number of bystander nodes for any single route.
  int bystander_count() const { return edge_count - 2; }

  bool operator==(const StarSpec&) const = default;
};

/// Real symmetric matrix whose only nonzeros sit on the diagonal and in the
/// first row/column. Stored in O(N).
class ArrowheadMatrix {
 public:
  ArrowheadMatrix(double hub_value, std::vector<double> arm_couplings,
                  std::vector<double> arm_values);

  std::size_t dimension() const { return arm_values_.size() + 1; }
  double hub_value() const { return hub_value_; }
  const std::vector<double>& arm_couplings() const { return arm_couplings_; }
  const std::vector<double>& arm_values() const { return arm_values_; }

  double operator()(std::size_t row, std::size_t col) const;
  Eigen::MatrixXd dense() const;

 private:
  double hub_value_;
  std::vector<double> arm_couplings_;
  std::vector<double> arm_values_;
};

/// Transfer fidelity F(t) = |<dst|U(t)|src>|^2 sampled on a time grid.
struct FidelityTrace {
  std::vector<double> times;  // strictly increasing
  std::vector<double> values;

  std::size_t size() const { return times.size(); }
};

/// Matrix elements of the 4x4 effective Hamiltonian in the basis
/// (hub, symmetric bystander mode, source, target).
struct ReducedParams {
  double a = 0.0;  // hub potential
  double b = 0.0;  // sqrt(M) * coupling
  double c = 0.0;  // coupling
  double d = 0.0;  // bystander potential
  double e = 0.0;  // source/target potential
  int m = 1;       // bystander count M

  bool operator==(const ReducedParams&) const = default;
};

// Reduced-basis positions.
inline constexpr int kReducedHub = 0;
inline constexpr int kReducedBystanders = 1;
inline constexpr int kReducedSource = 2;
inline constexpr int kReducedTarget = 3;

ArrowheadMatrix build_arrowhead(const StarSpec& spec);

/// Collapses the star onto the four-dimensional invariant subspace spanned
/// by the hub, source, target, and the normalized sum of all bystanders.
/// Throws SymmetryError when source/target potentials differ or bystanders
/// are not uniform, ValidationError for bad indices.
ReducedParams build_reduced(const StarSpec& spec, NodeIndex source, NodeIndex target);

/// Rows (a,b,c,c), (b,d,0,0), (c,0,e,0), (c,0,0,e).
Eigen::Matrix4d reduced_matrix(const ReducedParams& params);

/// XY star Hamiltonian with local potentials on all 2^(N+1) basis states. Bit k of a basis
/// index is the state of node k (1 = excited, sigma^z = +1), so the all-zero
/// state is the vacuum with zero energy. Throws ResourceLimitError for
/// N > kMaxFullSpinEdges.
Eigen::MatrixXd build_full_spin_hamiltonian(const StarSpec& spec);

/// Basis index of the single-excitation state on `node` in the full space.
std::size_t single_excitation_state(NodeIndex node);

/// Total sigma^z (sum over all N+1 spins) as a diagonal in the full basis.
Eigen::VectorXd total_sigma_z(int edge_count);

/// Transposition of basis vectors i and j (P^2 = I).
Eigen::MatrixXd exchange_operator(std::size_t dimension, std::size_t i, std::size_t j);

/// max|PHP - H| <= tol, with P the (i j) transposition.
bool is_exchange_symmetric(const Eigen::MatrixXd& h, std::size_t i, std::size_t j, double tol);

/// <target|U(t)|source> evaluated in the four-dimensional reduced space.
ComplexAmplitude lift_reduced_amplitude(const StarSpec& spec, NodeIndex source,
                                        NodeIndex target, double t);

}  // namespace spinstar
