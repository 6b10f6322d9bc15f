// Brute-force XY star Hamiltonian on the full 2^(N+1)-dimensional space.
// Used only as an oracle for the single-excitation constructions.

#include <array>
#include <complex>
#include <string>

#include "spinstar/errors.hpp"
#include "spinstar/model.hpp"

namespace spinstar {
namespace {

enum class Pauli { kX, kY, kZ };

struct Term {
  std::size_t state;
  std::complex<double> amplitude;
};

// Local action in the basis (|0>, |1>) with |0> the sigma^z = -1 state.
Term apply_local(Pauli op, std::size_t state, int site) {
  const std::size_t mask = std::size_t{1} << site;
  const bool excited = (state & mask) != 0;
  using namespace std::complex_literals;
  switch (op) {
    case Pauli::kX:
      return {state ^ mask, 1.0};
    case Pauli::kY:
      return {state ^ mask, excited ? 1.0i : -1.0i};
    case Pauli::kZ:
      return {state, excited ? 1.0 : -1.0};
  }
  return {state, 0.0};
}

Term apply_pair(Pauli op, std::size_t state, int first, int second) {
  const Term a = apply_local(op, state, first);
  const Term b = apply_local(op, a.state, second);
  return {b.state, a.amplitude * b.amplitude};
}

}  // namespace

std::size_t single_excitation_state(NodeIndex node) { return std::size_t{1} << node; }

Eigen::VectorXd total_sigma_z(int edge_count) {
  const int spins = edge_count + 1;
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << spins);
  Eigen::VectorXd sz(dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    double total = 0.0;
    for (int k = 0; k < spins; ++k) {
      total += apply_local(Pauli::kZ, static_cast<std::size_t>(x), k).amplitude.real();
    }
    sz(x) = total;
  }
  return sz;
}

Eigen::MatrixXd build_full_spin_hamiltonian(const StarSpec& spec) {
  spec.validate();
  if (spec.edge_count > kMaxFullSpinEdges) {
    throw ResourceLimitError("full spin Hamiltonian limited to " +
                             std::to_string(kMaxFullSpinEdges) + " edge nodes, got " +
                             std::to_string(spec.edge_count));
  }
  const int spins = spec.edge_count + 1;
  const std::size_t dim = std::size_t{1} << spins;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));

  for (std::size_t x = 0; x < dim; ++x) {
    const auto col = static_cast<Eigen::Index>(x);
    for (int j = 1; j < spins; ++j) {
      for (Pauli op : {Pauli::kX, Pauli::kY}) {
        const Term t = apply_pair(op, x, 0, j);
        h(static_cast<Eigen::Index>(t.state), col) += 0.5 * spec.coupling * t.amplitude;
      }
    }
    for (int j = 0; j < spins; ++j) {
      const Term t = apply_local(Pauli::kZ, x, j);
      const double lambda = spec.potentials[static_cast<std::size_t>(j)];
      h(static_cast<Eigen::Index>(t.state), col) += 0.5 * lambda * t.amplitude;
      h(col, col) += 0.5 * lambda;
    }
  }

  if (h.imag().cwiseAbs().maxCoeff() != 0.0) {
    throw Error("full spin Hamiltonian acquired an imaginary part");
  }
  return h.real();
}

}  // namespace spinstar
