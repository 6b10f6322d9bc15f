#include "spinstar/dynamics.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include <Eigen/Eigenvalues>

#include "spinstar/errors.hpp"

namespace spinstar {
namespace {

std::uint64_t fnv1a(const Eigen::MatrixXd& h) {
  std::uint64_t hash = 1469598103934665603ULL;
  const auto* bytes = reinterpret_cast<const unsigned char*>(h.data());
  const std::size_t count = static_cast<std::size_t>(h.size()) * sizeof(double);
  for (std::size_t k = 0; k < count; ++k) {
    hash ^= bytes[k];
    hash *= 1099511628211ULL;
  }
  return hash;
}

}  // namespace

SpectralDecomposition::SpectralDecomposition(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw ValidationError("Hamiltonian must be a nonempty square matrix");
  }
  const double asymmetry = (h - h.transpose()).cwiseAbs().maxCoeff();
  if (asymmetry > kSymmetricInputTolerance) {
    throw ValidationError("Hamiltonian is not symmetric (max |H - H^T| = " +
                          std::to_string(asymmetry) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error("symmetric eigendecomposition did not converge");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
  fingerprint_ = fnv1a(h);
}

Eigen::MatrixXcd SpectralDecomposition::propagator(double t) const {
  const Eigen::VectorXcd phases =
      (eigenvalues_.cast<std::complex<double>>() * std::complex<double>(0.0, -t))
          .array()
          .exp()
          .matrix();
  const Eigen::MatrixXcd v = eigenvectors_.cast<std::complex<double>>();
  return v * phases.asDiagonal() * v.transpose();
}

ComplexAmplitude SpectralDecomposition::amplitude(double t, std::size_t src,
                                                  std::size_t dst) const {
  const auto n = dimension();
  if (src >= n || dst >= n) throw ValidationError("amplitude index out of range");
  ComplexAmplitude sum{0.0, 0.0};
  const auto s = static_cast<Eigen::Index>(src);
  const auto d = static_cast<Eigen::Index>(dst);
  for (Eigen::Index k = 0; k < eigenvalues_.size(); ++k) {
    const double overlap = eigenvectors_(d, k) * eigenvectors_(s, k);
    sum += overlap * std::polar(1.0, -eigenvalues_(k) * t);
  }
  return sum;
}

Eigen::MatrixXcd propagate(const Eigen::MatrixXd& h, double t) {
  return SpectralDecomposition(h).propagator(t);
}

ComplexAmplitude transition_amplitude(const Eigen::MatrixXd& h, double t, std::size_t src,
                                      std::size_t dst) {
  return SpectralDecomposition(h).amplitude(t, src, dst);
}

void check_time_grid(std::span<const double> times) {
  if (times.empty()) throw ValidationError("time grid is empty");
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!std::isfinite(times[k])) throw ValidationError("time grid contains a non-finite value");
    if (k > 0 && !(times[k] > times[k - 1])) {
      throw ValidationError("time grid is not strictly increasing at index " +
                            std::to_string(k));
    }
  }
}

FidelityTrace fidelity_trace(const Eigen::MatrixXd& h, std::span<const double> times,
                             std::size_t src, std::size_t dst) {
  check_time_grid(times);
  const SpectralDecomposition cache(h);
  FidelityTrace trace;
  trace.times.assign(times.begin(), times.end());
  trace.values.reserve(times.size());
  for (double t : times) trace.values.push_back(std::norm(cache.amplitude(t, src, dst)));
  return trace;
}

std::vector<double> uniform_grid(double t_max, std::size_t points) {
  if (points == 0) throw ValidationError("grid needs at least one point");
  if (points == 1) return {0.0};
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw ValidationError("grid end time must be positive and finite");
  }
  std::vector<double> grid(points);
  const double step = t_max / static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) grid[k] = step * static_cast<double>(k);
  grid.back() = t_max;
  return grid;
}

}  // namespace spinstar
