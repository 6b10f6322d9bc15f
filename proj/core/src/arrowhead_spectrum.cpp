#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "spinstar/dynamics.hpp"
#include "spinstar/errors.hpp"

namespace spinstar {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Poles closer than this (relative) are merged into one group.
constexpr double kPoleMergeTolerance = 4.0 * kEps;

struct Pole {
  double value;
  double weight;
};

// Secular function shifted to an anchor pole: x = anchor + mu, with the
// distances anchor - p_g precomputed so x - p_anchor is exactly mu.
class ShiftedSecular {
 public:
  ShiftedSecular(const std::vector<Pole>& poles, double hub, double anchor)
      : poles_(poles), hub_(hub), anchor_(anchor) {
    offsets_.reserve(poles.size());
    for (const Pole& p : poles) offsets_.push_back(anchor - p.value);
  }

  double value(double mu) const {
    double sum = 0.0;
    for (std::size_t g = 0; g < poles_.size(); ++g) {
      sum += poles_[g].weight * poles_[g].weight / (offsets_[g] + mu);
    }
    return (anchor_ - hub_) + mu - sum;
  }

  double slope(double mu) const {
    double sum = 1.0;
    for (std::size_t g = 0; g < poles_.size(); ++g) {
      const double r = poles_[g].weight / (offsets_[g] + mu);
      sum += r * r;
    }
    return sum;
  }

  double distance(std::size_t g, double mu) const { return offsets_[g] + mu; }

  // Root in (lo, hi) with value(lo) < 0 < value(hi); f is increasing.
  double root(double lo, double hi) const {
    double mu = 0.5 * (lo + hi);
    for (int iter = 0; iter < 2000; ++iter) {
      const double f = value(mu);
      if (f == 0.0) return mu;
      if (f < 0.0) {
        lo = mu;
      } else {
        hi = mu;
      }
      double next = mu - f / slope(mu);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) ||
          next == mu) {
        return next;
      }
      mu = next;
    }
    return mu;
  }

 private:
  const std::vector<Pole>& poles_;
  double hub_;
  double anchor_;
  std::vector<double> offsets_;
};

}  // namespace

ArrowheadSpectrum::ArrowheadSpectrum(const ArrowheadMatrix& h) : dimension_(h.dimension()) {
  const auto& values = h.arm_values();
  const std::size_t n = values.size();
  couplings_ = h.arm_couplings();
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(values[j]) || !std::isfinite(couplings_[j])) {
      throw ValidationError("arrowhead entries must be finite");
    }
  }
  if (!std::isfinite(h.hub_value())) throw ValidationError("arrowhead entries must be finite");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });

  group_of_.assign(n, 0);
  std::vector<double> weight_sq;
  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::size_t j = order[pos];
    const bool same = !groups_.empty() &&
                      std::abs(values[j] - groups_.back().pole) <=
                          kPoleMergeTolerance * std::max(1.0, std::abs(groups_.back().pole));
    if (!same) {
      groups_.push_back({values[j], 0.0, 0});
      weight_sq.push_back(0.0);
    }
    groups_.back().size += 1;
    weight_sq.back() += couplings_[j] * couplings_[j];
    group_of_[j] = groups_.size() - 1;
  }
  for (std::size_t g = 0; g < groups_.size(); ++g) groups_[g].weight = std::sqrt(weight_sq[g]);

  // Active poles: groups that actually couple to the hub.
  std::vector<Pole> poles;
  std::vector<std::size_t> pole_group;
  double weight_norm_sq = 0.0;
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    if (groups_[g].weight > 0.0) {
      poles.push_back({groups_[g].pole, groups_[g].weight});
      pole_group.push_back(g);
      weight_norm_sq += weight_sq[g];
    }
  }

  const double hub = h.hub_value();
  auto add_root = [&](const ShiftedSecular& f, double anchor, double mu) {
    SecularRoot root;
    root.value = anchor + mu;
    root.group_amp.assign(groups_.size(), 0.0);
    double norm_sq = 1.0;
    for (std::size_t k = 0; k < poles.size(); ++k) {
      const double amp = poles[k].weight / f.distance(k, mu);
      root.group_amp[pole_group[k]] = amp;
      norm_sq += amp * amp;
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    root.hub_component = inv;
    for (double& amp : root.group_amp) amp *= inv;
    roots_.push_back(std::move(root));
  };

  if (poles.empty()) {
    SecularRoot root;
    root.value = hub;
    root.hub_component = 1.0;
    root.group_amp.assign(groups_.size(), 0.0);
    roots_.push_back(std::move(root));
    return;
  }

  const double spread = std::sqrt(weight_norm_sq) + 1.0;
  // Below the lowest pole.
  {
    const double anchor = poles.front().value;
    const ShiftedSecular f(poles, hub, anchor);
    double reach = (anchor - std::min(hub, anchor)) + spread;
    while (f.value(-reach) >= 0.0) reach *= 2.0;
    add_root(f, anchor, f.root(-reach, 0.0));
  }
  // Between consecutive poles.
  for (std::size_t k = 0; k + 1 < poles.size(); ++k) {
    const double left = poles[k].value;
    const double right = poles[k + 1].value;
    const double half = 0.5 * (right - left);
    const ShiftedSecular from_left(poles, hub, left);
    const double mid_value = from_left.value(half);
    if (mid_value > 0.0) {
      add_root(from_left, left, from_left.root(0.0, half));
    } else if (mid_value < 0.0) {
      const ShiftedSecular from_right(poles, hub, right);
      add_root(from_right, right, from_right.root(-half, 0.0));
    } else {
      add_root(from_left, left, half);
    }
  }
  // Above the highest pole.
  {
    const double anchor = poles.back().value;
    const ShiftedSecular f(poles, hub, anchor);
    double reach = (std::max(hub, anchor) - anchor) + spread;
    while (f.value(reach) <= 0.0) reach *= 2.0;
    add_root(f, anchor, f.root(0.0, reach));
  }
}

std::vector<double> ArrowheadSpectrum::eigenvalues() const {
  std::vector<double> out;
  out.reserve(dimension_);
  for (const SecularRoot& r : roots_) out.push_back(r.value);
  for (const Group& g : groups_) {
    const std::size_t deflated = g.weight > 0.0 ? g.size - 1 : g.size;
    out.insert(out.end(), deflated, g.pole);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double ArrowheadSpectrum::unit_component(NodeIndex node) const {
  const Group& g = groups_[group_of_[node - 1]];
  return g.weight > 0.0 ? couplings_[node - 1] / g.weight : 0.0;
}

ComplexAmplitude ArrowheadSpectrum::amplitude(double t, NodeIndex src, NodeIndex dst) const {
  if (src >= dimension_ || dst >= dimension_) {
    throw ValidationError("amplitude index out of range");
  }
  auto component = [&](const SecularRoot& r, NodeIndex node) {
    if (node == kHub) return r.hub_component;
    return r.group_amp[group_of_[node - 1]] * unit_component(node);
  };

  ComplexAmplitude sum{0.0, 0.0};
  for (const SecularRoot& r : roots_) {
    sum += component(r, src) * component(r, dst) * std::polar(1.0, -r.value * t);
  }
  if (src != kHub && dst != kHub && group_of_[src - 1] == group_of_[dst - 1]) {
    // Projector onto the hub-decoupled part of the group.
    const double overlap = (src == dst ? 1.0 : 0.0) - unit_component(src) * unit_component(dst);
    sum += overlap * std::polar(1.0, -groups_[group_of_[src - 1]].pole * t);
  }
  return sum;
}

FidelityTrace ArrowheadSpectrum::fidelity_trace(std::span<const double> times, NodeIndex src,
                                                NodeIndex dst) const {
  check_time_grid(times);
  FidelityTrace trace;
  trace.times.assign(times.begin(), times.end());
  trace.values.reserve(times.size());
  for (double t : times) trace.values.push_back(std::norm(amplitude(t, src, dst)));
  return trace;
}

}  // namespace spinstar
