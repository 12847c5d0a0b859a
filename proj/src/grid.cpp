#include "qhbound/grid.hpp"

#include <algorithm>
#include <cmath>

#include "qhbound/error.hpp"

namespace qhbound {

namespace {

double simpson(std::span<const double> y, double h) {
  const std::size_t n = y.size() - 1;  // intervals
  if (n == 0) return 0.0;
  if (n == 1) return 0.5 * h * (y[0] + y[1]);
  if (n % 2 == 1) {
    const std::size_t m = n - 3;
    const double tail = 3.0 * h / 8.0 * (y[m] + 3.0 * y[m + 1] + 3.0 * y[m + 2] + y[m + 3]);
    return (m > 0 ? simpson(y.first(m + 1), h) : 0.0) + tail;
  }
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i < n; i += 2) odd += y[i];
  for (std::size_t i = 2; i < n; i += 2) even += y[i];
  return h / 3.0 * (y[0] + y[n] + 4.0 * odd + 2.0 * even);
}

}  // namespace

RadialGrid RadialGrid::uniform(double r_min, double r_max, double step) {
  if (!(r_min >= 0.0) || !(r_max > r_min) || !(step > 0.0))
    throw Error(Errc::InvalidArgument, "uniform grid needs 0 <= r_min < r_max and step > 0");
  const auto intervals = static_cast<std::size_t>(std::ceil((r_max - r_min) / step - 1e-9));
  const double h = (r_max - r_min) / static_cast<double>(intervals);
  std::vector<double> nodes(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) nodes[i] = r_min + h * static_cast<double>(i);
  nodes.back() = r_max;
  return RadialGrid(Spacing::uniform, h, std::move(nodes));
}

RadialGrid RadialGrid::sqrt_uniform(double r_max, double x_step, double anchor) {
  if (!(r_max > 0.0) || !(x_step > 0.0) || anchor < 0.0 || anchor >= r_max)
    throw Error(Errc::InvalidArgument, "sqrt grid needs r_max > 0, x_step > 0, 0 <= anchor < r_max");
  double h = x_step;
  if (anchor > 0.0) {
    const double xa = std::sqrt(anchor);
    h = xa / std::ceil(xa / x_step - 1e-9);
  }
  const auto intervals = static_cast<std::size_t>(std::ceil(std::sqrt(r_max) / h));
  std::vector<double> nodes(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double x = h * static_cast<double>(i);
    nodes[i] = x * x;
  }
  return RadialGrid(Spacing::sqrt_uniform, h, std::move(nodes));
}

double RadialGrid::coordinate(std::size_t i) const noexcept {
  return spacing_ == Spacing::uniform ? nodes_[i] : step_ * static_cast<double>(i);
}

std::size_t RadialGrid::nearest(double r) const noexcept {
  const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), r);
  if (it == nodes_.begin()) return 0;
  if (it == nodes_.end()) return nodes_.size() - 1;
  const auto i = static_cast<std::size_t>(it - nodes_.begin());
  return (r - nodes_[i - 1] < nodes_[i] - r) ? i - 1 : i;
}

double RadialGrid::integrate(std::span<const double> y, std::size_t first) const {
  if (first + y.size() > nodes_.size())
    throw Error(Errc::GridMismatch, "integrand extends past the grid");
  if (y.empty()) return 0.0;
  if (spacing_ == Spacing::uniform) return simpson(y, step_);
  // dr = 2x dx on the sqrt mesh
  std::vector<double> w(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) w[i] = 2.0 * coordinate(first + i) * y[i];
  return simpson(w, step_);
}

bool RadialGrid::same_as(const RadialGrid& other) const noexcept {
  return spacing_ == other.spacing_ && step_ == other.step_ && nodes_.size() == other.nodes_.size() &&
         nodes_.front() == other.nodes_.front() && nodes_.back() == other.nodes_.back();
}

}  // namespace qhbound
