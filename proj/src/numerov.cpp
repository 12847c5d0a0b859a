#include "qhbound/numerov.hpp"

#include <cmath>

#include "qhbound/error.hpp"

namespace qhbound {

namespace numerov {

void propagate(std::span<const double> q, double h, std::span<double> y, std::size_t from,
               std::size_t to, bool rescale) {
  const double c = h * h / 12.0;
  const bool up = to > from;
  if (up ? from < 1 : from + 1 >= y.size())
    throw Error(Errc::InvalidArgument, "numerov propagation needs a preceding seed node");
  const std::ptrdiff_t step = up ? 1 : -1;
  auto i = static_cast<std::ptrdiff_t>(from);
  const auto stop = static_cast<std::ptrdiff_t>(to);
  while (i != stop) {
    const auto prev = static_cast<std::size_t>(i - step);
    const auto cur = static_cast<std::size_t>(i);
    const auto next = static_cast<std::size_t>(i + step);
    y[next] = (2.0 * y[cur] * (1.0 - 5.0 * c * q[cur]) - y[prev] * (1.0 + c * q[prev])) /
              (1.0 + c * q[next]);
    const double mag = std::abs(y[next]);
    if (rescale && mag > 1e250) {
      for (double& v : y) v *= 1e-250;
    } else if (!std::isfinite(mag) || mag > 1e300) {
      throw Error(Errc::Overflow, "numerov solution exceeded 1e300; renormalize and restart");
    }
    i += step;
  }
}

double derivative(std::span<const double> y, std::span<const double> q, double h, std::size_t i) {
  const double c = h * h / 6.0;
  return (y[i + 1] * (1.0 + c * q[i + 1]) - y[i - 1] * (1.0 + c * q[i - 1])) / (2.0 * h);
}

}  // namespace numerov

NumerovSolution numerov_integrate(const std::function<double(double)>& v_eff, double energy,
                                  const RadialGrid& grid, Direction direction, Seed seed) {
  if (grid.spacing() != Spacing::uniform)
    throw Error(Errc::NonUniformGrid, "numerov_integrate requires equal spacing in r");
  const std::size_t n = grid.size();
  if (n < 3) throw Error(Errc::InvalidArgument, "grid needs at least 3 nodes");
  if (!std::isfinite(seed.first) || !std::isfinite(seed.second))
    throw Error(Errc::InvalidArgument, "seed values must be finite");

  NumerovSolution out;
  out.values.assign(n, 0.0);
  if (seed.first == 0.0 && seed.second == 0.0) {
    out.degenerate = true;
    return out;
  }
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = v_eff(grid[i]);
    q[i] = std::isfinite(v) ? 2.0 * (energy - v) : 0.0;
  }
  if (direction == Direction::outward) {
    out.values[0] = seed.first;
    out.values[1] = seed.second;
    numerov::propagate(q, grid.step(), out.values, 1, n - 1, false);
  } else {
    out.values[n - 1] = seed.first;
    out.values[n - 2] = seed.second;
    numerov::propagate(q, grid.step(), out.values, n - 2, 0, false);
  }
  return out;
}

}  // namespace qhbound
