#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qhbound/grid.hpp"

namespace qhbound {

enum class Direction { outward, inward };

/// Starting values: nodes 0 and 1 when integrating outward, nodes N and N-1
/// when integrating inward.
struct Seed {
  double first = 0.0;
  double second = 0.0;
};

struct NumerovSolution {
  std::vector<double> values;
  /// Both seeds were zero, so the solution is identically zero.
  bool degenerate = false;
};

/// Solves -u''/2 + v_eff(r) u = energy u on a uniform grid.
/// Throws NonUniformGrid for any other spacing and Overflow when |u| passes 1e300.
NumerovSolution numerov_integrate(const std::function<double(double)>& v_eff, double energy,
                                  const RadialGrid& grid, Direction direction, Seed seed);

namespace numerov {

/// Propagates y'' + q y = 0 with step h from node `from` towards node `to`
/// (inclusive). y[from] and its predecessor in the direction of travel must
/// be set. With `rescale`, the filled segment is divided down whenever a value
/// passes 1e250; otherwise passing 1e300 throws Overflow.
void propagate(std::span<const double> q, double h, std::span<double> y, std::size_t from,
               std::size_t to, bool rescale);

/// First derivative dy/dx at interior node i, fourth order, using the
/// equation itself to cancel the leading error term.
double derivative(std::span<const double> y, std::span<const double> q, double h, std::size_t i);

}  // namespace numerov

}  // namespace qhbound
