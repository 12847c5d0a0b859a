#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qhbound {

/// Node placement rule. `uniform` is equally spaced in r; `sqrt_uniform` is
/// equally spaced in x = sqrt(r), which keeps a constant number of nodes per
/// Coulomb oscillation at all radii.
enum class Spacing { uniform, sqrt_uniform };

class RadialGrid {
 public:
  /// Equal steps in r on [r_min, r_max]; the step is shrunk so that r_max
  /// falls exactly on a node.
  static RadialGrid uniform(double r_min, double r_max, double step);

  /// Equal steps in x = sqrt(r) on [0, sqrt(r_max)]. The x step is shrunk so
  /// that `anchor` (if > 0) lands exactly on a node.
  static RadialGrid sqrt_uniform(double r_max, double x_step, double anchor = 0.0);

  Spacing spacing() const noexcept { return spacing_; }
  double r_min() const noexcept { return nodes_.front(); }
  double r_max() const noexcept { return nodes_.back(); }
  /// Step in the uniform variable (r or sqrt(r)).
  double step() const noexcept { return step_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  double operator[](std::size_t i) const noexcept { return nodes_[i]; }

  /// Value of the uniform variable at node i.
  double coordinate(std::size_t i) const noexcept;

  /// Index of the node closest to r.
  std::size_t nearest(double r) const noexcept;

  /// Composite Simpson integral of y(r) dr over nodes [first, first + y.size()),
  /// with a 3/8 panel closing an odd interval count.
  double integrate(std::span<const double> y, std::size_t first = 0) const;

  bool same_as(const RadialGrid& other) const noexcept;

 private:
  RadialGrid(Spacing spacing, double step, std::vector<double> nodes)
      : spacing_(spacing), step_(step), nodes_(std::move(nodes)) {}

  Spacing spacing_;
  double step_;
  std::vector<double> nodes_;
};

}  // namespace qhbound
