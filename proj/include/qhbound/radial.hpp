#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "qhbound/grid.hpp"

namespace qhbound {

/// Channel thresholds (hartree, ascending) and angular momenta.
struct ChannelSet {
  std::vector<double> thresholds;
  std::vector<int> angular_momentum;

  std::size_t size() const noexcept { return thresholds.size(); }
  /// Throws ValidationError on an empty set, unsorted thresholds, negative l
  /// or mismatched lengths.
  void validate() const;
};

/// One channel as seen by the radial solvers.
struct Channel {
  std::size_t index = 0;
  int l = 0;
};

enum class ModelKind { coulomb, hard_wall };

/// Long-range problem outside the reaction zone r > r0.
class LongRangeModel {
 public:
  /// Free motion on [r0, L] with a node at the wall; uniform grid.
  static LongRangeModel hard_wall(double r0, double wall_radius, double step);

  /// Attractive Coulomb tail -1/r on a sqrt(r) mesh reaching r_max.
  /// r0 must be 0 or at least `kMinCoulombR0`.
  static LongRangeModel coulomb(double r0, double r_max, double x_step);

  static constexpr double kMinCoulombR0 = 0.25;
  /// Smallest effective quantum number the Coulomb channel functions accept.
  static constexpr double kMinCoulombNu = 8.0;

  ModelKind kind() const noexcept { return kind_; }
  double r0() const noexcept { return r0_; }
  double wall_radius() const noexcept { return wall_radius_; }
  const RadialGrid& grid() const noexcept { return *grid_; }
  const std::shared_ptr<const RadialGrid>& grid_ptr() const noexcept { return grid_; }
  /// Grid node at r0.
  std::size_t r0_node() const noexcept { return r0_node_; }

 private:
  LongRangeModel(ModelKind kind, double r0, double wall, std::shared_ptr<const RadialGrid> grid);

  ModelKind kind_;
  double r0_;
  double wall_radius_;
  std::shared_ptr<const RadialGrid> grid_;
  std::size_t r0_node_;
};

/// Regular (f) and irregular (g) channel solutions with W(f, g) = f g' - f' g = 1,
/// sampled with r-derivatives on nodes [first_node, first_node + f.size()).
/// The boundary values are taken at the first sampled node, which is r0
/// except for a Coulomb model with r0 = 0, where g is singular and sampling
/// starts at r = kMinCoulombR0.
struct FGPair {
  Channel channel;
  double energy = 0.0;
  std::size_t first_node = 0;
  std::vector<double> f, f_prime, g, g_prime;
  double f_r0 = 0.0, f_deriv_r0 = 0.0, g_r0 = 0.0, g_deriv_r0 = 0.0;

  /// max |W(f,g) - 1| over the sampled nodes.
  double max_wronskian_error() const;
};

/// Decaying channel function F = cos(theta) f - sin(theta) g.
/// `values` may be empty when only boundary data and the norm are kept.
struct ChannelWave {
  Channel channel;
  double energy = 0.0;
  double theta = 0.0;
  double r0 = 0.0;
  std::size_t first_node = 0;
  std::vector<double> values;
  double F_r0 = 0.0;
  double Fprime_r0 = 0.0;
  /// Quadrature of F^2 over [r0, outer boundary], taken at construction.
  double norm2 = 0.0;
  std::shared_ptr<const RadialGrid> grid;

  bool has_samples() const noexcept { return !values.empty(); }
  /// Copy scaled by `factor` (samples, boundary data and norm).
  ChannelWave scaled(double factor) const;
  /// Drops the samples, keeping boundary data and norm.
  void strip() noexcept;
};

/// Unit-Wronskian (f, g) pair. Throws OpenChannel for eps >= 0 (coulomb) or
/// eps <= 0 (hard wall).
FGPair milne_pair(const LongRangeModel& model, Channel channel, double eps);

/// Boundary phase theta in (-pi/2, pi/2] such that cos(theta) f - sin(theta) g
/// satisfies the outer boundary condition: -pi nu (coulomb) or -k L (hard wall),
/// reduced mod pi.
double theta_phase(const LongRangeModel& model, Channel channel, double eps);

/// The same phase before reduction: -pi nu or -k L. Continuous in eps, which
/// keeps secular determinants free of the sign jumps the reduction introduces.
double continuous_phase(const LongRangeModel& model, Channel channel, double eps);

/// Outer radius that lets a Coulomb channel wave of effective quantum number
/// nu decay far enough for the boundary checks.
double coulomb_r_max_for(double nu);

ChannelWave channel_wave(const LongRangeModel& model, Channel channel, double eps,
                         bool keep_samples = true);

/// Overlap of two same-channel waves on [r0, inf) from the boundary Wronskian:
/// [F1 F2' - F1' F2](r0) / (2 (eps2 - eps1)).
double wronskian_overlap(const ChannelWave& w1, const ChannelWave& w2);

/// Simpson quadrature of F1 F2 over the common sampled range.
double quadrature_overlap(const ChannelWave& w1, const ChannelWave& w2);

/// Quadrature of F^2 over the sampled range.
double channel_norm(const ChannelWave& w);

/// Reduces an angle to (-pi/2, pi/2].
double reduce_half_turn(double theta);

}  // namespace qhbound
