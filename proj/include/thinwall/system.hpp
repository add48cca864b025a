#pragma once

// Lumped P1 assembly on a chain of uniform segments, θ-scheme stepping, and
// the trajectory container shared by both solvers.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "thinwall/core.hpp"
#include "thinwall/errors.hpp"
#include "thinwall/tridiagonal.hpp"

namespace thinwall {

/// Lumped mass M (diagonal) and stiffness K over the free unknowns, i.e. all
/// nodes except the two Dirichlet ends.
template <typename Scalar>
struct BandedSystemT {
  Vector<Scalar> mass;
  SymTridiagonal<Scalar> stiffness;

  Index size() const { return mass.size(); }

  /// ‖x‖²_M = xᵀ M x
  template <typename Derived>
  Scalar mass_norm_sq(const Eigen::MatrixBase<Derived>& x) const {
    return x.cwiseAbs2().dot(mass);
  }
  /// xᵀ K x
  template <typename Derived>
  Scalar stiffness_norm_sq(const Eigen::MatrixBase<Derived>& x) const {
    return stiffness.bilinear(x, x);
  }

  /// Positive mass, nonnegative diagonal, nonpositive couplings and weak
  /// diagonal dominance.
  bool well_formed() const {
    const Index n = size();
    if (stiffness.diag.size() != n || stiffness.off.size() != n - 1) return false;
    if ((mass.array() <= Scalar(0)).any()) return false;
    if ((stiffness.diag.array() < Scalar(0)).any()) return false;
    if ((stiffness.off.array() > Scalar(0)).any()) return false;
    for (Index i = 0; i < n; ++i) {
      Scalar offsum(0);
      if (i > 0) offsum += std::abs(stiffness.off(i - 1));
      if (i + 1 < n) offsum += std::abs(stiffness.off(i));
      const Scalar slack = Scalar(64) * Eigen::NumTraits<Scalar>::epsilon() * stiffness.diag(i);
      if (stiffness.diag(i) + slack < offsum) return false;
    }
    return true;
  }
};

/// One uniform segment of the chain: `cells` cells of width h with heat
/// capacity per unit length `capacity` and conductivity `conductivity`.
template <typename Scalar>
struct Segment {
  Index cells;
  Scalar h;
  Scalar capacity;
  Scalar conductivity;
};

/// Assembles segments laid end to end (consecutive segments share a node),
/// adds `point_masses` at global node indices, then drops the two end nodes.
template <typename Scalar>
BandedSystemT<Scalar> assemble_chain(const std::vector<Segment<Scalar>>& segments,
                                     const std::vector<std::pair<Index, Scalar>>& point_masses = {}) {
  Index cells = 0;
  for (const auto& s : segments) cells += s.cells;
  const Index nodes = cells + 1;

  Vector<Scalar> mass = Vector<Scalar>::Zero(nodes);
  Vector<Scalar> diag = Vector<Scalar>::Zero(nodes);
  Vector<Scalar> off = Vector<Scalar>::Zero(nodes - 1);
  Index cell = 0;
  for (const auto& s : segments) {
    const Scalar half_mass = s.capacity * s.h / 2;
    const Scalar kc = s.conductivity / s.h;
    for (Index j = 0; j < s.cells; ++j, ++cell) {
      mass(cell) += half_mass;
      mass(cell + 1) += half_mass;
      diag(cell) += kc;
      diag(cell + 1) += kc;
      off(cell) -= kc;
    }
  }
  for (const auto& [node, value] : point_masses) mass(node) += value;

  const Index n = nodes - 2;
  return {mass.segment(1, n), {diag.segment(1, n), off.segment(1, n - 1)}};
}

inline void require_supported_theta(double theta) {
  if (theta != 0.5 && theta != 1.0)
    throw InvalidArgument("theta must be 0.5 (Crank-Nicolson) or 1 (backward Euler)");
}

/// (M + θ dt K) y⁺ = (M − (1−θ) dt K) y with a cached factorization that is
/// rebuilt only when dt changes.
template <typename Scalar>
class ThetaStepper {
 public:
  ThetaStepper(BandedSystemT<Scalar> sys, Scalar theta) : sys_(std::move(sys)), theta_(theta) {
    require_supported_theta(static_cast<double>(theta));
  }

  template <typename Derived>
  Vector<Scalar> step(const Eigen::MatrixBase<Derived>& y, Scalar dt) {
    if (!(dt > Scalar(0))) throw InvalidArgument("dt must be positive");
    if (y.size() != sys_.size()) throw DimensionMismatch("theta step");
    if (!lu_ || dt != dt_) {
      lu_.emplace(shifted(sys_.mass, theta_ * dt, sys_.stiffness));
      dt_ = dt;
    }
    Vector<Scalar> rhs = sys_.mass.cwiseProduct(y);
    if (theta_ != Scalar(1)) rhs -= ((Scalar(1) - theta_) * dt) * (sys_.stiffness * y);
    return lu_->solve(rhs);
  }

  const BandedSystemT<Scalar>& system() const { return sys_; }
  Scalar theta() const { return theta_; }

 private:
  BandedSystemT<Scalar> sys_;
  Scalar theta_;
  Scalar dt_{0};
  std::optional<TridiagonalLU<Scalar>> lu_;
};

/// Time samples of one run, with E = ‖y‖²_H/2 and the squared W-seminorm.
template <typename State>
struct Trajectory {
  using Scalar = typename State::ScalarType;

  Scalar theta{1};
  std::vector<Scalar> times;
  std::vector<State> states;
  std::vector<Scalar> energy;
  std::vector<Scalar> w_sq;

  std::size_t size() const { return times.size(); }
  bool consistent() const {
    return states.size() == times.size() && energy.size() == times.size() &&
           w_sq.size() == times.size();
  }
};

/// Time grid 0, dt, 2dt, ..., T; the last step is shortened when T/dt is not
/// an integer.
template <typename Scalar>
std::vector<Scalar> time_grid(Scalar dt, Scalar T) {
  if (!(dt > Scalar(0))) throw InvalidArgument("dt must be positive");
  if (!(T >= dt)) throw InvalidArgument("T must be at least dt");
  const double ratio = static_cast<double>(T / dt);
  const double nearest = std::round(ratio);
  const long long steps = std::abs(ratio - nearest) <= 1e-9 * ratio
                              ? static_cast<long long>(nearest)
                              : static_cast<long long>(std::ceil(ratio));
  std::vector<Scalar> t(static_cast<std::size_t>(steps) + 1);
  for (long long i = 0; i < steps; ++i) t[static_cast<std::size_t>(i)] = Scalar(i) * dt;
  t.back() = T;
  return t;
}

template <typename State, typename EnergyFn, typename SeminormFn>
Trajectory<State> evolve(const State& y0, typename State::ScalarType dt,
                         typename State::ScalarType T, typename State::ScalarType theta,
                         const BandedSystemT<typename State::ScalarType>& sys, EnergyFn energy,
                         SeminormFn seminorm) {
  using Scalar = typename State::ScalarType;
  const std::vector<Scalar> grid = time_grid(dt, T);
  ThetaStepper<Scalar> stepper(sys, theta);

  Trajectory<State> traj;
  traj.theta = theta;
  traj.times.reserve(grid.size());
  traj.states.reserve(grid.size());
  auto record = [&](Scalar t, State y) {
    traj.times.push_back(t);
    traj.energy.push_back(energy(y) / 2);
    traj.w_sq.push_back(seminorm(y));
    traj.states.push_back(std::move(y));
  };
  record(grid[0], y0);
  for (std::size_t n = 1; n < grid.size(); ++n) {
    const State& prev = traj.states.back();
    State next = prev.with_free(stepper.step(prev.free(), grid[n] - grid[n - 1]));
    record(grid[n], std::move(next));
  }
  return traj;
}

using BandedSystem = BandedSystemT<double>;

}  // namespace thinwall
