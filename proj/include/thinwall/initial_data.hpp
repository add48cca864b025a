#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "thinwall/core.hpp"
#include "thinwall/errors.hpp"

namespace thinwall {

/// Limit initial data (u⁰, v⁰, z⁰); the ε-problem data are lifted from it.
template <typename Scalar>
struct InitialDataT {
  std::function<Scalar(Scalar)> u0;  ///< on [−L1, 0]
  std::function<Scalar(Scalar)> v0;  ///< on [0, L2]
  Scalar z0{0};
};

/// u0(−L1) = v0(L2) = 0 and u0(0) = v0(0) = z0, up to rounding in the
/// evaluation of the closed-form presets.
template <typename Scalar>
void check_compatible(const InitialDataT<Scalar>& d, Scalar L1, Scalar L2) {
  if (!d.u0 || !d.v0) throw IncompatibleData("initial data: missing rod profile");
  const Scalar scale = std::max<Scalar>(Scalar(1), std::abs(d.z0));
  const Scalar tol = Scalar(1e-12) * scale;
  if (std::abs(d.u0(-L1)) > tol || std::abs(d.v0(L2)) > tol)
    throw IncompatibleData("initial data: Dirichlet conditions violated");
  if (std::abs(d.u0(Scalar(0)) - d.z0) > tol || std::abs(d.v0(Scalar(0)) - d.z0) > tol)
    throw IncompatibleData("initial data: u0(0) = v0(0) = z0 violated");
}

/// Nodal interpolant on the limit mesh; the interface node receives z0.
template <typename Scalar>
LimitStateT<Scalar> sample_limit(const InitialDataT<Scalar>& d, const LimitMeshT<Scalar>& m) {
  check_compatible(d, m.L1(), m.L2());
  const Vector<Scalar> x = m.nodes();
  Vector<Scalar> nodes(m.num_nodes());
  for (Index i = 0; i < m.n1(); ++i) nodes(i) = d.u0(x(i));
  for (Index i = m.n1() + 1; i < m.num_nodes(); ++i) nodes(i) = d.v0(x(i));
  nodes(m.n1()) = d.z0;
  nodes(0) = Scalar(0);
  nodes(m.num_nodes() - 1) = Scalar(0);
  if (!nodes.allFinite()) throw IncompatibleData("initial data is not finite");
  return LimitStateT<Scalar>::from_nodes(std::move(nodes), m);
}

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"zero", "sine-antisym", "bump", "linear-tent"};
  return names;
}

/// Named initial data families scaled by `amplitude`:
///   zero          u0 = v0 = 0
///   sine-antisym  u0 = A sin(πx/L1), v0 = A sin(πx/L2), z0 = 0
///   bump          u0 = A cos(πx/2L1), v0 = A cos(πx/2L2), z0 = A
///   linear-tent   u0 = A(x+L1)/L1, v0 = A(L2−x)/L2, z0 = A
template <typename Scalar>
InitialDataT<Scalar> make_preset(std::string_view name, Scalar amplitude, const PhysicalParamsT<Scalar>& p) {
  const Scalar a = amplitude, L1 = p.L1(), L2 = p.L2();
  const Scalar pi = std::numbers::pi_v<Scalar>;
  if (name == "zero")
    return {[](Scalar) { return Scalar(0); }, [](Scalar) { return Scalar(0); }, Scalar(0)};
  if (name == "sine-antisym")
    return {[=](Scalar x) { return a * std::sin(pi * x / L1); },
            [=](Scalar x) { return a * std::sin(pi * x / L2); }, Scalar(0)};
  if (name == "bump")
    return {[=](Scalar x) { return a * std::cos(pi * x / (2 * L1)); },
            [=](Scalar x) { return a * std::cos(pi * x / (2 * L2)); }, a};
  if (name == "linear-tent")
    return {[=](Scalar x) { return a * (x + L1) / L1; }, [=](Scalar x) { return a * (L2 - x) / L2; }, a};
  throw InvalidValue("preset", std::string(name));
}

using InitialData = InitialDataT<double>;

}  // namespace thinwall
