#pragma once

// Closed-form solution of A y = (f, g, h) for the limit generator, and a
// finite-difference application of A. Both serve as independent references
// for the assembled solvers.

#include <Eigen/Dense>

#include <cmath>
#include <functional>

#include "thinwall/core.hpp"
#include "thinwall/errors.hpp"

namespace thinwall {

template <typename Scalar>
struct ResolventDataT {
  std::function<Scalar(Scalar)> f;  ///< source on rod 1
  std::function<Scalar(Scalar)> g;  ///< source on rod 2
  Scalar h{0};                      ///< source in the point-mass equation
};

/// An element (f, g, h) of H sampled at every rod node. f(0) and g(0) are the
/// one-sided values of the rod sources at the interface.
template <typename Scalar>
struct HVectorT {
  Vector<Scalar> f;
  Vector<Scalar> g;
  Scalar h{0};

  static HVectorT zero(const LimitMeshT<Scalar>& m) {
    return {Vector<Scalar>::Zero(m.n1() + 1), Vector<Scalar>::Zero(m.n2() + 1), Scalar(0)};
  }
};

template <typename Scalar>
HVectorT<Scalar> sample(const ResolventDataT<Scalar>& d, const LimitMeshT<Scalar>& m) {
  HVectorT<Scalar> out{Vector<Scalar>(m.n1() + 1), Vector<Scalar>(m.n2() + 1), d.h};
  const Vector<Scalar> x1 = m.rod1_nodes();
  const Vector<Scalar> x2 = m.rod2_nodes();
  for (Index j = 0; j < x1.size(); ++j) out.f(j) = d.f ? d.f(x1(j)) : Scalar(0);
  for (Index j = 0; j < x2.size(); ++j) out.g(j) = d.g ? d.g(x2(j)) : Scalar(0);
  if (!out.f.allFinite() || !out.g.allFinite() || !std::isfinite(static_cast<double>(d.h)))
    throw NonFiniteSource("resolvent source is not finite");
  return out;
}

/// Integration constants of the closed-form solution.
template <typename Scalar>
struct ClosedFormCoefficients {
  Scalar F0, G0;
  Scalar Cu, Cv, Cz;
};

namespace detail {

// F(x_j) = ∫_{−L1}^{x_j} ∫_s^0 α₁⁻² f, by two cumulative trapezoid passes.
template <typename Scalar>
Vector<Scalar> nested_integral_rod1(const Vector<Scalar>& f, Scalar h, Scalar inv_alpha_sq) {
  const Index n = f.size();
  Vector<Scalar> inner(n);  // ∫_{x_j}^0
  inner(n - 1) = Scalar(0);
  for (Index j = n - 2; j >= 0; --j) inner(j) = inner(j + 1) + h * (f(j) + f(j + 1)) / 2;
  inner *= inv_alpha_sq;
  Vector<Scalar> outer(n);
  outer(0) = Scalar(0);
  for (Index j = 1; j < n; ++j) outer(j) = outer(j - 1) + h * (inner(j - 1) + inner(j)) / 2;
  return outer;
}

// G(x_j) = ∫_{x_j}^{L2} ∫_0^s α₂⁻² g.
template <typename Scalar>
Vector<Scalar> nested_integral_rod2(const Vector<Scalar>& g, Scalar h, Scalar inv_alpha_sq) {
  const Index n = g.size();
  Vector<Scalar> inner(n);  // ∫_0^{x_j}
  inner(0) = Scalar(0);
  for (Index j = 1; j < n; ++j) inner(j) = inner(j - 1) + h * (g(j - 1) + g(j)) / 2;
  inner *= inv_alpha_sq;
  Vector<Scalar> outer(n);
  outer(n - 1) = Scalar(0);
  for (Index j = n - 2; j >= 0; --j) outer(j) = outer(j + 1) + h * (inner(j) + inner(j + 1)) / 2;
  return outer;
}

}  // namespace detail

template <typename Scalar>
ClosedFormCoefficients<Scalar> closed_form_coefficients(Scalar F0, Scalar G0, Scalar h,
                                                        const PhysicalParamsT<Scalar>& p) {
  const Scalar L1 = p.L1(), L2 = p.L2(), k1 = p.k1(), k2 = p.k2(), c = p.c();
  const Scalar den = k2 * L1 + k1 * L2;
  return {F0,
          G0,
          (-c * h * L2 + k2 * (F0 - G0)) / den,
          (c * h * L1 + k1 * (F0 - G0)) / den,
          -(c * h * L1 * L2 + L2 * k1 * F0 + L1 * k2 * G0) / den};
}

/// Solution of A y = (f, g, h): u = C_u(x+L1) − F, v = C_v(x−L2) − G, z = C_z.
/// The interface node carries C_z, so u(0) = v(0) = z is exact.
template <typename Scalar>
LimitStateT<Scalar> steady_closed_form(const HVectorT<Scalar>& d, const PhysicalParamsT<Scalar>& p,
                                       const LimitMeshT<Scalar>& m,
                                       ClosedFormCoefficients<Scalar>* coeffs_out = nullptr) {
  if (d.f.size() != m.n1() + 1 || d.g.size() != m.n2() + 1)
    throw DimensionMismatch("resolvent source does not match mesh");
  if (!d.f.allFinite() || !d.g.allFinite() || !std::isfinite(static_cast<double>(d.h)))
    throw NonFiniteSource("resolvent source is not finite");

  const Vector<Scalar> F = detail::nested_integral_rod1(d.f, m.h1(), Scalar(1) / p.alpha1_sq());
  const Vector<Scalar> G = detail::nested_integral_rod2(d.g, m.h2(), Scalar(1) / p.alpha2_sq());
  const auto cf = closed_form_coefficients(F(m.n1()), G(0), d.h, p);
  if (coeffs_out) *coeffs_out = cf;

  const Vector<Scalar> x = m.nodes();
  Vector<Scalar> nodes(m.num_nodes());
  for (Index j = 1; j < m.n1(); ++j) nodes(j) = cf.Cu * (x(j) + p.L1()) - F(j);
  for (Index j = 1; j < m.n2(); ++j) nodes(m.n1() + j) = cf.Cv * (x(m.n1() + j) - p.L2()) - G(j);
  nodes(0) = Scalar(0);
  nodes(m.num_nodes() - 1) = Scalar(0);
  nodes(m.n1()) = cf.Cz;
  return LimitStateT<Scalar>::from_nodes(std::move(nodes), m);
}

template <typename Scalar>
LimitStateT<Scalar> steady_closed_form(const ResolventDataT<Scalar>& d,
                                       const PhysicalParamsT<Scalar>& p,
                                       const LimitMeshT<Scalar>& m) {
  return steady_closed_form(sample(d, m), p, m);
}

enum class FluxStencil {
  OneSided1,  ///< (u₀ − u₋₁)/h, matches the assembled stiffness row
  OneSided2,  ///< (3u₀ − 4u₋₁ + u₋₂)/(2h)
};

/// A y restricted to the discrete unknowns: interior rod nodes and the point mass.
template <typename Scalar>
struct GeneratorImageT {
  Vector<Scalar> rod1;  ///< interior rod-1 nodes 1..N1−1
  Vector<Scalar> rod2;  ///< interior rod-2 nodes 1..N2−1
  Scalar point{0};
};

template <typename Scalar>
GeneratorImageT<Scalar> apply_generator_limit(const LimitStateT<Scalar>& y,
                                              const PhysicalParamsT<Scalar>& p,
                                              const LimitMeshT<Scalar>& m,
                                              FluxStencil stencil = FluxStencil::OneSided1) {
  y.require_conforms(m);
  const auto u = y.u();
  const auto v = y.v();
  const Index n1 = m.n1(), n2 = m.n2();
  const Scalar h1 = m.h1(), h2 = m.h2();

  GeneratorImageT<Scalar> out;
  out.rod1 = p.alpha1_sq() * (u.head(n1 - 1) - 2 * u.segment(1, n1 - 1) + u.tail(n1 - 1)) / (h1 * h1);
  out.rod2 = p.alpha2_sq() * (v.head(n2 - 1) - 2 * v.segment(1, n2 - 1) + v.tail(n2 - 1)) / (h2 * h2);

  Scalar du_left, dv_right;
  if (stencil == FluxStencil::OneSided1) {
    du_left = (u(n1) - u(n1 - 1)) / h1;
    dv_right = (v(1) - v(0)) / h2;
  } else {
    du_left = (3 * u(n1) - 4 * u(n1 - 1) + u(n1 - 2)) / (2 * h1);
    dv_right = (-3 * v(0) + 4 * v(1) - v(2)) / (2 * h2);
  }
  out.point = (p.k2() * dv_right - p.k1() * du_left) / p.c();
  return out;
}

using ResolventData = ResolventDataT<double>;
using HVector = HVectorT<double>;
using GeneratorImage = GeneratorImageT<double>;

}  // namespace thinwall
