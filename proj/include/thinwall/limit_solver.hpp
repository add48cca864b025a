#pragma once

// Two rods coupled through a point mass at x = 0.

#include "thinwall/core.hpp"
#include "thinwall/resolvent.hpp"
#include "thinwall/system.hpp"
#include "thinwall/tridiagonal.hpp"

namespace thinwall {

/// Lumped P1 system of the limit problem; the point mass c sits on the
/// interface diagonal.
template <typename Scalar>
BandedSystemT<Scalar> assemble_limit_system(const PhysicalParamsT<Scalar>& p,
                                            const LimitMeshT<Scalar>& m) {
  return assemble_chain<Scalar>(
      {{m.n1(), m.h1(), p.cap1(), p.k1()}, {m.n2(), m.h2(), p.cap2(), p.k2()}},
      {{m.interface_node(), p.c()}});
}

template <typename Scalar>
LimitStateT<Scalar> step_theta(const LimitStateT<Scalar>& y, Scalar dt, Scalar theta,
                               const BandedSystemT<Scalar>& sys) {
  if (y.free().size() != sys.size()) throw DimensionMismatch("state does not match system");
  ThetaStepper<Scalar> stepper(sys, theta);
  return y.with_free(stepper.step(y.free(), dt));
}

/// Galerkin load of (f, g, h) on the free nodes: rod nodes get c_iρ_i h_i times
/// the source, the interface gets c·h plus half a cell of each rod source.
template <typename Scalar>
Vector<Scalar> steady_load(const HVectorT<Scalar>& rhs, const PhysicalParamsT<Scalar>& p,
                           const LimitMeshT<Scalar>& m) {
  if (rhs.f.size() != m.n1() + 1 || rhs.g.size() != m.n2() + 1)
    throw DimensionMismatch("steady rhs does not match mesh");
  const Index n1 = m.n1(), n2 = m.n2();
  Vector<Scalar> b(m.num_free());
  b.head(n1 - 1) = p.cap1() * m.h1() * rhs.f.segment(1, n1 - 1);
  b(n1 - 1) = p.c() * rhs.h + p.cap1() * m.h1() * rhs.f(n1) / 2 + p.cap2() * m.h2() * rhs.g(0) / 2;
  b.tail(n2 - 1) = p.cap2() * m.h2() * rhs.g.segment(1, n2 - 1);
  return b;
}

/// Discrete A y = rhs, i.e. K y = −(load of rhs).
template <typename Scalar>
LimitStateT<Scalar> solve_steady_discrete(const BandedSystemT<Scalar>& sys,
                                          const HVectorT<Scalar>& rhs,
                                          const PhysicalParamsT<Scalar>& p,
                                          const LimitMeshT<Scalar>& m) {
  if (sys.size() != m.num_free()) throw DimensionMismatch("system does not match mesh");
  const TridiagonalLU<Scalar> lu(sys.stiffness);
  return LimitStateT<Scalar>::from_free(lu.solve(-steady_load(rhs, p, m)), m);
}

template <typename Scalar>
Trajectory<LimitStateT<Scalar>> evolve_limit(const LimitStateT<Scalar>& y0, Scalar dt, Scalar T,
                                             Scalar theta, const PhysicalParamsT<Scalar>& p,
                                             const LimitMeshT<Scalar>& m) {
  y0.require_conforms(m);
  return evolve(
      y0, dt, T, theta, assemble_limit_system(p, m),
      [&](const LimitStateT<Scalar>& y) { return h_norm_sq_limit(y, p, m); },
      [&](const LimitStateT<Scalar>& y) { return w_seminorm_sq_limit(y, p, m); });
}

}  // namespace thinwall
