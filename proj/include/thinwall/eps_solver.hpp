#pragma once

// Two rods joined by a wall of width 2ε and heat capacity density c/(2ε).

#include <cmath>
#include <functional>

#include "thinwall/core.hpp"
#include "thinwall/initial_data.hpp"
#include "thinwall/system.hpp"

namespace thinwall {

/// Lumped P1 system over rod 1, wall and rod 2. Flux matching at ±ε is the
/// natural condition of the shared-node assembly.
template <typename Scalar>
BandedSystemT<Scalar> assemble_eps_system(const PhysicalParamsT<Scalar>& p,
                                          const EpsMeshT<Scalar>& m) {
  const Scalar wall_capacity = p.c() / (Scalar(2) * m.eps());
  return assemble_chain<Scalar>({{m.n1(), m.h1(), p.cap1(), p.k1()},
                                 {m.nw(), m.hw(), wall_capacity, p.k()},
                                 {m.n2(), m.h2(), p.cap2(), p.k2()}});
}

/// Samples (u0, v0) on the shortened rods and fills the wall with the linear
/// interpolant between u0(−ε) and v0(ε).
template <typename Scalar>
EpsStateT<Scalar> lift_initial_data(const InitialDataT<Scalar>& d, const EpsMeshT<Scalar>& m) {
  check_compatible(d, m.L1(), m.L2());
  const Vector<Scalar> x = m.nodes();
  Vector<Scalar> nodes(m.num_nodes());
  const Index a = m.left_interface_node(), b = m.right_interface_node();
  for (Index i = 0; i <= a; ++i) nodes(i) = d.u0(x(i));
  for (Index i = b; i < m.num_nodes(); ++i) nodes(i) = d.v0(x(i));
  const Scalar left = nodes(a), right = nodes(b);
  for (Index j = 1; j < m.nw(); ++j) {
    const Scalar s = Scalar(j) / Scalar(m.nw());
    nodes(a + j) = (Scalar(1) - s) * left + s * right;
  }
  nodes(0) = Scalar(0);
  nodes(m.num_nodes() - 1) = Scalar(0);
  if (!nodes.allFinite()) throw IncompatibleData("initial data is not finite");
  return EpsStateT<Scalar>::from_nodes(std::move(nodes), m);
}

template <typename Scalar>
EpsStateT<Scalar> step_theta_eps(const EpsStateT<Scalar>& y, Scalar dt, Scalar theta,
                                 const BandedSystemT<Scalar>& sys) {
  if (y.free().size() != sys.size()) throw DimensionMismatch("state does not match system");
  ThetaStepper<Scalar> stepper(sys, theta);
  return y.with_free(stepper.step(y.free(), dt));
}

template <typename Scalar>
Trajectory<EpsStateT<Scalar>> evolve_eps(const EpsStateT<Scalar>& y0, Scalar dt, Scalar T,
                                         Scalar theta, const PhysicalParamsT<Scalar>& p,
                                         const EpsMeshT<Scalar>& m) {
  y0.require_conforms(m);
  return evolve(
      y0, dt, T, theta, assemble_eps_system(p, m),
      [&](const EpsStateT<Scalar>& y) { return h_norm_sq_eps(y, p, m); },
      [&](const EpsStateT<Scalar>& y) { return w_seminorm_sq_eps(y, p, m); });
}

}  // namespace thinwall
