#pragma once

// Physical parameters, meshes and states for the two-rod/thin-wall system and
// its point-mass limit, together with the weighted norms of both problems.

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <utility>

#include "thinwall/errors.hpp"

namespace thinwall {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Trapezoidal rule for nodal samples with uniform spacing h.
template <typename Derived>
typename Derived::Scalar trapezoid(const Eigen::MatrixBase<Derived>& f,
                                   typename Derived::Scalar h) {
  const Index n = f.size();
  if (n < 2) return typename Derived::Scalar(0);
  return h * (f.sum() - (f(0) + f(n - 1)) / 2);
}

/// Σ (x_{i+1} − x_i)².
template <typename Derived>
typename Derived::Scalar sum_sq_differences(const Eigen::MatrixBase<Derived>& x) {
  const Index n = x.size();
  if (n < 2) return typename Derived::Scalar(0);
  return (x.tail(n - 1) - x.head(n - 1)).squaredNorm();
}

// ---------------------------------------------------------------------------
// Parameters

template <typename Scalar>
struct RawParamsT {
  Scalar c1{1}, rho1{1}, k1{1};
  Scalar c2{1}, rho2{1}, k2{1};
  Scalar c{1}, k{1};
  Scalar L1{1}, L2{1};
};

/// Validated material constants. Diffusivities are always recomputed from
/// k_i/(c_i ρ_i).
template <typename Scalar>
class PhysicalParamsT {
 public:
  Scalar c1() const { return raw_.c1; }
  Scalar rho1() const { return raw_.rho1; }
  Scalar k1() const { return raw_.k1; }
  Scalar c2() const { return raw_.c2; }
  Scalar rho2() const { return raw_.rho2; }
  Scalar k2() const { return raw_.k2; }
  Scalar c() const { return raw_.c; }
  Scalar k() const { return raw_.k; }
  Scalar L1() const { return raw_.L1; }
  Scalar L2() const { return raw_.L2; }

  Scalar alpha1_sq() const { return raw_.k1 / (raw_.c1 * raw_.rho1); }
  Scalar alpha2_sq() const { return raw_.k2 / (raw_.c2 * raw_.rho2); }
  /// Volumetric heat capacities c_i ρ_i.
  Scalar cap1() const { return raw_.c1 * raw_.rho1; }
  Scalar cap2() const { return raw_.c2 * raw_.rho2; }

  const RawParamsT<Scalar>& raw() const { return raw_; }

  /// Exchange the roles of the two rods (the image of the system under x ↦ −x).
  PhysicalParamsT reflected() const {
    RawParamsT<Scalar> r = raw_;
    std::swap(r.c1, r.c2);
    std::swap(r.rho1, r.rho2);
    std::swap(r.k1, r.k2);
    std::swap(r.L1, r.L2);
    return PhysicalParamsT(r);
  }

 private:
  explicit PhysicalParamsT(const RawParamsT<Scalar>& raw) : raw_(raw) {}
  RawParamsT<Scalar> raw_;

  template <typename S>
  friend PhysicalParamsT<S> validate_params(const RawParamsT<S>& raw);
};

template <typename Scalar>
PhysicalParamsT<Scalar> validate_params(const RawParamsT<Scalar>& raw) {
  const std::pair<const char*, Scalar> fields[] = {
      {"c1", raw.c1}, {"rho1", raw.rho1}, {"k1", raw.k1}, {"c2", raw.c2},
      {"rho2", raw.rho2}, {"k2", raw.k2}, {"c", raw.c}, {"k", raw.k},
      {"L1", raw.L1}, {"L2", raw.L2}};
  for (const auto& [name, value] : fields) {
    // !(x > 0) also catches NaN
    if (!(value > Scalar(0)) || !std::isfinite(static_cast<double>(value)))
      throw NonPositiveParameter(name);
  }
  return PhysicalParamsT<Scalar>(raw);
}

// ---------------------------------------------------------------------------
// Meshes

/// Uniform grids on [−L1, 0] and [0, L2] sharing the node x = 0, which carries
/// the point-mass degree of freedom. Global node order runs from −L1 to L2.
template <typename Scalar>
class LimitMeshT {
 public:
  LimitMeshT(Scalar L1, Scalar L2, Index n1, Index n2) : L1_(L1), L2_(L2), n1_(n1), n2_(n2) {
    if (n1 < 2 || n2 < 2) throw InvalidArgument("limit mesh needs at least 2 cells per rod");
    if (!(L1 > Scalar(0)) || !(L2 > Scalar(0)))
      throw InvalidArgument("limit mesh needs positive rod lengths");
  }
  LimitMeshT(const PhysicalParamsT<Scalar>& p, Index n1, Index n2)
      : LimitMeshT(p.L1(), p.L2(), n1, n2) {}

  Index n1() const { return n1_; }
  Index n2() const { return n2_; }
  Scalar L1() const { return L1_; }
  Scalar L2() const { return L2_; }
  Scalar h1() const { return L1_ / Scalar(n1_); }
  Scalar h2() const { return L2_ / Scalar(n2_); }

  Index num_nodes() const { return n1_ + n2_ + 1; }
  Index num_free() const { return n1_ + n2_ - 1; }
  Index interface_node() const { return n1_; }

  Scalar x(Index i) const {
    if (i == 0) return -L1_;
    if (i < n1_) return -L1_ + Scalar(i) * h1();
    if (i == n1_) return Scalar(0);
    if (i == num_nodes() - 1) return L2_;
    return Scalar(i - n1_) * h2();
  }
  Vector<Scalar> nodes() const {
    Vector<Scalar> x(num_nodes());
    for (Index i = 0; i < num_nodes(); ++i) x(i) = this->x(i);
    return x;
  }
  Vector<Scalar> rod1_nodes() const { return nodes().head(n1_ + 1); }
  Vector<Scalar> rod2_nodes() const { return nodes().tail(n2_ + 1); }

  /// The mesh of the mirrored problem (x ↦ −x).
  LimitMeshT reflected() const { return LimitMeshT(L2_, L1_, n2_, n1_); }

 private:
  Scalar L1_, L2_;
  Index n1_, n2_;
};

/// Uniform grids on [−L1, −ε], [−ε, ε] and [ε, L2]. The nodes ±ε are shared
/// between the adjacent grids and stored once.
template <typename Scalar>
class EpsMeshT {
 public:
  EpsMeshT(Scalar L1, Scalar L2, Scalar eps, Index n1, Index nw, Index n2)
      : L1_(L1), L2_(L2), eps_(eps), n1_(n1), nw_(nw), n2_(n2) {
    if (n1 < 2 || n2 < 2) throw InvalidArgument("eps mesh needs at least 2 cells per rod");
    if (nw < 2) throw InvalidArgument("eps mesh needs at least 2 wall cells");
    if (!(eps > Scalar(0)) || !(eps < L1) || !(eps < L2))
      throw InvalidArgument("eps must satisfy 0 < eps < min(L1, L2)");
  }
  EpsMeshT(const PhysicalParamsT<Scalar>& p, Scalar eps, Index n1, Index nw, Index n2)
      : EpsMeshT(p.L1(), p.L2(), eps, n1, nw, n2) {}

  Scalar eps() const { return eps_; }
  Scalar L1() const { return L1_; }
  Scalar L2() const { return L2_; }
  Index n1() const { return n1_; }
  Index nw() const { return nw_; }
  Index n2() const { return n2_; }
  Scalar h1() const { return (L1_ - eps_) / Scalar(n1_); }
  Scalar hw() const { return Scalar(2) * eps_ / Scalar(nw_); }
  Scalar h2() const { return (L2_ - eps_) / Scalar(n2_); }

  Index num_nodes() const { return n1_ + nw_ + n2_ + 1; }
  Index num_free() const { return n1_ + nw_ + n2_ - 1; }
  Index left_interface_node() const { return n1_; }
  Index right_interface_node() const { return n1_ + nw_; }

  Scalar x(Index i) const {
    const Index a = n1_, b = n1_ + nw_;
    if (i == 0) return -L1_;
    if (i < a) return -L1_ + Scalar(i) * h1();
    if (i == a) return -eps_;
    if (i < b) return -eps_ + Scalar(i - a) * hw();
    if (i == b) return eps_;
    if (i == num_nodes() - 1) return L2_;
    return eps_ + Scalar(i - b) * h2();
  }
  Vector<Scalar> nodes() const {
    Vector<Scalar> x(num_nodes());
    for (Index i = 0; i < num_nodes(); ++i) x(i) = this->x(i);
    return x;
  }
  Vector<Scalar> rod1_nodes() const { return nodes().head(n1_ + 1); }
  Vector<Scalar> wall_nodes() const { return nodes().segment(n1_, nw_ + 1); }
  Vector<Scalar> rod2_nodes() const { return nodes().tail(n2_ + 1); }

 private:
  Scalar L1_, L2_, eps_;
  Index n1_, nw_, n2_;
};

// ---------------------------------------------------------------------------
// States

/// Nodal temperatures of the limit system. u, v and z are views into one
/// global node vector, so u(0) = v(0) = z holds by construction; the
/// Dirichlet ends are checked on entry.
template <typename Scalar>
class LimitStateT {
 public:
  using ScalarType = Scalar;

  static LimitStateT zero(const LimitMeshT<Scalar>& m) {
    return LimitStateT(Vector<Scalar>::Zero(m.num_nodes()), m.n1(), m.n2());
  }

  static LimitStateT from_nodes(Vector<Scalar> nodes, const LimitMeshT<Scalar>& m) {
    if (nodes.size() != m.num_nodes()) throw DimensionMismatch("limit state: node count");
    if (nodes(0) != Scalar(0) || nodes(nodes.size() - 1) != Scalar(0))
      throw IncompatibleData("limit state: Dirichlet ends must be zero");
    return LimitStateT(std::move(nodes), m.n1(), m.n2());
  }

  /// Values at interior nodes only; boundary zeros are inserted.
  template <typename Derived>
  static LimitStateT from_free(const Eigen::MatrixBase<Derived>& free, const LimitMeshT<Scalar>& m) {
    if (free.size() != m.num_free()) throw DimensionMismatch("limit state: free count");
    Vector<Scalar> nodes = Vector<Scalar>::Zero(m.num_nodes());
    nodes.segment(1, m.num_free()) = free;
    return LimitStateT(std::move(nodes), m.n1(), m.n2());
  }

  /// Rejects (rather than projects) data violating u(0) = v(0) = z or the
  /// boundary conditions.
  static LimitStateT from_fields(const Vector<Scalar>& u, const Vector<Scalar>& v, Scalar z,
                                 const LimitMeshT<Scalar>& m) {
    if (u.size() != m.n1() + 1 || v.size() != m.n2() + 1)
      throw DimensionMismatch("limit state: field sizes");
    if (u(m.n1()) != z || v(0) != z)
      throw IncompatibleData("limit state: u(0) = v(0) = z violated");
    Vector<Scalar> nodes(m.num_nodes());
    nodes.head(m.n1() + 1) = u;
    nodes.tail(m.n2() + 1) = v;
    return from_nodes(std::move(nodes), m);
  }

  auto u() const { return nodes_.head(n1_ + 1); }
  auto v() const { return nodes_.tail(n2_ + 1); }
  Scalar z() const { return nodes_(n1_); }
  auto free() const { return nodes_.segment(1, nodes_.size() - 2); }
  const Vector<Scalar>& nodes() const { return nodes_; }
  Index n1() const { return n1_; }
  Index n2() const { return n2_; }

  /// Same layout with the interior values replaced; the Dirichlet zeros stay.
  template <typename Derived>
  LimitStateT with_free(const Eigen::MatrixBase<Derived>& free) const {
    if (free.size() != nodes_.size() - 2) throw DimensionMismatch("state: free count");
    LimitStateT out = *this;
    out.nodes_.segment(1, free.size()) = free;
    return out;
  }

  bool conforms(const LimitMeshT<Scalar>& m) const { return n1_ == m.n1() && n2_ == m.n2(); }
  void require_conforms(const LimitMeshT<Scalar>& m) const {
    if (!conforms(m)) throw DimensionMismatch("limit state does not match mesh");
  }

  /// State of the mirrored problem, living on m.reflected().
  LimitStateT reflected() const { return LimitStateT(nodes_.reverse(), n2_, n1_); }

 private:
  LimitStateT(Vector<Scalar> nodes, Index n1, Index n2)
      : nodes_(std::move(nodes)), n1_(n1), n2_(n2) {}
  Vector<Scalar> nodes_;
  Index n1_, n2_;
};

/// Nodal temperatures of the ε-problem; u, z, v are overlapping views of the
/// global node vector (the nodes ±ε are shared).
template <typename Scalar>
class EpsStateT {
 public:
  using ScalarType = Scalar;

  static EpsStateT zero(const EpsMeshT<Scalar>& m) {
    return EpsStateT(Vector<Scalar>::Zero(m.num_nodes()), m.n1(), m.nw(), m.n2());
  }

  static EpsStateT from_nodes(Vector<Scalar> nodes, const EpsMeshT<Scalar>& m) {
    if (nodes.size() != m.num_nodes()) throw DimensionMismatch("eps state: node count");
    if (nodes(0) != Scalar(0) || nodes(nodes.size() - 1) != Scalar(0))
      throw IncompatibleData("eps state: Dirichlet ends must be zero");
    return EpsStateT(std::move(nodes), m.n1(), m.nw(), m.n2());
  }

  template <typename Derived>
  static EpsStateT from_free(const Eigen::MatrixBase<Derived>& free, const EpsMeshT<Scalar>& m) {
    if (free.size() != m.num_free()) throw DimensionMismatch("eps state: free count");
    Vector<Scalar> nodes = Vector<Scalar>::Zero(m.num_nodes());
    nodes.segment(1, m.num_free()) = free;
    return EpsStateT(std::move(nodes), m.n1(), m.nw(), m.n2());
  }

  static EpsStateT from_fields(const Vector<Scalar>& u, const Vector<Scalar>& z,
                               const Vector<Scalar>& v, const EpsMeshT<Scalar>& m) {
    if (u.size() != m.n1() + 1 || z.size() != m.nw() + 1 || v.size() != m.n2() + 1)
      throw DimensionMismatch("eps state: field sizes");
    if (u(m.n1()) != z(0) || z(m.nw()) != v(0))
      throw IncompatibleData("eps state: continuity at ±eps violated");
    Vector<Scalar> nodes(m.num_nodes());
    nodes.head(m.n1() + 1) = u;
    nodes.segment(m.n1(), m.nw() + 1) = z;
    nodes.tail(m.n2() + 1) = v;
    return from_nodes(std::move(nodes), m);
  }

  auto u() const { return nodes_.head(n1_ + 1); }
  auto z() const { return nodes_.segment(n1_, nw_ + 1); }
  auto v() const { return nodes_.tail(n2_ + 1); }
  auto free() const { return nodes_.segment(1, nodes_.size() - 2); }
  const Vector<Scalar>& nodes() const { return nodes_; }
  Index n1() const { return n1_; }
  Index nw() const { return nw_; }
  Index n2() const { return n2_; }

  /// Same layout with the interior values replaced; the Dirichlet zeros stay.
  template <typename Derived>
  EpsStateT with_free(const Eigen::MatrixBase<Derived>& free) const {
    if (free.size() != nodes_.size() - 2) throw DimensionMismatch("state: free count");
    EpsStateT out = *this;
    out.nodes_.segment(1, free.size()) = free;
    return out;
  }

  bool conforms(const EpsMeshT<Scalar>& m) const {
    return n1_ == m.n1() && nw_ == m.nw() && n2_ == m.n2();
  }
  void require_conforms(const EpsMeshT<Scalar>& m) const {
    if (!conforms(m)) throw DimensionMismatch("eps state does not match mesh");
  }

 private:
  EpsStateT(Vector<Scalar> nodes, Index n1, Index nw, Index n2)
      : nodes_(std::move(nodes)), n1_(n1), nw_(nw), n2_(n2) {}
  Vector<Scalar> nodes_;
  Index n1_, nw_, n2_;
};

// ---------------------------------------------------------------------------
// Norms

/// ‖y‖²_H = c₁ρ₁‖u‖² + c₂ρ₂‖v‖² + c z², trapezoidal in space.
template <typename Scalar>
Scalar h_norm_sq_limit(const LimitStateT<Scalar>& y, const PhysicalParamsT<Scalar>& p,
                       const LimitMeshT<Scalar>& m) {
  y.require_conforms(m);
  return p.cap1() * trapezoid(y.u().cwiseAbs2(), m.h1()) +
         p.cap2() * trapezoid(y.v().cwiseAbs2(), m.h2()) + p.c() * y.z() * y.z();
}

/// ∫ z_ε² over the wall (trapezoidal), unweighted.
template <typename Scalar>
Scalar wall_l2_sq(const EpsStateT<Scalar>& y, const EpsMeshT<Scalar>& m) {
  y.require_conforms(m);
  return trapezoid(y.z().cwiseAbs2(), m.hw());
}

/// ‖y_ε‖²_{H_ε}; the wall is weighted by c/(2ε).
template <typename Scalar>
Scalar h_norm_sq_eps(const EpsStateT<Scalar>& y, const PhysicalParamsT<Scalar>& p,
                     const EpsMeshT<Scalar>& m) {
  y.require_conforms(m);
  const Scalar wall_weight = p.c() / (Scalar(2) * m.eps());
  return p.cap1() * trapezoid(y.u().cwiseAbs2(), m.h1()) +
         p.cap2() * trapezoid(y.v().cwiseAbs2(), m.h2()) + wall_weight * wall_l2_sq(y, m);
}

/// k₁‖u′‖² + k₂‖v′‖² with cell-wise difference quotients (exact for P1).
template <typename Scalar>
Scalar w_seminorm_sq_limit(const LimitStateT<Scalar>& y, const PhysicalParamsT<Scalar>& p,
                           const LimitMeshT<Scalar>& m) {
  y.require_conforms(m);
  return p.k1() * sum_sq_differences(y.u()) / m.h1() +
         p.k2() * sum_sq_differences(y.v()) / m.h2();
}

template <typename Scalar>
Scalar w_seminorm_sq_eps(const EpsStateT<Scalar>& y, const PhysicalParamsT<Scalar>& p,
                         const EpsMeshT<Scalar>& m) {
  y.require_conforms(m);
  return p.k1() * sum_sq_differences(y.u()) / m.h1() +
         p.k() * sum_sq_differences(y.z()) / m.hw() +
         p.k2() * sum_sq_differences(y.v()) / m.h2();
}

/// Wall average (1/2ε)∫ z_ε dx.
template <typename Scalar>
Scalar g_eps(const EpsStateT<Scalar>& y, const EpsMeshT<Scalar>& m) {
  y.require_conforms(m);
  return trapezoid(y.z(), m.hw()) / (Scalar(2) * m.eps());
}

// ---------------------------------------------------------------------------
// double-precision aliases used throughout the harness

using RawParams = RawParamsT<double>;
using PhysicalParams = PhysicalParamsT<double>;
using LimitMesh = LimitMeshT<double>;
using EpsMesh = EpsMeshT<double>;
using LimitState = LimitStateT<double>;
using EpsState = EpsStateT<double>;
using VectorXd = Vector<double>;

}  // namespace thinwall
