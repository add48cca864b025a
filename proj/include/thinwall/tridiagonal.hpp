#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "thinwall/core.hpp"
#include "thinwall/errors.hpp"

namespace thinwall {

/// Symmetric tridiagonal matrix stored as its diagonal and first
/// off-diagonal (off(i) couples rows i and i+1).
template <typename Scalar>
struct SymTridiagonal {
  Vector<Scalar> diag;
  Vector<Scalar> off;

  Index size() const { return diag.size(); }

  template <typename Derived>
  Vector<Scalar> operator*(const Eigen::MatrixBase<Derived>& x) const {
    const Index n = size();
    if (x.size() != n) throw DimensionMismatch("tridiagonal apply");
    Vector<Scalar> y = diag.cwiseProduct(x);
    if (n > 1) {
      y.head(n - 1) += off.cwiseProduct(x.tail(n - 1));
      y.tail(n - 1) += off.cwiseProduct(x.head(n - 1));
    }
    return y;
  }

  /// xᵀ A y
  template <typename D1, typename D2>
  Scalar bilinear(const Eigen::MatrixBase<D1>& x, const Eigen::MatrixBase<D2>& y) const {
    return x.dot((*this) * y);
  }

  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> dense() const {
    const Index n = size();
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
    a.diagonal() = diag;
    if (n > 1) {
      a.diagonal(1) = off;
      a.diagonal(-1) = off;
    }
    return a;
  }
};

/// D + s·A for a diagonal D (as a vector) and symmetric tridiagonal A.
template <typename Scalar>
SymTridiagonal<Scalar> shifted(const Vector<Scalar>& d, Scalar s, const SymTridiagonal<Scalar>& a) {
  return {d + s * a.diag, s * a.off};
}

/// Thomas factorization of a symmetric tridiagonal matrix, computed once and
/// reused across right-hand sides.
template <typename Scalar>
class TridiagonalLU {
 public:
  explicit TridiagonalLU(const SymTridiagonal<Scalar>& a) : off_(a.off) {
    const Index n = a.size();
    if (n == 0) throw InvalidArgument("empty tridiagonal system");
    if (a.off.size() != std::max<Index>(n - 1, 0)) throw DimensionMismatch("tridiagonal off-diagonal");
    inv_pivot_.resize(n);
    upper_.resize(std::max<Index>(n - 1, 0));

    Scalar pivot = a.diag(0);
    for (Index i = 0; i < n; ++i) {
      if (i > 0) pivot = a.diag(i) - a.off(i - 1) * upper_(i - 1);
      if (pivot == Scalar(0) || !std::isfinite(static_cast<double>(pivot)))
        throw SingularSystem("zero pivot in tridiagonal elimination");
      inv_pivot_(i) = Scalar(1) / pivot;
      if (i + 1 < n) upper_(i) = a.off(i) * inv_pivot_(i);
    }
  }

  Index size() const { return inv_pivot_.size(); }

  template <typename Derived>
  Vector<Scalar> solve(const Eigen::MatrixBase<Derived>& rhs) const {
    const Index n = size();
    if (rhs.size() != n) throw DimensionMismatch("tridiagonal solve");
    Vector<Scalar> x(n);
    // Forward sweep
    x(0) = rhs(0) * inv_pivot_(0);
    for (Index i = 1; i < n; ++i) x(i) = (rhs(i) - off_(i - 1) * x(i - 1)) * inv_pivot_(i);
    // Back substitution
    for (Index i = n - 1; i > 0; --i) x(i - 1) -= upper_(i - 1) * x(i);
    return x;
  }

 private:
  Vector<Scalar> off_;
  Vector<Scalar> inv_pivot_;
  Vector<Scalar> upper_;
};

}  // namespace thinwall
