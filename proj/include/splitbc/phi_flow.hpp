#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "splitbc/types.hpp"

namespace splitbc {

/// exp(M) by scaling and squaring around a degree-13 diagonal Pade core.
template <class S>
Matrix<S> matrix_exponential(const Matrix<S>& m);

/// phi_0(tA) ... phi_kmax(tA), with phi_0 = exp and
/// phi_{k+1}(z) = (phi_k(z) - 1/k!) / z.
template <class S>
struct PhiFamily {
  double t = 0.0;
  std::vector<Matrix<S>> matrices;

  int kmax() const { return static_cast<int>(matrices.size()) - 1; }
  const Matrix<S>& operator[](int k) const { return matrices.at(k); }
};

/// All phi_k(t A0), k <= kmax, from one exponential of the augmented matrix
///
///     [ tA0  I  0  0 ]
///     [  0   0  I  0 ]
///     [  0   0  0  I ]
///     [  0   0  0  0 ]
///
/// whose first block row is [exp(tA0), phi_1, phi_2, phi_3]. Only the first
/// block row is ever stored: the trailing blocks of every scaled power are
/// scalar multiples of I.
template <class S>
PhiFamily<S> phi_family(const Matrix<S>& a0, double t, int kmax = 3);

/// The family at 2t from the family at t, by one squaring of the augmented
/// exponential.
template <class S>
PhiFamily<S> phi_family_doubled(const PhiFamily<S>& half);

/// Source g0 + s g1 + s^2 g2 of the linear subflow. Empty vectors are zero.
template <class S>
struct PolynomialSource {
  Vector<S> g0;
  Vector<S> g1;
  Vector<S> g2;

  int degree() const { return g2.size() ? 2 : g1.size() ? 1 : g0.size() ? 0 : -1; }
};

/// Exact solution at time t of w' = A0 w + g0 + s g1 + s^2 g2, w(0) = w0:
///   e^{tA0} w0 + t phi_1 g0 + t^2 phi_2 g1 + 2 t^3 phi_3 g2.
template <class S>
Vector<S> propagate_polynomial_source(const PhiFamily<S>& phi, const Vector<S>& w0,
                                      const PolynomialSource<S>& src);

template <class S>
Vector<S> propagate_polynomial_source(const Matrix<S>& a0, const Vector<S>& w0, double t,
                                      const PolynomialSource<S>& src);

/// phi families of one operator, computed once per step length. A family
/// whose half step is already cached is obtained by doubling that one.
template <class S>
class PhiCache {
 public:
  explicit PhiCache(Matrix<S> a0) : a0_(std::move(a0)) {}

  std::shared_ptr<const PhiFamily<S>> get(double t);
  const Matrix<S>& matrix() const { return a0_; }
  std::size_t size() const;

 private:
  Matrix<S> a0_;
  mutable std::mutex mu_;
  std::map<double, std::shared_ptr<const PhiFamily<S>>> families_;
};

}  // namespace splitbc
