#pragma once

#include <complex>
#include <type_traits>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace splitbc {

using Real = double;
using Complex = std::complex<double>;

template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <class S>
using SparseMatrix = Eigen::SparseMatrix<S, Eigen::RowMajor>;

template <class S>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};
template <class S>
inline constexpr bool is_complex_v = is_complex<S>::value;

/// Numerical solution at the unknown nodes together with its time level.
template <class S>
struct State {
  Vector<S> values;
  double time = 0.0;
};

}  // namespace splitbc
