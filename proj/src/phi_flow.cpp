#include "splitbc/phi_flow.hpp"

#include <array>
#include <cmath>
#include <string>

#include "splitbc/errors.hpp"

namespace splitbc {

namespace {

template <class S>
double norm1(const Matrix<S>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

template <class S>
void require_finite(const Matrix<S>& m, const char* what) {
  if (!m.allFinite()) throw NumericError(std::string(what) + ": non-finite matrix entries");
}

// Higham (2005) coefficients for the [13/13] approximant.
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

// Scaled series core of the phi family: ||Z||_1 <= kPhiTheta, Taylor degree
// kPhiTerms for phi_kmax, then the recurrence downwards.
constexpr double kPhiTheta = 0.5;
constexpr int kPhiTerms = 16;

}  // namespace

template <class S>
Matrix<S> matrix_exponential(const Matrix<S>& m) {
  if (m.rows() != m.cols()) throw DimensionError("matrix_exponential: matrix not square");
  require_finite(m, "matrix_exponential");
  const Eigen::Index n = m.rows();
  if (n == 0) return m;

  const double nrm = norm1(m);
  if (nrm == 0.0) return Matrix<S>::Identity(n, n);
  int s = 0;
  if (nrm > kTheta13) s = static_cast<int>(std::ceil(std::log2(nrm / kTheta13)));
  const Matrix<S> a = m * S(std::ldexp(1.0, -s));

  const auto& b = kPade13;
  const Matrix<S> id = Matrix<S>::Identity(n, n);
  const Matrix<S> a2 = a * a;
  const Matrix<S> a4 = a2 * a2;
  const Matrix<S> a6 = a4 * a2;
  Matrix<S> inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
  Matrix<S> tmp = a6 * inner;
  tmp += b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
  const Matrix<S> u = a * tmp;
  inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
  Matrix<S> v = a6 * inner;
  v += b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;

  Matrix<S> r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < s; ++i) r = r * r;
  require_finite(r, "matrix_exponential");
  return r;
}

template <class S>
PhiFamily<S> phi_family(const Matrix<S>& a0, double t, int kmax) {
  if (!(t > 0.0)) throw ConfigError("phi_family: step length must be positive");
  if (kmax < 0) throw ConfigError("phi_family: kmax must be non-negative");
  if (a0.rows() != a0.cols()) throw DimensionError("phi_family: matrix not square");
  require_finite(a0, "phi_family");
  const Eigen::Index n = a0.rows();
  const Matrix<S> id = Matrix<S>::Identity(n, n);

  const double nrm = t * norm1(a0);
  int s = 0;
  if (nrm > kPhiTheta) s = static_cast<int>(std::ceil(std::log2(nrm / kPhiTheta)));
  const double c0 = std::ldexp(1.0, -s);
  const Matrix<S> z = a0 * S(t * c0);

  std::vector<double> inv_fact(kmax + kPhiTerms + 1);
  inv_fact[0] = 1.0;
  for (std::size_t j = 1; j < inv_fact.size(); ++j) inv_fact[j] = inv_fact[j - 1] / j;

  // phi_kmax(Z) = sum_j Z^j / (j + kmax)!, Horner form.
  std::vector<Matrix<S>> psi(kmax + 1);
  Matrix<S> p = id * S(inv_fact[kmax + kPhiTerms]);
  for (int j = kPhiTerms - 1; j >= 0; --j) {
    p = z * p;
    p.diagonal().array() += S(inv_fact[kmax + j]);
  }
  psi[kmax] = std::move(p);
  for (int k = kmax - 1; k >= 0; --k) {
    psi[k] = z * psi[k + 1];
    psi[k].diagonal().array() += S(inv_fact[k]);
  }

  // Block k of the first row of exp(c M) is c^k phi_k(c tA0). Squaring that
  // block upper-triangular matrix gives
  //   psi_k(2c) = psi_0(c) psi_k(c) + sum_{j=1..k} psi_j(c) c^{k-j} / (k-j)!.
  double c = c0;
  for (int k = 1; k <= kmax; ++k) psi[k] *= S(std::pow(c, k));
  for (int step = 0; step < s; ++step) {
    for (int k = kmax; k >= 0; --k) {
      Matrix<S> next = psi[0] * psi[k];
      for (int j = 1; j <= k; ++j) next += psi[j] * S(std::pow(c, k - j) * inv_fact[k - j]);
      psi[k] = std::move(next);
    }
    c *= 2.0;
  }

  PhiFamily<S> out;
  out.t = t;
  out.matrices = std::move(psi);
  for (const auto& m : out.matrices) require_finite(m, "phi_family");
  return out;
}

template <class S>
PhiFamily<S> phi_family_doubled(const PhiFamily<S>& half) {
  const double t = half.t;
  const int kmax = half.kmax();
  std::vector<Matrix<S>> psi(kmax + 1);
  for (int k = 0; k <= kmax; ++k) psi[k] = half[k] * S(std::pow(t, k));
  PhiFamily<S> out;
  out.t = 2.0 * t;
  out.matrices.resize(kmax + 1);
  double inv_fact = 1.0;
  std::vector<double> inv_facts(kmax + 1);
  for (int j = 0; j <= kmax; ++j) {
    inv_facts[j] = inv_fact;
    inv_fact /= (j + 1);
  }
  for (int k = kmax; k >= 0; --k) {
    Matrix<S> next = psi[0] * psi[k];
    for (int j = 1; j <= k; ++j) next += psi[j] * S(std::pow(t, k - j) * inv_facts[k - j]);
    out.matrices[k] = next * S(std::pow(out.t, -k));
  }
  for (const auto& m : out.matrices) require_finite(m, "phi_family");
  return out;
}

template <class S>
Vector<S> propagate_polynomial_source(const PhiFamily<S>& phi, const Vector<S>& w0,
                                      const PolynomialSource<S>& src) {
  const Eigen::Index n = phi[0].rows();
  auto check = [n](const Vector<S>& v, const char* what) {
    if (v.size() != 0 && v.size() != n) {
      throw DimensionError(std::string("propagate_polynomial_source: ") + what +
                           " has wrong length");
    }
  };
  check(w0, "initial value");
  if (w0.size() == 0) throw DimensionError("propagate_polynomial_source: empty initial value");
  check(src.g0, "g0");
  check(src.g1, "g1");
  check(src.g2, "g2");
  if (src.degree() > phi.kmax() - 1) {
    throw ConfigError("propagate_polynomial_source: phi family too short for source degree");
  }
  const double t = phi.t;
  Vector<S> w = phi[0] * w0;
  if (src.g0.size()) w.noalias() += phi[1] * (S(t) * src.g0);
  if (src.g1.size()) w.noalias() += phi[2] * (S(t * t) * src.g1);
  if (src.g2.size()) w.noalias() += phi[3] * (S(2.0 * t * t * t) * src.g2);
  return w;
}

template <class S>
Vector<S> propagate_polynomial_source(const Matrix<S>& a0, const Vector<S>& w0, double t,
                                      const PolynomialSource<S>& src) {
  const int kmax = std::max(1, src.degree() + 1);
  return propagate_polynomial_source(phi_family(a0, t, kmax), w0, src);
}

template <class S>
std::shared_ptr<const PhiFamily<S>> PhiCache<S>::get(double t) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = families_.find(t);
  if (it != families_.end()) return it->second;
  const auto half = families_.find(0.5 * t);
  auto fam = std::make_shared<const PhiFamily<S>>(
      half != families_.end() ? phi_family_doubled(*half->second) : phi_family(a0_, t, 3));
  families_.emplace(t, fam);
  return fam;
}

template <class S>
std::size_t PhiCache<S>::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return families_.size();
}

template Matrix<Real> matrix_exponential(const Matrix<Real>&);
template Matrix<Complex> matrix_exponential(const Matrix<Complex>&);
template PhiFamily<Real> phi_family(const Matrix<Real>&, double, int);
template PhiFamily<Complex> phi_family(const Matrix<Complex>&, double, int);
template PhiFamily<Real> phi_family_doubled(const PhiFamily<Real>&);
template PhiFamily<Complex> phi_family_doubled(const PhiFamily<Complex>&);
template Vector<Real> propagate_polynomial_source(const PhiFamily<Real>&, const Vector<Real>&,
                                                  const PolynomialSource<Real>&);
template Vector<Complex> propagate_polynomial_source(const PhiFamily<Complex>&,
                                                     const Vector<Complex>&,
                                                     const PolynomialSource<Complex>&);
template Vector<Real> propagate_polynomial_source(const Matrix<Real>&, const Vector<Real>&,
                                                  double, const PolynomialSource<Real>&);
template Vector<Complex> propagate_polynomial_source(const Matrix<Complex>&,
                                                     const Vector<Complex>&, double,
                                                     const PolynomialSource<Complex>&);
template class PhiCache<Real>;
template class PhiCache<Complex>;

}  // namespace splitbc
