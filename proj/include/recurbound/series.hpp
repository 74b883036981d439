#ifndef RECURBOUND_SERIES_HPP
#define RECURBOUND_SERIES_HPP

// Truncated power series and the majorant-series calculus.
//
// A TruncSeries<D> of order N stores the coefficients of z^0 .. z^(N-1);
// coefficients at negative indices are zero by convention. Every statement
// about full series (f << fhat, closure lemmas, majorant solvers) is checked
// coefficientwise up to the explicit truncation order.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

#include "recurbound/exactnum.hpp"

namespace recurbound {

template <class D>
class TruncSeries {
 public:
  using value_type = D;

  TruncSeries() = default;
  explicit TruncSeries(std::size_t order) : coeffs_(order) { check_order(); }
  explicit TruncSeries(std::vector<D> coeffs) : coeffs_(std::move(coeffs)) { check_order(); }
  TruncSeries(std::initializer_list<D> coeffs) : coeffs_(coeffs) { check_order(); }

  std::size_t order() const { return coeffs_.size(); }
  const D& operator[](std::size_t n) const { return coeffs_[n]; }
  D& operator[](std::size_t n) { return coeffs_[n]; }
  /// Coefficient with the zero convention for negative indices.
  D at(long n) const {
    if (n < 0) return D(0);
    if (static_cast<std::size_t>(n) >= coeffs_.size()) {
      throw std::out_of_range("coefficient beyond truncation order");
    }
    return coeffs_[static_cast<std::size_t>(n)];
  }
  std::span<const D> coefficients() const { return coeffs_; }

  /// The first `n` coefficients (n <= order()).
  TruncSeries truncated(std::size_t n) const {
    if (n > order()) throw std::invalid_argument("cannot extend a truncated series");
    return TruncSeries(std::vector<D>(coeffs_.begin(), coeffs_.begin() + static_cast<long>(n)));
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void check_order() const {
    if (coeffs_.empty()) throw std::invalid_argument("series order must be positive");
  }

  std::vector<D> coeffs_;
};

using RationalSeries = TruncSeries<Rational>;
using ComplexSeries = TruncSeries<ComplexRational>;

/// A series asserted to have nonnegative rational coefficients.
class NonnegSeries {
 public:
  NonnegSeries() = default;
  explicit NonnegSeries(RationalSeries s);
  NonnegSeries(std::initializer_list<Rational> coeffs) : NonnegSeries(RationalSeries(coeffs)) {}

  const RationalSeries& series() const { return series_; }
  std::size_t order() const { return series_.order(); }
  const Rational& operator[](std::size_t n) const { return series_[n]; }

  friend bool operator==(const NonnegSeries& a, const NonnegSeries& b) { return a.series_ == b.series_; }

 private:
  RationalSeries series_;
};

// ---------------------------------------------------------------------------
// Magnitudes shared by the rational and complex instantiations.

inline Rational magnitude_upper(const Rational& x, int = kDefaultGuardBits) { return abs(x); }
inline Rational magnitude_upper(const ComplexRational& z, int guard_bits = kDefaultGuardBits) {
  return abs_upper(z, guard_bits);
}
inline bool magnitude_le(const Rational& x, const Rational& bound) { return abs(x) <= bound; }
inline bool magnitude_le(const ComplexRational& z, const Rational& bound) {
  return sgn(bound) >= 0 && z.norm2() <= bound * bound;
}

// ---------------------------------------------------------------------------
// Coefficientwise arithmetic. Binary operations truncate to the smaller order.

template <class D>
TruncSeries<D> ps_add(const TruncSeries<D>& f, const TruncSeries<D>& g) {
  const std::size_t n = std::min(f.order(), g.order());
  TruncSeries<D> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = f[i] + g[i];
  return r;
}

template <class D>
TruncSeries<D> ps_sub(const TruncSeries<D>& f, const TruncSeries<D>& g) {
  const std::size_t n = std::min(f.order(), g.order());
  TruncSeries<D> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = f[i] - g[i];
  return r;
}

template <class D, class S>
TruncSeries<D> ps_scale(const TruncSeries<D>& f, const S& gamma) {
  TruncSeries<D> r(f.order());
  for (std::size_t i = 0; i < f.order(); ++i) r[i] = D(f[i] * gamma);
  return r;
}

/// Cauchy product.
template <class D>
TruncSeries<D> ps_mul(const TruncSeries<D>& f, const TruncSeries<D>& g) {
  const std::size_t n = std::min(f.order(), g.order());
  TruncSeries<D> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (f[i] == D(0)) continue;
    for (std::size_t j = 0; i + j < n; ++j) r[i + j] += f[i] * g[j];
  }
  return r;
}

template <class D>
TruncSeries<D> ps_derive(const TruncSeries<D>& f) {
  if (f.order() < 2) throw std::invalid_argument("derivative of an order-1 series has no coefficients");
  TruncSeries<D> r(f.order() - 1);
  for (std::size_t n = 0; n + 1 < f.order(); ++n) r[n] = f[n + 1] * D(static_cast<long>(n + 1));
  return r;
}

/// Antiderivative with zero constant term; gains one order.
template <class D>
TruncSeries<D> ps_integrate(const TruncSeries<D>& f) {
  TruncSeries<D> r(f.order() + 1);
  for (std::size_t n = 0; n < f.order(); ++n) r[n + 1] = f[n] / D(static_cast<long>(n + 1));
  return r;
}

/// f_{N0:}: coefficients below N0 zeroed.
template <class D>
TruncSeries<D> ps_tail_from(const TruncSeries<D>& f, std::size_t start) {
  TruncSeries<D> r = f;
  for (std::size_t n = 0; n < std::min(start, f.order()); ++n) r[n] = D(0);
  return r;
}

/// z^k f(z); gains k orders.
template <class D>
TruncSeries<D> ps_shift(const TruncSeries<D>& f, std::size_t k) {
  TruncSeries<D> r(f.order() + k);
  for (std::size_t n = 0; n < f.order(); ++n) r[n + k] = f[n];
  return r;
}

/// f(c z).
template <class D, class S>
TruncSeries<D> ps_dilate(const TruncSeries<D>& f, const S& c) {
  TruncSeries<D> r(f.order());
  D power(1);
  for (std::size_t n = 0; n < f.order(); ++n) {
    r[n] = f[n] * power;
    power *= c;
  }
  return r;
}

/// 1/f, requires f_0 != 0.
template <class D>
TruncSeries<D> ps_reciprocal(const TruncSeries<D>& f) {
  if (f[0] == D(0)) throw std::domain_error("reciprocal of a series with zero constant term");
  TruncSeries<D> r(f.order());
  const D inv0 = D(1) / f[0];
  r[0] = inv0;
  for (std::size_t n = 1; n < f.order(); ++n) {
    D acc(0);
    for (std::size_t k = 1; k <= n; ++k) acc += f[k] * r[n - k];
    r[n] = D(-acc) * inv0;
  }
  return r;
}

template <class D>
TruncSeries<D> hadamard(const TruncSeries<D>& f, const TruncSeries<D>& g) {
  if (f.order() != g.order()) throw std::invalid_argument("hadamard product needs equal orders");
  TruncSeries<D> r(f.order());
  for (std::size_t n = 0; n < f.order(); ++n) r[n] = f[n] * g[n];
  return r;
}

/// sum_{n < order} f_n x^n.
template <class D, class S>
D partial_sum(const TruncSeries<D>& f, const S& x) {
  D acc(0);
  for (std::size_t n = f.order(); n-- > 0;) acc = D(acc * x) + f[n];
  return acc;
}

NonnegSeries minmaj(const RationalSeries& f);
/// Complex moduli are over-approximated with abs_upper, so the result is a
/// majorant but only minimal up to the guard-bit gap.
NonnegSeries minmaj(const ComplexSeries& f, int guard_bits = kDefaultGuardBits);

/// f << fhat coefficientwise; orders must match.
template <class D>
bool majorizes(const NonnegSeries& fhat, const TruncSeries<D>& f) {
  if (fhat.order() != f.order()) throw std::invalid_argument("majorizes needs equal orders");
  for (std::size_t n = 0; n < f.order(); ++n) {
    if (!magnitude_le(f[n], fhat[n])) return false;
  }
  return true;
}

// Closed operations on nonnegative series.
NonnegSeries operator+(const NonnegSeries& f, const NonnegSeries& g);
NonnegSeries operator*(const NonnegSeries& f, const NonnegSeries& g);
NonnegSeries nonneg_scale(const NonnegSeries& f, const Rational& gamma);
NonnegSeries nonneg_integrate(const NonnegSeries& f);
NonnegSeries nonneg_derive(const NonnegSeries& f);

/// Coefficients (1 + u)^(p n + q) - 1, with the zero convention when p n + q < 0.
NonnegSeries theta_hat_series(const Rational& u, int p, int q, std::size_t order);
NonnegSeries theta_hat_series(const FloatContext& ctx, int p, int q, std::size_t order);

/// theta_hat^(p,q) (.) fhat via (1+u)^q fhat((1+u)^p z) - fhat(z); needs q >= 0.
NonnegSeries hadamard_theta_closed(const NonnegSeries& fhat, const Rational& u, int p, int q);
NonnegSeries hadamard_theta_closed(const NonnegSeries& fhat, const FloatContext& ctx, int p, int q);

/// Truncated expansion of bhat / (1 - ahat); ahat_0 must vanish.
NonnegSeries solve_linear_majorant(const NonnegSeries& ahat, const NonnegSeries& bhat, std::size_t order);

/// Unique truncated solution of yhat' = ahat1 yhat' + ahat0 yhat + bhat with
/// yhat(0) = y0; ahat1_0 must vanish.
NonnegSeries solve_first_order_maj_ineq(const NonnegSeries& ahat1, const NonnegSeries& ahat0,
                                        const NonnegSeries& bhat, const Rational& y0,
                                        std::size_t order);

/// Checks int(fhat ghat) << fhat int(ghat) and int(fhat) << z fhat up to `order`.
bool ipp_bound_check(const NonnegSeries& fhat, const NonnegSeries& ghat, std::size_t order);

/// Raised by check_maj_transfer_ode when the inputs do not satisfy the
/// majorization hypotheses, as opposed to the conclusion failing.
class HypothesisViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

inline Rational falling_factorial(long m, long k) {
  Rational r = 1;
  for (long i = 0; i < k; ++i) r *= (m - i);
  return r;
}

// Coefficients of the solution of y^(r) = sum_k a_k y^(k) + b with given
// initial values, via
//   n^(r) y_n = sum_k sum_j a_{k,j} (n-r+k-j)^(k) y_{n-r+k-j} + b_{n-r}.
template <class D, class SeriesA, class SeriesB>
std::vector<D> solve_ode_coefficients(std::span<const SeriesA> a, const SeriesB& b,
                                      std::span<const D> init, std::size_t order) {
  const long r = static_cast<long>(a.size());
  std::vector<D> y(order, D(0));
  for (long n = 0; n < std::min<long>(r, static_cast<long>(order)); ++n) y[n] = init[n];
  for (long n = r; n < static_cast<long>(order); ++n) {
    D acc = D(b[static_cast<std::size_t>(n - r)]);
    for (long k = 0; k < r; ++k) {
      const auto& ak = a[static_cast<std::size_t>(k)];
      for (long j = 0; j <= n - r + k && j < static_cast<long>(ak.order()); ++j) {
        const long m = n - r + k - j;
        if (m < k) continue;  // falling factorial vanishes
        acc += D(ak[static_cast<std::size_t>(j)]) * D(falling_factorial(m, k)) * y[m];
      }
    }
    y[n] = acc / D(falling_factorial(n, r));
  }
  return y;
}

}  // namespace detail

/// Runs the coefficient recurrences of y^(r) = sum a_k y^(k) + b and of its
/// majorant equation side by side and reports whether y << yhat up to
/// `order`. Throws HypothesisViolation when a_k << ahat_k, b << bhat or the
/// initial inequalities do not hold.
template <class D>
bool check_maj_transfer_ode(std::span<const TruncSeries<D>> a, std::span<const NonnegSeries> ahat,
                            const TruncSeries<D>& b, const NonnegSeries& bhat, std::span<const D> y_init,
                            std::span<const Rational> yhat_init, std::size_t order) {
  const std::size_t r = a.size();
  if (r == 0 || ahat.size() != r) throw std::invalid_argument("equation order mismatch");
  if (y_init.size() != r || yhat_init.size() != r) throw std::invalid_argument("need r initial values");
  auto covers = [order](std::size_t o) { return o + 1 >= order; };
  for (std::size_t k = 0; k < r; ++k) {
    if (!covers(a[k].order()) || !covers(ahat[k].order())) {
      throw std::invalid_argument("coefficient series too short for requested order");
    }
    if (a[k].order() != ahat[k].order() || !majorizes(ahat[k], a[k])) {
      throw HypothesisViolation("a_k is not majorized by ahat_k");
    }
  }
  if (!covers(b.order()) || b.order() != bhat.order() || !majorizes(bhat, b)) {
    throw HypothesisViolation("b is not majorized by bhat");
  }
  for (std::size_t k = 0; k < r; ++k) {
    if (sgn(yhat_init[k]) < 0 || !magnitude_le(y_init[k], yhat_init[k])) {
      throw HypothesisViolation("initial values are not majorized");
    }
  }

  std::vector<RationalSeries> ahat_series;
  for (const auto& s : ahat) ahat_series.push_back(s.series());
  const auto y = detail::solve_ode_coefficients<D>(a, b, y_init, order);
  const auto yhat = detail::solve_ode_coefficients<Rational>(std::span<const RationalSeries>(ahat_series),
                                                              bhat.series(), yhat_init, order);
  for (std::size_t n = 0; n < order; ++n) {
    if (!magnitude_le(y[n], yhat[n])) return false;
  }
  return true;
}

}  // namespace recurbound

#endif  // RECURBOUND_SERIES_HPP
