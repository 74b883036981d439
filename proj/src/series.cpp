#include "recurbound/series.hpp"

namespace recurbound {

NonnegSeries::NonnegSeries(RationalSeries s) : series_(std::move(s)) {
  for (std::size_t n = 0; n < series_.order(); ++n) {
    if (sgn(series_[n]) < 0) {
      throw std::invalid_argument("NonnegSeries coefficient " + std::to_string(n) + " is negative");
    }
  }
}

NonnegSeries minmaj(const RationalSeries& f) {
  RationalSeries r(f.order());
  for (std::size_t n = 0; n < f.order(); ++n) r[n] = abs(f[n]);
  return NonnegSeries(std::move(r));
}

NonnegSeries minmaj(const ComplexSeries& f, int guard_bits) {
  RationalSeries r(f.order());
  for (std::size_t n = 0; n < f.order(); ++n) r[n] = abs_upper(f[n], guard_bits);
  return NonnegSeries(std::move(r));
}

NonnegSeries operator+(const NonnegSeries& f, const NonnegSeries& g) {
  return NonnegSeries(ps_add(f.series(), g.series()));
}

NonnegSeries operator*(const NonnegSeries& f, const NonnegSeries& g) {
  return NonnegSeries(ps_mul(f.series(), g.series()));
}

NonnegSeries nonneg_scale(const NonnegSeries& f, const Rational& gamma) {
  return NonnegSeries(ps_scale(f.series(), gamma));
}

NonnegSeries nonneg_integrate(const NonnegSeries& f) { return NonnegSeries(ps_integrate(f.series())); }

NonnegSeries nonneg_derive(const NonnegSeries& f) { return NonnegSeries(ps_derive(f.series())); }

NonnegSeries theta_hat_series(const Rational& u, int p, int q, std::size_t order) {
  if (p < 1) throw std::invalid_argument("theta_hat_series needs p >= 1");
  if (sgn(u) < 0) throw std::invalid_argument("unit roundoff must be nonnegative");
  const Rational base = 1 + u;
  RationalSeries r(order);
  for (std::size_t n = 0; n < order; ++n) {
    const long index = static_cast<long>(p) * static_cast<long>(n) + q;
    if (index <= 0) continue;  // theta_0 = 0, theta_n = 0 for n < 0
    r[n] = pow(base, static_cast<unsigned long>(index)) - 1;
  }
  return NonnegSeries(std::move(r));
}

NonnegSeries theta_hat_series(const FloatContext& ctx, int p, int q, std::size_t order) {
  return theta_hat_series(ctx.unit_roundoff(), p, q, order);
}

NonnegSeries hadamard_theta_closed(const NonnegSeries& fhat, const Rational& u, int p, int q) {
  if (p < 1 || q < 0) throw std::invalid_argument("closed form needs p >= 1 and q >= 0");
  const Rational base = 1 + u;
  const RationalSeries dilated = ps_dilate(fhat.series(), pow(base, static_cast<unsigned long>(p)));
  const RationalSeries scaled = ps_scale(dilated, pow(base, static_cast<unsigned long>(q)));
  return NonnegSeries(ps_sub(scaled, fhat.series()));
}

NonnegSeries hadamard_theta_closed(const NonnegSeries& fhat, const FloatContext& ctx, int p, int q) {
  return hadamard_theta_closed(fhat, ctx.unit_roundoff(), p, q);
}

NonnegSeries solve_linear_majorant(const NonnegSeries& ahat, const NonnegSeries& bhat, std::size_t order) {
  if (sgn(ahat[0]) != 0) throw std::invalid_argument("solve_linear_majorant needs ahat_0 = 0");
  if (ahat.order() < order || bhat.order() < order) {
    throw std::invalid_argument("input series shorter than requested order");
  }
  RationalSeries y(order);
  for (std::size_t n = 0; n < order; ++n) {
    Rational acc = bhat[n];
    for (std::size_t i = 1; i <= n; ++i) acc += ahat[i] * y[n - i];
    y[n] = acc;
  }
  return NonnegSeries(std::move(y));
}

NonnegSeries solve_first_order_maj_ineq(const NonnegSeries& ahat1, const NonnegSeries& ahat0,
                                        const NonnegSeries& bhat, const Rational& y0, std::size_t order) {
  if (sgn(ahat1[0]) != 0) throw std::invalid_argument("solve_first_order_maj_ineq needs ahat1(0) = 0");
  if (sgn(y0) < 0) throw std::invalid_argument("initial value must be nonnegative");
  if (ahat1.order() + 1 < order || ahat0.order() + 1 < order || bhat.order() + 1 < order) {
    throw std::invalid_argument("input series shorter than requested order");
  }
  RationalSeries y(order);
  y[0] = y0;
  // (n+1) y_{n+1} = sum_{j>=1} a1_j (n-j+1) y_{n-j+1} + sum_j a0_j y_{n-j} + b_n
  for (std::size_t n = 0; n + 1 < order; ++n) {
    Rational acc = bhat[n];
    for (std::size_t j = 1; j <= n; ++j) acc += ahat1[j] * static_cast<long>(n - j + 1) * y[n - j + 1];
    for (std::size_t j = 0; j <= n; ++j) acc += ahat0[j] * y[n - j];
    y[n + 1] = acc / static_cast<long>(n + 1);
  }
  return NonnegSeries(std::move(y));
}

bool ipp_bound_check(const NonnegSeries& fhat, const NonnegSeries& ghat, std::size_t order) {
  if (fhat.order() < order || ghat.order() < order) {
    throw std::invalid_argument("input series shorter than requested order");
  }
  const RationalSeries f = fhat.series().truncated(order);
  const RationalSeries g = ghat.series().truncated(order);

  const RationalSeries lhs = ps_integrate(ps_mul(f, g));
  const RationalSeries rhs = ps_mul(f, ps_integrate(g).truncated(order));
  for (std::size_t n = 0; n < order; ++n) {
    if (lhs[n] > rhs[n]) return false;
  }
  const RationalSeries int_f = ps_integrate(f);
  const RationalSeries z_f = ps_shift(f, 1);
  for (std::size_t n = 0; n < order; ++n) {
    if (int_f[n] > z_f[n]) return false;
  }
  return true;
}

}  // namespace recurbound
