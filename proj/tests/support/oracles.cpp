#include "oracles.hpp"

#include <mpfr.h>

namespace oracle {

namespace {

Rational falling(long m, int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= m - i;
  return r;
}

Rational mpfr_to_rational(const mpfr_t x) {
  if (mpfr_zero_p(x)) return 0;
  Integer m;
  const long e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  Rational r(m);
  if (e >= 0) {
    r *= Rational(Integer(1) << static_cast<unsigned long>(e));
  } else {
    r /= Rational(Integer(1) << static_cast<unsigned long>(-e));
  }
  return r;
}

}  // namespace

ComplexRational apply_operator_coeff(const DiffOperator& op, const std::vector<ComplexRational>& y, long m) {
  ComplexRational acc;
  for (int i = 0; i <= op.order(); ++i) {
    const auto& p = op.coeff(i);
    for (long j = 0; j < static_cast<long>(p.size()); ++j) {
      const long idx = m - j + i;
      if (idx < 0 || idx < i) continue;
      acc += p[static_cast<std::size_t>(j)] * ComplexRational(falling(idx, i)) * y.at(static_cast<std::size_t>(idx));
    }
  }
  return acc;
}

std::vector<ComplexRational> series_solution(const DiffOperator& op, const std::vector<ComplexRational>& init, long N) {
  const int r = op.order();
  std::vector<ComplexRational> y(static_cast<std::size_t>(std::max<long>(N, r)));
  for (int n = 0; n < r; ++n) y[static_cast<std::size_t>(n)] = init.at(static_cast<std::size_t>(n));
  const ComplexRational lead = op.leading().at(0);
  for (long n = r; n < N; ++n) {
    // y_n is still zero here, so the residual holds every other term.
    const ComplexRational rest = apply_operator_coeff(op, y, n - r);
    y[static_cast<std::size_t>(n)] = -rest / (lead * ComplexRational(falling(n, r)));
  }
  y.resize(static_cast<std::size_t>(N));
  return y;
}

ComplexRational horner(const std::vector<ComplexRational>& y, const ComplexRational& z) {
  ComplexRational acc;
  for (std::size_t n = y.size(); n-- > 0;) acc = acc * z + y[n];
  return acc;
}

Rational mpfr_nearest(const Rational& x, int t) {
  mpfr_t f;
  mpfr_init2(f, t);
  mpfr_set_q(f, x.get_mpq_t(), MPFR_RNDN);
  Rational r = mpfr_to_rational(f);
  mpfr_clear(f);
  return r;
}

Rational mpfr_exp_lower(const Rational& x) {
  mpfr_t f;
  mpfr_init2(f, 256);
  mpfr_set_q(f, x.get_mpq_t(), MPFR_RNDD);
  mpfr_exp(f, f, MPFR_RNDD);
  Rational r = mpfr_to_rational(f);
  mpfr_clear(f);
  return r;
}

std::pair<Rational, Rational> mpfr_sqrt_bracket(const Rational& x, int bits) {
  mpfr_t lo, hi;
  mpfr_init2(lo, bits);
  mpfr_init2(hi, bits);
  mpfr_set_q(lo, x.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi, x.get_mpq_t(), MPFR_RNDU);
  mpfr_sqrt(lo, lo, MPFR_RNDD);
  mpfr_sqrt(hi, hi, MPFR_RNDU);
  std::pair<Rational, Rational> out{mpfr_to_rational(lo), mpfr_to_rational(hi)};
  mpfr_clear(lo);
  mpfr_clear(hi);
  return out;
}

Rational Gen::rational(int bits) {
  const long lim = (1L << bits) - 1;
  Rational r(Integer(integer(-lim, lim)), Integer(integer(1, lim)));
  r.canonicalize();
  return r;
}

Rational Gen::nonneg(int bits) {
  if (integer(0, 4) == 0) return 0;
  return abs(rational(bits));
}

Rational Gen::scaled(int bits, int emax) {
  Rational r = rational(bits);
  const long e = integer(-emax, emax);
  const Rational p(Integer(1) << static_cast<unsigned long>(std::abs(e)));
  return e >= 0 ? Rational(r * p) : Rational(r / p);
}

ComplexRational Gen::complex(int bits) { return {rational(bits), coin() ? rational(bits) : Rational(0)}; }

BinFloat Gen::binfloat(int t, int emax) {
  Integer m = 0;
  for (int b = 0; b < t - 1; ++b) m = 2 * m + (coin() ? 1 : 0);
  m += Integer(1) << static_cast<unsigned long>(t - 1);
  if (coin()) m = -m;
  return BinFloat::from_parts(m, integer(-emax, emax), t);
}

recurbound::RationalSeries Gen::series(std::size_t order, int bits) {
  recurbound::RationalSeries s(order);
  for (std::size_t n = 0; n < order; ++n) s[n] = integer(0, 5) == 0 ? Rational(0) : rational(bits);
  return s;
}

recurbound::NonnegSeries Gen::nonneg_series(std::size_t order, int bits) {
  recurbound::RationalSeries s(order);
  for (std::size_t n = 0; n < order; ++n) s[n] = nonneg(bits);
  return recurbound::NonnegSeries(s);
}

recurbound::RationalSeries Gen::under(const recurbound::NonnegSeries& fhat) {
  recurbound::RationalSeries s(fhat.order());
  for (std::size_t n = 0; n < fhat.order(); ++n) {
    const long k = integer(0, 8);
    Rational v = fhat[n] * Rational(k, 8);
    s[n] = coin() ? Rational(-v) : v;
  }
  return s;
}

DiffOperator Gen::diff_operator() {
  const int r = static_cast<int>(integer(1, 3));
  std::vector<recurbound::Poly> polys;
  for (int i = 0; i <= r; ++i) {
    const int deg = static_cast<int>(integer(0, 3));
    recurbound::Poly p;
    for (int j = 0; j <= deg; ++j) p.emplace_back(integer(-5, 5));
    if (i == r) {
      while (p[0].is_zero()) p[0] = ComplexRational(integer(-5, 5));
    }
    polys.push_back(std::move(p));
  }
  return DiffOperator(std::move(polys));
}

}  // namespace oracle
