#include "recurbound/exactnum.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

namespace recurbound {

// ---------------------------------------------------------------------------
// ComplexRational

ComplexRational& ComplexRational::operator+=(const ComplexRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

ComplexRational& ComplexRational::operator-=(const ComplexRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

ComplexRational& ComplexRational::operator*=(const ComplexRational& o) {
  if (is_real() && o.is_real()) {
    re *= o.re;
    return *this;
  }
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

ComplexRational& ComplexRational::operator/=(const ComplexRational& o) {
  if (o.is_zero()) throw std::domain_error("complex division by zero");
  if (o.is_real()) {
    re /= o.re;
    im /= o.re;
    return *this;
  }
  Rational d = o.norm2();
  Rational r = (re * o.re + im * o.im) / d;
  Rational i = (im * o.re - re * o.im) / d;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }
ComplexRational operator-(const ComplexRational& a) { return {Rational(-a.re), Rational(-a.im)}; }

// ---------------------------------------------------------------------------
// FloatContext / BinFloat

namespace {

Rational pow2(long k) {
  Rational r = 1;
  if (k >= 0) {
    mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(k));
  } else {
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-k));
  }
  return r;
}

long bit_length(const Integer& z) {
  if (sgn(z) == 0) return 0;
  return static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2));
}

Integer shifted(const Integer& z, long k) {
  Integer r;
  if (k >= 0) {
    mpz_mul_2exp(r.get_mpz_t(), z.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  } else {
    mpz_fdiv_q_2exp(r.get_mpz_t(), z.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
  }
  return r;
}

}  // namespace

FloatContext::FloatContext(int precision) : precision_(precision) {
  if (precision < 2) throw std::invalid_argument("precision must be at least 2 bits");
  unit_roundoff_ = pow2(-precision);
}

BinFloat BinFloat::zero(int precision) {
  BinFloat z;
  z.precision_ = precision;
  return z;
}

BinFloat BinFloat::from_parts(Integer mantissa, long exponent, int precision) {
  BinFloat x;
  x.precision_ = precision;
  if (sgn(mantissa) != 0) {
    Integer m = abs(mantissa);
    if (bit_length(m) != precision) {
      throw std::invalid_argument("BinFloat mantissa is not normalized for its precision");
    }
    x.mantissa_ = std::move(mantissa);
    x.exponent_ = exponent;
  }
  return x;
}

Rational BinFloat::to_rational() const {
  if (is_zero()) return 0;
  Rational r(mantissa_);
  return r * pow2(exponent_);
}

BinFloat BinFloat::ldexp(long k) const {
  BinFloat r = *this;
  if (!is_zero()) r.exponent_ += k;
  return r;
}

BinFloat BinFloat::operator-() const {
  BinFloat r = *this;
  r.mantissa_ = -r.mantissa_;
  return r;
}

BinFloat round_nearest(const Rational& x, const FloatContext& ctx) {
  const long t = ctx.precision();
  if (sgn(x) == 0) return BinFloat::zero(ctx.precision());
  const Integer p = abs(x.get_num());
  const Integer& q = x.get_den();

  // p / q lies in (2^(bp-bq-1), 2^(bp-bq+1)), so this first guess is off by
  // at most one binade.
  long e = bit_length(p) - bit_length(q) - t;
  Integer m, rem, num, den;
  const Integer lo = shifted(Integer(1), t - 1);
  const Integer hi = shifted(Integer(1), t);
  for (;;) {
    num = e < 0 ? shifted(p, -e) : p;
    den = e > 0 ? shifted(q, e) : q;
    mpz_fdiv_qr(m.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (m >= hi) {
      ++e;
    } else if (m < lo) {
      --e;
    } else {
      break;
    }
  }
  const int cmp_half = cmp(Integer(2 * rem), den);
  if (cmp_half > 0 || (cmp_half == 0 && mpz_odd_p(m.get_mpz_t()))) {
    ++m;
    if (m == hi) {
      m = lo;
      ++e;
    }
  }
  if (sgn(x) < 0) m = -m;
  return BinFloat::from_parts(std::move(m), e, ctx.precision());
}

BinFloat from_double(double x, const FloatContext& ctx) {
  return round_nearest(Rational(x), ctx);
}

BinFloat fp_op(const FloatContext& ctx, FpOp op, const BinFloat& x, const BinFloat& y) {
  const Rational a = x.to_rational();
  const Rational b = y.to_rational();
  switch (op) {
    case FpOp::add:
      return round_nearest(Rational(a + b), ctx);
    case FpOp::sub:
      return round_nearest(Rational(a - b), ctx);
    case FpOp::mul:
      return round_nearest(Rational(a * b), ctx);
    case FpOp::div:
      if (sgn(b) == 0) throw std::domain_error("floating-point division by zero");
      return round_nearest(Rational(a / b), ctx);
  }
  throw std::logic_error("unknown FpOp");
}

// ---------------------------------------------------------------------------
// Square roots, moduli

namespace {

bool is_rational_square(const Rational& x, Rational& root) {
  if (mpz_perfect_square_p(x.get_num_mpz_t()) == 0 ||
      mpz_perfect_square_p(x.get_den_mpz_t()) == 0) {
    return false;
  }
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), x.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), x.get_den_mpz_t());
  root = Rational(n, d);
  root.canonicalize();
  return true;
}

long floor_div(long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

}  // namespace

std::pair<Rational, Rational> sqrt_bounds(const Rational& x, int guard_bits) {
  if (guard_bits < 1) throw std::invalid_argument("guard_bits must be >= 1");
  if (sgn(x) < 0) throw std::domain_error("sqrt of a negative rational");
  if (sgn(x) == 0) return {Rational(0), Rational(0)};
  Rational root;
  if (is_rational_square(x, root)) return {root, root};

  // Scale by 4^k so that floor(x 4^k) >= 4^(guard+1); then isqrt gives
  // s <= sqrt(x) 2^k < s + 1 with s >= 2^(guard+1).
  const long lx = bit_length(x.get_num()) - bit_length(x.get_den());
  const long k = guard_bits + 2 - floor_div(lx - 1, 2);
  Integer scaled;
  if (k >= 0) {
    Integer num = shifted(x.get_num(), 2 * k);
    mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), x.get_den_mpz_t());
  } else {
    Integer den = shifted(x.get_den(), -2 * k);
    mpz_fdiv_q(scaled.get_mpz_t(), x.get_num_mpz_t(), den.get_mpz_t());
  }
  Integer s;
  mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
  const Rational scale = pow2(-k);
  Rational lower = Rational(s) * scale;
  Rational upper = Rational(s + 1) * scale;
  return {lower, upper};
}

Rational sqrt_upper(const Rational& x, int guard_bits) { return sqrt_bounds(x, guard_bits).second; }
Rational sqrt_lower(const Rational& x, int guard_bits) { return sqrt_bounds(x, guard_bits).first; }

Rational abs_upper(const ComplexRational& z, int guard_bits) {
  if (guard_bits < 1) throw std::invalid_argument("guard_bits must be >= 1");
  if (z.is_real()) return abs(z.re);
  if (sgn(z.re) == 0) return abs(z.im);
  return sqrt_upper(z.norm2(), guard_bits);
}

Rational abs_lower(const ComplexRational& z, int guard_bits) {
  if (guard_bits < 1) throw std::invalid_argument("guard_bits must be >= 1");
  if (z.is_real()) return abs(z.re);
  if (sgn(z.re) == 0) return abs(z.im);
  return sqrt_lower(z.norm2(), guard_bits);
}

// ---------------------------------------------------------------------------
// Dyadic rounding, powers, pi, exp

namespace {

// floor or ceil of |x| at `bits` significant bits, as a dyadic.
Rational round_magnitude(const Rational& a, int bits, bool up) {
  const long e = bit_length(a.get_num()) - bit_length(a.get_den()) - bits;
  Integer num = e < 0 ? shifted(a.get_num(), -e) : a.get_num();
  Integer den = e > 0 ? shifted(a.get_den(), e) : a.get_den();
  Integer m;
  if (up) {
    mpz_cdiv_q(m.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  } else {
    mpz_fdiv_q(m.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  }
  return Rational(m) * pow2(e);
}

}  // namespace

Rational round_up_dyadic(const Rational& x, int bits) {
  if (bits < 2) throw std::invalid_argument("round_up_dyadic needs at least 2 bits");
  if (sgn(x) == 0) return 0;
  if (sgn(x) > 0) return round_magnitude(x, bits, true);
  return -round_magnitude(Rational(-x), bits, false);
}

Rational round_down_dyadic(const Rational& x, int bits) {
  if (bits < 2) throw std::invalid_argument("round_down_dyadic needs at least 2 bits");
  if (sgn(x) == 0) return 0;
  if (sgn(x) > 0) return round_magnitude(x, bits, false);
  return -round_magnitude(Rational(-x), bits, true);
}

Rational pow(const Rational& x, unsigned long n) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), n);
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), n);
  r.canonicalize();
  return r;
}

namespace {

// Bracket for atan(1/x) from consecutive partial sums of the alternating
// series; stops once the next term is below 2^-stop_bits.
std::pair<Rational, Rational> atan_inv_bracket(long x, int stop_bits) {
  const Rational threshold = pow2(-stop_bits);
  const Rational x2 = Rational(x * x);
  Rational power = Rational(1, x);  // 1 / x^(2k+1)
  Rational sum = 0;
  for (long k = 0;; ++k) {
    const Rational term = power / (2 * k + 1);
    if (term < threshold) {
      // The remaining tail has the sign of this term and is smaller in size.
      if (k % 2 == 0) return {sum, Rational(sum + term)};
      return {Rational(sum - term), sum};
    }
    if (k % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
    power /= x2;
  }
}

}  // namespace

std::pair<Rational, Rational> pi_bracket(int bits) {
  if (bits < 1) throw std::invalid_argument("pi_bracket needs bits >= 1");
  const auto [a_lo, a_hi] = atan_inv_bracket(5, bits + 6);
  const auto [b_lo, b_hi] = atan_inv_bracket(239, bits + 6);
  Rational lo = 16 * a_lo - 4 * b_hi;
  Rational hi = 16 * a_hi - 4 * b_lo;
  return {round_down_dyadic(lo, bits + 8), round_up_dyadic(hi, bits + 8)};
}

Rational exp_upper(const Rational& x, int terms) {
  if (sgn(x) < 0) throw std::domain_error("exp_upper expects a nonnegative argument");
  if (terms < 2) throw std::invalid_argument("exp_upper needs at least 2 terms");
  if (sgn(x) == 0) return 1;
  if (x > Rational(1L << 22)) throw std::overflow_error("exp_upper argument too large");
  constexpr int kBits = 256;

  long halvings = 0;
  Rational y = x;
  while (y > 1) {
    y /= 2;
    ++halvings;
  }
  y = round_up_dyadic(y, kBits);

  Rational sum = 0;
  Rational term = 1;
  for (int k = 0; k < terms; ++k) {
    sum += term;
    term = term * y / (k + 1);
  }
  // term == y^terms / terms!; the tail is at most term / (1 - y/(terms+1)).
  const Rational ratio = y / (terms + 1);
  sum += term / (1 - ratio);

  Rational result = round_up_dyadic(sum, kBits);
  for (long i = 0; i < halvings; ++i) result = round_up_dyadic(Rational(result * result), kBits);
  return result;
}

// ---------------------------------------------------------------------------
// Text conversions

std::string to_string(const Rational& x) { return x.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational num = parse_rational(std::string_view(s).substr(0, slash));
    Rational den = parse_rational(std::string_view(s).substr(slash + 1));
    if (sgn(den) == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return num / den;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = s[pos] == '-';
    ++pos;
  }
  Integer digits = 0;
  long frac_digits = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      if (seen_point) ++frac_digits;
      seen_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed rational literal '" + s + "'");
  long exp10 = 0;
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') {
      throw std::invalid_argument("malformed rational literal '" + s + "'");
    }
    ++pos;
    std::size_t used = 0;
    try {
      exp10 = std::stol(s.substr(pos), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed exponent in '" + s + "'");
    }
    if (pos + used != s.size()) throw std::invalid_argument("trailing characters in '" + s + "'");
  }
  exp10 -= frac_digits;
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  Rational r = exp10 >= 0 ? Rational(digits * ten_pow) : Rational(digits, ten_pow);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_decimal(const Rational& x, int digits) {
  if (digits < 1) digits = 1;
  if (sgn(x) == 0) return "0";
  const Rational a = abs(x);
  const long log2a = bit_length(a.get_num()) - bit_length(a.get_den());
  long e10 = static_cast<long>(static_cast<double>(log2a) * 0.30102999566398120) - 1;

  const Integer lo = [&] {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(digits - 1));
    return p;
  }();
  const Integer hi = lo * 10;
  Integer m;
  for (;;) {
    const long shift = digits - 1 - e10;
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    Rational scaled = shift >= 0 ? Rational(a * p) : Rational(a / p);
    mpz_fdiv_q(m.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    if (m >= hi) {
      ++e10;
    } else if (m < lo) {
      --e10;
    } else {
      break;
    }
  }
  std::string ds = m.get_str();
  std::ostringstream out;
  if (sgn(x) < 0) out << '-';
  out << ds[0];
  if (ds.size() > 1) out << '.' << ds.substr(1);
  out << 'e' << (e10 < 0 ? "-" : "+") << (e10 < 0 ? -e10 : e10);
  return out.str();
}

std::ostream& operator<<(std::ostream& os, const ComplexRational& z) {
  return os << '(' << z.re << ", " << z.im << ')';
}

std::ostream& operator<<(std::ostream& os, const BinFloat& x) {
  return os << x.mantissa() << "*2^" << x.exponent() << " [t=" << x.precision() << ']';
}

}  // namespace recurbound
