#ifndef RECURBOUND_EXACTNUM_HPP
#define RECURBOUND_EXACTNUM_HPP

// Exact scalars and a software binary floating-point type.
//
// Rational is GMP's mpq_class: always canonical (lowest terms, positive
// denominator) as long as values are built through its arithmetic operators.
// BinFloat is a t-bit binary float with an unbounded exponent; every
// operation rounds the exact rational result to nearest, ties to even, so the
// unit roundoff is exactly 2^-t.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace recurbound {

using Integer = mpz_class;
using Rational = mpq_class;

/// Guard bits used for square-root brackets when the caller does not care.
inline constexpr int kDefaultGuardBits = 64;

struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() = default;
  ComplexRational(Rational r) : re(std::move(r)) {}  // NOLINT: implicit on purpose
  ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  ComplexRational(long r) : re(r) {}  // NOLINT

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  /// |z|^2, exact.
  Rational norm2() const { return Rational(re * re + im * im); }
  ComplexRational conj() const { return {re, Rational(-im)}; }

  ComplexRational& operator+=(const ComplexRational& o);
  ComplexRational& operator-=(const ComplexRational& o);
  ComplexRational& operator*=(const ComplexRational& o);
  ComplexRational& operator/=(const ComplexRational& o);

  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

ComplexRational operator+(ComplexRational a, const ComplexRational& b);
ComplexRational operator-(ComplexRational a, const ComplexRational& b);
ComplexRational operator*(ComplexRational a, const ComplexRational& b);
ComplexRational operator/(ComplexRational a, const ComplexRational& b);
ComplexRational operator-(const ComplexRational& a);

class FloatContext {
 public:
  explicit FloatContext(int precision);

  int precision() const { return precision_; }
  /// u = 2^-t.
  const Rational& unit_roundoff() const { return unit_roundoff_; }

 private:
  int precision_;
  Rational unit_roundoff_;
};

/// value = mantissa * 2^exponent with 2^(t-1) <= |mantissa| < 2^t, or zero.
class BinFloat {
 public:
  BinFloat() = default;
  static BinFloat zero(int precision);
  /// Builds from raw parts; throws if the mantissa is not normalized for t.
  static BinFloat from_parts(Integer mantissa, long exponent, int precision);

  int precision() const { return precision_; }
  const Integer& mantissa() const { return mantissa_; }
  long exponent() const { return exponent_; }
  bool is_zero() const { return sgn(mantissa_) == 0; }
  int sign() const { return sgn(mantissa_); }

  Rational to_rational() const;
  /// Exact multiplication by 2^k.
  BinFloat ldexp(long k) const;
  BinFloat operator-() const;

  friend bool operator==(const BinFloat& a, const BinFloat& b) {
    return a.mantissa_ == b.mantissa_ && (a.is_zero() || a.exponent_ == b.exponent_);
  }

 private:
  Integer mantissa_ = 0;
  long exponent_ = 0;
  int precision_ = 0;
};

/// Round to nearest, ties to even mantissa.
BinFloat round_nearest(const Rational& x, const FloatContext& ctx);
/// Exact import of a binary64 value followed by rounding to ctx.
BinFloat from_double(double x, const FloatContext& ctx);

enum class FpOp { add, sub, mul, div };

/// Correctly rounded x op y.
BinFloat fp_op(const FloatContext& ctx, FpOp op, const BinFloat& x, const BinFloat& y);

/// Rational lower/upper bounds on sqrt(x) for x >= 0 with
/// (upper - lower) <= 2^-guard_bits * lower. Exact when x is a rational square.
std::pair<Rational, Rational> sqrt_bounds(const Rational& x, int guard_bits);
Rational sqrt_upper(const Rational& x, int guard_bits = kDefaultGuardBits);
Rational sqrt_lower(const Rational& x, int guard_bits = kDefaultGuardBits);

Rational abs_upper(const ComplexRational& z, int guard_bits = kDefaultGuardBits);
Rational abs_lower(const ComplexRational& z, int guard_bits = kDefaultGuardBits);

/// Smallest dyadic >= x (resp. largest <= x) with at most `bits` significant
/// bits. Used to keep long products of upper bounds from growing unboundedly.
Rational round_up_dyadic(const Rational& x, int bits);
Rational round_down_dyadic(const Rational& x, int bits);

Rational pow(const Rational& x, unsigned long n);

/// Rational bracket lo <= pi <= hi with hi - lo <= 2^-bits (Machin's formula).
std::pair<Rational, Rational> pi_bracket(int bits);

/// Upper bound on exp(x) for rational x >= 0: Taylor sum plus a geometric tail
/// majorant after halving the argument into [0, 1], then repeated squaring.
Rational exp_upper(const Rational& x, int terms = 32);

/// "p/q" (or "p" for integers).
std::string to_string(const Rational& x);
/// Accepts "p/q", integers, and decimals with an optional exponent
/// ("0.5", "-1.25e-3"), all converted exactly.
Rational parse_rational(std::string_view text);
/// Scientific decimal rendering with `digits` significant digits (rounded
/// toward zero); for display only.
std::string to_decimal(const Rational& x, int digits = 17);

std::ostream& operator<<(std::ostream& os, const ComplexRational& z);
std::ostream& operator<<(std::ostream& os, const BinFloat& x);

}  // namespace recurbound

#endif  // RECURBOUND_EXACTNUM_HPP
