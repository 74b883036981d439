#ifndef RECURBOUND_BALL_HPP
#define RECURBOUND_BALL_HPP

// Complex midpoint-radius balls. Midpoints are t-bit BinFloats; radii are
// exact rationals. Every operation computes the exact rational result of the
// midpoint operation, rounds it componentwise to nearest, and adds the exact
// rounding displacement (bounded above via abs_upper when complex) to the
// propagated radius.

#include <utility>

#include "recurbound/exactnum.hpp"

namespace recurbound {

struct ComplexFloat {
  BinFloat re;
  BinFloat im;

  ComplexRational to_complex_rational() const { return {re.to_rational(), im.to_rational()}; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  friend bool operator==(const ComplexFloat&, const ComplexFloat&) = default;
};

/// Componentwise round-to-nearest of an exact complex value.
ComplexFloat round_nearest(const ComplexRational& z, const FloatContext& ctx);

class Ball {
 public:
  Ball() = default;
  Ball(ComplexFloat mid, Rational rad);

  /// Encloses an exact complex value: mid = fl(z), rad = |z - mid| (upper bound).
  static Ball enclose(const ComplexRational& z, const FloatContext& ctx, int guard_bits = kDefaultGuardBits);
  static Ball exact(const ComplexFloat& mid) { return Ball(mid, Rational(0)); }
  static Ball zero(const FloatContext& ctx);

  const ComplexFloat& mid() const { return mid_; }
  const Rational& rad() const { return rad_; }
  ComplexRational mid_value() const { return mid_.to_complex_rational(); }

  /// |z - mid| <= rad, exactly.
  bool contains(const ComplexRational& z) const;
  /// Upper bound on sup |z| over the ball.
  Rational abs_upper(int guard_bits = kDefaultGuardBits) const;
  /// Lower bound on inf |z| over the ball (clamped at 0).
  Rational abs_lower(int guard_bits = kDefaultGuardBits) const;

  Ball with_added_radius(const Rational& extra) const;

 private:
  ComplexFloat mid_;
  Rational rad_ = 0;
};

Ball ball_add(const Ball& x, const Ball& y, const FloatContext& ctx);
Ball ball_sub(const Ball& x, const Ball& y, const FloatContext& ctx);
Ball ball_mul(const Ball& x, const Ball& y, const FloatContext& ctx);
/// Throws std::domain_error when the divisor ball may contain zero.
Ball ball_div(const Ball& x, const Ball& y, const FloatContext& ctx);
/// Multiplication by an exact complex rational.
Ball ball_scale(const Ball& x, const ComplexRational& gamma, const FloatContext& ctx);
Ball ball_neg(const Ball& x);

/// Splits a ball into its midpoint and the radius being discarded.
std::pair<ComplexFloat, Rational> squash(const Ball& b);

/// If the ball contains zero, recentres it at zero with radius grown by |mid|.
Ball force_zero_midpoint(const Ball& b);

}  // namespace recurbound

#endif  // RECURBOUND_BALL_HPP
