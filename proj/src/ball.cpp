#include "recurbound/ball.hpp"

#include <stdexcept>

namespace recurbound {

ComplexFloat round_nearest(const ComplexRational& z, const FloatContext& ctx) {
  return {round_nearest(z.re, ctx), round_nearest(z.im, ctx)};
}

Ball::Ball(ComplexFloat mid, Rational rad) : mid_(std::move(mid)), rad_(std::move(rad)) {
  if (sgn(rad_) < 0) throw std::invalid_argument("ball radius must be nonnegative");
}

Ball Ball::enclose(const ComplexRational& z, const FloatContext& ctx, int guard_bits) {
  ComplexFloat m = round_nearest(z, ctx);
  Rational slack = recurbound::abs_upper(z - m.to_complex_rational(), guard_bits);
  return Ball(std::move(m), std::move(slack));
}

Ball Ball::zero(const FloatContext& ctx) {
  return Ball({BinFloat::zero(ctx.precision()), BinFloat::zero(ctx.precision())}, Rational(0));
}

bool Ball::contains(const ComplexRational& z) const {
  return (z - mid_value()).norm2() <= rad_ * rad_;
}

Rational Ball::abs_upper(int guard_bits) const {
  return recurbound::abs_upper(mid_value(), guard_bits) + rad_;
}

Rational Ball::abs_lower(int guard_bits) const {
  Rational r = recurbound::abs_lower(mid_value(), guard_bits) - rad_;
  return sgn(r) > 0 ? r : Rational(0);
}

Ball Ball::with_added_radius(const Rational& extra) const {
  if (sgn(extra) < 0) throw std::invalid_argument("radius increment must be nonnegative");
  return Ball(mid_, rad_ + extra);
}

namespace {

// Rounds the exact midpoint result and returns the ball with propagated
// radius plus the rounding displacement.
Ball finish(const ComplexRational& exact_mid, Rational propagated, const FloatContext& ctx) {
  ComplexFloat m = round_nearest(exact_mid, ctx);
  propagated += abs_upper(exact_mid - m.to_complex_rational());
  return Ball(std::move(m), std::move(propagated));
}

}  // namespace

Ball ball_add(const Ball& x, const Ball& y, const FloatContext& ctx) {
  return finish(x.mid_value() + y.mid_value(), Rational(x.rad() + y.rad()), ctx);
}

Ball ball_sub(const Ball& x, const Ball& y, const FloatContext& ctx) {
  return finish(x.mid_value() - y.mid_value(), Rational(x.rad() + y.rad()), ctx);
}

Ball ball_mul(const Ball& x, const Ball& y, const FloatContext& ctx) {
  const ComplexRational mx = x.mid_value();
  const ComplexRational my = y.mid_value();
  Rational rad = 0;
  if (sgn(y.rad()) != 0) rad += abs_upper(mx) * y.rad();
  if (sgn(x.rad()) != 0) rad += abs_upper(my) * x.rad() + x.rad() * y.rad();
  return finish(mx * my, std::move(rad), ctx);
}

Ball ball_div(const Ball& x, const Ball& y, const FloatContext& ctx) {
  const ComplexRational mx = x.mid_value();
  const ComplexRational my = y.mid_value();
  const Rational my_lo = abs_lower(my);
  const Rational gap = my_lo - y.rad();
  if (sgn(gap) <= 0) throw std::domain_error("ball division by a ball that may contain zero");
  // For x in X, y in Y:
  //   |x/y - mx/my| <= rad_x / (|my| - rad_y) + |mx| rad_y / (|my| (|my| - rad_y)).
  Rational rad = 0;
  if (sgn(x.rad()) != 0) rad += x.rad() / gap;
  if (sgn(y.rad()) != 0) rad += abs_upper(mx) * y.rad() / (my_lo * gap);
  return finish(mx / my, std::move(rad), ctx);
}

Ball ball_scale(const Ball& x, const ComplexRational& gamma, const FloatContext& ctx) {
  Rational rad = 0;
  if (sgn(x.rad()) != 0) rad = abs_upper(gamma) * x.rad();
  return finish(x.mid_value() * gamma, std::move(rad), ctx);
}

Ball ball_neg(const Ball& x) { return Ball({-x.mid().re, -x.mid().im}, x.rad()); }

std::pair<ComplexFloat, Rational> squash(const Ball& b) { return {b.mid(), b.rad()}; }

Ball force_zero_midpoint(const Ball& b) {
  if (b.mid().is_zero() || !b.contains(ComplexRational(0))) return b;
  const int t = b.mid().re.precision();
  return Ball({BinFloat::zero(t), BinFloat::zero(t)}, Rational(b.rad() + abs_upper(b.mid_value())));
}

}  // namespace recurbound
