#include "properties.hpp"

#include <array>

#include "recurbound/ball.hpp"
#include "recurbound/polynomial.hpp"

namespace props {

using recurbound::ComplexRational;
using recurbound::ComplexSeries;
using recurbound::Integer;
using recurbound::NonnegSeries;
using recurbound::Rational;
using recurbound::RationalSeries;

namespace {

constexpr int kBits = 4;

// Multiplies by a random unit complex number with rational parts, so moduli
// are preserved exactly.
ComplexSeries rotate(oracle::Gen& gen, const RationalSeries& f) {
  static const std::array<std::array<long, 3>, 6> dirs{
      {{1, 0, 1}, {0, 1, 1}, {3, 4, 5}, {-4, 3, 5}, {5, 12, 13}, {-8, -15, 17}}};
  ComplexSeries out(f.order());
  for (std::size_t n = 0; n < f.order(); ++n) {
    const auto [x, y, h] = dirs[static_cast<std::size_t>(gen.integer(0, 5))];
    out[n] = ComplexRational(Rational(f[n] * x / h), Rational(f[n] * y / h));
  }
  return out;
}

NonnegSeries zero_constant(NonnegSeries s) {
  RationalSeries r = s.series();
  r[0] = 0;
  return NonnegSeries(r);
}

std::string at_order(const char* what, std::size_t n) { return std::string(what) + " at coefficient " + std::to_string(n); }

}  // namespace

std::vector<Tally> closure_properties(oracle::Gen& gen, long count, std::size_t order) {
  std::vector<Tally> t{{"maj-series (a) sum"},       {"maj-series (b) scaling"},   {"maj-series (c) tail"},
                       {"maj-series (d) derivative"}, {"maj-series (e) integral"}, {"maj-series (f) product"}};
  for (long it = 0; it < count; ++it) {
    const NonnegSeries fh = gen.nonneg_series(order, kBits);
    const NonnegSeries gh = gen.nonneg_series(order, kBits);
    const RationalSeries f = gen.under(fh);
    const RationalSeries g = gen.under(gh);
    const ComplexSeries fc = rotate(gen, f);
    const ComplexSeries gc = rotate(gen, g);

    t[0].record(recurbound::majorizes(fh + gh, recurbound::ps_add(fc, gc)), "sum");

    const ComplexRational gamma = gen.complex(kBits);
    const NonnegSeries scaled = recurbound::nonneg_scale(fh, recurbound::abs_upper(gamma));
    t[1].record(recurbound::majorizes(scaled, recurbound::ps_scale(fc, gamma)), "complex scaling");

    const std::size_t start = static_cast<std::size_t>(gen.integer(0, static_cast<long>(order)));
    t[2].record(recurbound::majorizes(NonnegSeries(recurbound::ps_tail_from(fh.series(), start)),
                                      recurbound::ps_tail_from(fc, start)),
                "tail from " + std::to_string(start));

    t[3].record(recurbound::majorizes(recurbound::nonneg_derive(fh), recurbound::ps_derive(fc)), "derivative");
    t[4].record(recurbound::majorizes(recurbound::nonneg_integrate(fh), recurbound::ps_integrate(fc)), "integral");
    t[5].record(recurbound::majorizes(fh * gh, recurbound::ps_mul(fc, gc)), "product");
  }
  return t;
}

Tally linear_majorant_property(oracle::Gen& gen, long count, std::size_t order) {
  Tally t{"maj linear"};
  for (long it = 0; it < count; ++it) {
    const NonnegSeries ah = zero_constant(gen.nonneg_series(order, kBits));
    const NonnegSeries bh = gen.nonneg_series(order, kBits);
    const NonnegSeries yh = recurbound::solve_linear_majorant(ah, bh, order);
    // any y with y << ah y + bh, built from below
    RationalSeries y(order);
    bool recurrence_ok = true;
    for (std::size_t n = 0; n < order; ++n) {
      Rational rhs = bh[n], rhs_hat = bh[n];
      for (std::size_t i = 1; i <= n; ++i) {
        rhs += ah[i] * y[n - i];
        rhs_hat += ah[i] * yh[n - i];
      }
      y[n] = rhs * Rational(gen.integer(0, 8), 8);
      if (yh[n] != rhs_hat) recurrence_ok = false;
    }
    t.record(recurrence_ok && recurbound::majorizes(yh, y), recurrence_ok ? "y not majorized" : "recurrence");
  }
  return t;
}

Tally ode_transfer_property(oracle::Gen& gen, long count, std::size_t order) {
  Tally t{"maj deq"};
  for (long it = 0; it < count; ++it) {
    const int r = static_cast<int>(gen.integer(1, 3));
    std::vector<NonnegSeries> ah;
    std::vector<ComplexSeries> a;
    for (int k = 0; k < r; ++k) {
      ah.push_back(gen.nonneg_series(order, 3));
      a.push_back(rotate(gen, gen.under(ah.back())));
    }
    const NonnegSeries bh = gen.nonneg_series(order, 3);
    const ComplexSeries b = rotate(gen, gen.under(bh));
    std::vector<Rational> yh0;
    std::vector<ComplexRational> y0;
    for (int k = 0; k < r; ++k) {
      yh0.push_back(gen.nonneg(3));
      y0.push_back(ComplexRational(Rational(yh0.back() * Rational(gen.integer(-4, 4), 4))));
    }
    bool ok = false;
    try {
      ok = recurbound::check_maj_transfer_ode<ComplexRational>(a, ah, b, bh, y0, yh0, order);
    } catch (const recurbound::HypothesisViolation& e) {
      t.record(false, std::string("generator broke a hypothesis: ") + e.what());
      continue;
    }
    t.record(ok, "order " + std::to_string(r));
  }
  return t;
}

Tally diff_inequality_property(oracle::Gen& gen, long count, std::size_t order) {
  Tally t{"maj diff ineq"};
  for (long it = 0; it < count; ++it) {
    const NonnegSeries a1 = zero_constant(gen.nonneg_series(order, 3));
    const NonnegSeries a0 = gen.nonneg_series(order, 3);
    const NonnegSeries bh = gen.nonneg_series(order, 3);
    RationalSeries y(order);
    y[0] = gen.nonneg(3);
    for (std::size_t n = 0; n + 1 < order; ++n) {
      Rational rhs = bh[n];
      for (std::size_t j = 1; j <= n; ++j) rhs += a1[j] * Rational(static_cast<long>(n - j + 1)) * y[n - j + 1];
      for (std::size_t j = 0; j <= n; ++j) rhs += a0[j] * y[n - j];
      y[n + 1] = rhs * Rational(gen.integer(0, 8), 8 * static_cast<long>(n + 1));
    }
    const NonnegSeries yh = recurbound::solve_first_order_maj_ineq(a1, a0, bh, y[0], order);
    std::size_t bad = order;
    for (std::size_t n = 0; n < order && bad == order; ++n) {
      if (y[n] > yh[n]) bad = n;
    }
    t.record(bad == order && yh[0] == y[0], at_order("y exceeds solution", bad));
  }
  return t;
}

Tally ipp_property(oracle::Gen& gen, long count, std::size_t order) {
  Tally t{"ipp"};
  for (long it = 0; it < count; ++it) {
    t.record(recurbound::ipp_bound_check(gen.nonneg_series(order, kBits), gen.nonneg_series(order, kBits), order),
             "ipp");
  }
  return t;
}

Tally theta_hat_property(oracle::Gen& gen, long count, std::size_t order) {
  Tally t{"theta hat closed form"};
  for (long it = 0; it < count; ++it) {
    const Rational u = gen.coin() ? Rational(1, Integer(1) << static_cast<unsigned long>(gen.integer(2, 30)))
                                  : Rational(1, gen.integer(2, 1000));
    const int p = static_cast<int>(gen.integer(1, 3));
    const int q = static_cast<int>(gen.integer(0, 3));
    const NonnegSeries fh = gen.nonneg_series(order, kBits);
    const NonnegSeries theta = recurbound::theta_hat_series(u, p, q, order);
    bool defn = true;
    Rational power = 1;  // (1 + u)^(p n + q) by repeated multiplication
    for (int i = 0; i < q; ++i) power *= 1 + u;
    for (std::size_t n = 0; n < order; ++n) {
      if (theta[n] != power - 1) defn = false;
      for (int i = 0; i < p; ++i) power *= 1 + u;
    }
    const bool same =
        recurbound::hadamard(theta.series(), fh.series()) == recurbound::hadamard_theta_closed(fh, u, p, q).series();
    t.record(defn && same, defn ? "closed form differs" : "definition");
  }
  return t;
}

std::vector<Tally> majorant_suite(std::uint64_t seed, long count, std::size_t order) {
  oracle::Gen gen(seed);
  std::vector<Tally> out = closure_properties(gen, count, order);
  out.push_back(linear_majorant_property(gen, count, order));
  out.push_back(ode_transfer_property(gen, count, order));
  out.push_back(diff_inequality_property(gen, count, order));
  out.push_back(ipp_property(gen, count, order));
  out.push_back(theta_hat_property(gen, count, order));
  return out;
}

ContainmentCase containment_case(oracle::Gen& gen, int t) {
  using recurbound::Ball;
  const recurbound::DiffOperator op = gen.diff_operator();
  const int r = op.order();
  const auto rho = recurbound::root_modulus_lower_bound(op.leading(), Rational(0));
  const Rational radius = rho ? *rho : Rational(2);
  // |zeta| <= radius / 2, with small denominators
  Rational mod = recurbound::round_down_dyadic(Rational(radius * gen.integer(1, 8) / 16), 6);
  if (sgn(mod) == 0) mod = Rational(1, 64);
  static const std::array<ComplexRational, 6> dirs{{{1}, {-1}, {Rational(3, 5), Rational(4, 5)},
                                                    {Rational(-4, 5), Rational(3, 5)}, {0, 1}, {Rational(5, 13), Rational(-12, 13)}}};
  const ComplexRational zeta = dirs[static_cast<std::size_t>(gen.integer(0, 5))] * ComplexRational(mod);

  std::vector<ComplexRational> init;
  for (int n = 0; n < r; ++n) init.push_back(gen.complex(kBits));
  const long N = gen.integer(r, 200);

  const recurbound::FloatContext ctx(t);
  std::vector<Ball> balls;
  for (const auto& v : init) balls.push_back(Ball::enclose(v, ctx));

  ContainmentCase out;
  out.description = "r=" + std::to_string(r) + " N=" + std::to_string(N) + " t=" + std::to_string(t) +
                    " |zeta|=" + recurbound::to_string(mod);
  const ComplexRational exact = oracle::horner(oracle::series_solution(op, init, N), zeta);
  try {
    const recurbound::DfsumResult res = recurbound::evaluate(op, balls, zeta, N, ctx);
    out.contained = res.enclosure.contains(exact);
    out.radius = res.enclosure.rad();
  } catch (const recurbound::PrecisionFailure&) {
    out.precision_failure = true;
  }
  return out;
}

}  // namespace props
