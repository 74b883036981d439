#include "recurbound/dfinite.hpp"

#include <algorithm>

namespace recurbound {

DiffOperator::DiffOperator(std::vector<Poly> polys) : polys_(std::move(polys)) {
  if (polys_.size() < 2) throw std::invalid_argument("differential operator must have order >= 1");
  for (auto& p : polys_) p = poly_trim(std::move(p));
  if (poly_is_zero(polys_.back()) || polys_.back()[0].is_zero())
    throw std::invalid_argument("leading coefficient must not vanish at the origin");
}

RecOperator to_recurrence(const DiffOperator& op) {
  // z^r p_i(z) D^i = sum_j p_{i,j} z^(j+r-i) Q_i(theta) with Q_i(x) = x(x-1)...(x-i+1).
  // Acting on sum u_n z^n, the term with shift d contributes p_{i,j} Q_i(n-d) u_{n-d}
  // to the coefficient of z^n; only (i, j) = (r, 0) has d = 0.
  const int r = op.order();
  int s = 0;
  for (int i = 0; i <= r; ++i) {
    const int deg = poly_degree(op.coeff(i));
    if (deg >= 0) s = std::max(s, deg + r - i);
  }
  RecOperator rec;
  rec.b.assign(static_cast<std::size_t>(s) + 1, Poly{});
  for (int i = 0; i <= r; ++i) {
    const Poly& p = op.coeff(i);
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p[j].is_zero()) continue;
      const int d = static_cast<int>(j) + r - i;
      Poly term = poly_scale(shifted_falling_factorial(i, d), p[j]);
      auto& slot = rec.b[static_cast<std::size_t>(d)];
      slot = d == 0 ? poly_add(slot, term) : poly_add(slot, poly_scale(term, ComplexRational(-1)));
    }
  }
  return rec;
}

MajorantParams majorant_params(const DiffOperator& op, const ComplexRational& zeta, std::optional<Rational> alpha,
                               int guard_bits) {
  MajorantParams mp;
  const Poly& lead = op.leading();
  mp.m = std::max(1, poly_degree(lead));
  mp.c = abs_lower(lead[0], guard_bits);
  const Rational zeta_up = abs_upper(zeta, guard_bits);
  mp.rho_lower = root_modulus_lower_bound(lead, zeta_up);

  if (alpha) {
    if (sgn(*alpha) <= 0 || (mp.rho_lower && *alpha * *mp.rho_lower <= 1))
      throw std::invalid_argument("alpha must exceed the inverse singularity distance");
    mp.alpha = *alpha;
  } else if (mp.rho_lower) {
    mp.alpha = Rational(16, 15) / *mp.rho_lower;
    if (sgn(zeta_up) > 0 && mp.alpha * zeta_up >= 1) mp.alpha = (1 / *mp.rho_lower + 1 / zeta_up) / 2;
  } else {
    mp.alpha = sgn(zeta_up) > 0 ? Rational(1 / (2 * zeta_up)) : Rational(1);
  }
  mp.alpha.canonicalize();
  if (mp.alpha * zeta_up >= 1) throw std::invalid_argument("evaluation point outside the majorant's disk");

  mp.M = 0;
  for (int i = 0; i < op.order(); ++i) {
    const Poly& p = op.coeff(i);
    Rational sum = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p[j].is_zero()) continue;
      sum += abs_upper(p[j], guard_bits) / pow(mp.alpha, static_cast<unsigned long>(i) + j + 1);
    }
    mp.M = std::max(mp.M, sum);
  }
  // P = p_r D^r: any M > 0 still bounds the (zero) lower coefficients
  if (sgn(mp.M) == 0) mp.M = 1;
  return mp;
}

namespace {

Rational binomial(long n, long k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(b);
}

// Ball evaluation of the first r coefficients of exp(int ahat); nullopt if
// some lower endpoint is not positive at this precision.
std::optional<std::vector<Rational>> ghat_attempt(const MajorantParams& mp, int r, const FloatContext& ctx) {
  const Rational K = mp.M * mp.alpha / mp.c;
  std::vector<Ball> a;
  for (int j = 0; j + 1 < r; ++j)
    a.push_back(Ball::enclose(Rational(K * pow(mp.alpha, j) * binomial(mp.m + j - 1, j)), ctx));
  std::vector<Ball> g{Ball::enclose(ComplexRational(1), ctx)};
  for (int n = 0; n + 1 < r; ++n) {
    Ball acc = Ball::zero(ctx);
    for (int j = 0; j <= n; ++j) acc = ball_add(acc, ball_mul(a[j], g[n - j], ctx), ctx);
    g.push_back(ball_scale(acc, ComplexRational(Rational(1, n + 1)), ctx));
  }
  std::vector<Rational> lower;
  for (const auto& b : g) {
    Rational lo = b.mid().re.to_rational() - b.rad();
    if (sgn(lo) <= 0) return std::nullopt;
    lower.push_back(std::move(lo));
  }
  return lower;
}

}  // namespace

std::vector<Rational> ghat_prefix(const MajorantParams& params, int r, const FloatContext& ctx) {
  if (sgn(params.M) <= 0) throw std::invalid_argument("majorant constant M must be positive");
  for (int t = ctx.precision(); t <= std::max(ctx.precision(), 64) * 64; t *= 2) {
    if (auto lower = ghat_attempt(params, r, FloatContext(t))) return *lower;
  }
  throw PrecisionFailure("could not certify positive lower bounds on the majorant's initial coefficients");
}

std::pair<Rational, Rational> initial_bounds(std::span<const Ball> inits, std::span<const Rational> ghat_lower,
                                             int guard_bits) {
  if (inits.size() != ghat_lower.size()) throw std::invalid_argument("initial value count mismatch");
  Rational u0 = 0, d0 = 0;
  for (std::size_t n = 0; n < inits.size(); ++n) {
    u0 = std::max(u0, Rational(inits[n].abs_upper(guard_bits) / ghat_lower[n]));
    d0 = std::max(d0, Rational(inits[n].rad() / ghat_lower[n]));
  }
  return {u0, d0};
}

LoopResult dfsum_loop(const RecOperator& rec, std::span<const ComplexFloat> init_mids, const ComplexRational& zeta,
                      long N, const FloatContext& ctx, const DfsumOptions& options) {
  const long r = static_cast<long>(init_mids.size());
  const int s = rec.order();
  LoopResult out;
  out.eta_bar = 0;

  std::vector<ComplexFloat> ut(init_mids.begin(), init_mids.end());
  ut.resize(static_cast<std::size_t>(std::max(N, r)));
  const Ball zeta_ball = Ball::enclose(zeta, ctx, options.guard_bits);
  Ball t = Ball::enclose(ComplexRational(1), ctx);
  Ball sum = Ball::zero(ctx);

  for (long n = 1; n <= N; ++n) {
    if (n >= r && n < N) {
      Ball acc = Ball::zero(ctx);
      Rational mu = 0;
      for (int i = 1; i <= s && i <= n; ++i) {
        const ComplexFloat& prev = ut[static_cast<std::size_t>(n - i)];
        if (prev.is_zero()) continue;
        const ComplexRational bi = rec.eval(i, n);
        if (bi.is_zero()) continue;
        acc = ball_add(acc, ball_mul(Ball::enclose(bi, ctx, options.guard_bits), Ball::exact(prev), ctx), ctx);
        mu += abs_lower(prev.to_complex_rational(), options.guard_bits);
      }
      Ball un = ball_div(acc, Ball::enclose(rec.eval(0, n), ctx, options.guard_bits), ctx);
      if (options.force_zero_midpoints) un = force_zero_midpoint(un);
      auto [mid, rad] = squash(un);
      Rational eta = 0;
      if (sgn(mu) > 0) {
        eta = rad / mu;
        out.eta_bar = std::max(out.eta_bar, eta);
      } else if (sgn(rad) > 0) {
        throw PrecisionFailure("nonzero local error at index " + std::to_string(n) + " with vanishing predecessors");
      }
      if (options.keep_trace) out.eta_trace.push_back(std::move(eta));
      ut[static_cast<std::size_t>(n)] = std::move(mid);
    }
    sum = ball_add(sum, ball_mul(Ball::exact(ut[static_cast<std::size_t>(n - 1)]), t, ctx), ctx);
    if (n < N) t = ball_mul(zeta_ball, t, ctx);
  }
  ut.resize(static_cast<std::size_t>(N));
  out.coefficients = std::move(ut);
  out.partial_sum = std::move(sum);
  return out;
}

FinalBound final_bound(const MajorantParams& params, const ComplexRational& zeta, int s, const Rational& eta_bar,
                       const Rational& u0_hat, const Rational& delta0_hat, int guard_bits) {
  const Rational z = abs_upper(zeta, guard_bits);
  const Rational az = params.alpha * z;
  if (az >= 1) throw std::invalid_argument("evaluation point outside the majorant's disk");

  FinalBound fb;
  Rational zk = 1, poly = 0;
  for (int k = 1; k <= s; ++k) {
    zk *= z;
    poly += zk;
  }
  fb.sigma = params.c * poly;
  const Rational one_minus = 1 - fb.sigma * eta_bar;
  if (sgn(one_minus) <= 0) throw PrecisionFailure("working precision too low: sigma * eta_bar >= 1");

  fb.A = params.M / params.c * az / pow(Rational(1 - az), static_cast<unsigned long>(params.m));
  const Rational num = delta0_hat + u0_hat * fb.sigma * (1 + fb.A) * eta_bar;
  if (sgn(num) == 0) {
    fb.Delta = 0;
    return fb;
  }
  fb.Delta = num / one_minus * exp_upper(Rational(fb.A / one_minus));
  return fb;
}

DfsumResult evaluate(const DiffOperator& op, std::span<const Ball> inits, const ComplexRational& zeta, long N,
                     const FloatContext& ctx, const DfsumOptions& options) {
  const int r = op.order();
  if (static_cast<int>(inits.size()) != r) throw std::invalid_argument("need exactly r initial values");
  if (N < 0) throw std::invalid_argument("truncation order must be nonnegative");

  DfsumResult res;
  res.rec = to_recurrence(op);
  res.params = majorant_params(op, zeta, options.alpha, options.guard_bits);
  res.ghat_lower = ghat_prefix(res.params, r, ctx);
  std::tie(res.u0_hat, res.delta0_hat) = initial_bounds(inits, res.ghat_lower, options.guard_bits);

  std::vector<ComplexFloat> mids;
  for (const auto& b : inits) mids.push_back(b.mid());
  LoopResult loop = dfsum_loop(res.rec, mids, zeta, N, ctx, options);
  res.eta_bar = loop.eta_bar;
  res.eta_trace = std::move(loop.eta_trace);
  res.partial_sum_rad = loop.partial_sum.rad();

  const FinalBound fb = final_bound(res.params, zeta, res.rec.order(), res.eta_bar, res.u0_hat, res.delta0_hat,
                                    options.guard_bits);
  res.sigma = fb.sigma;
  res.A = fb.A;
  res.Delta_N = fb.Delta;
  res.enclosure = loop.partial_sum.with_added_radius(res.Delta_N);
  return res;
}

}  // namespace recurbound
