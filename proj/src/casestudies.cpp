#include "recurbound/casestudies.hpp"

#include <algorithm>
#include <stdexcept>

#include "recurbound/series.hpp"

namespace recurbound {

bool SimulationRecord::ok() const { return abs(error()) <= bound; }

std::optional<Rational> SimulationRecord::ratio() const {
  if (sgn(bound) == 0) return std::nullopt;
  return Rational(abs(error()) / bound);
}

bool SimulationReport::all_ok() const {
  return std::all_of(records.begin(), records.end(), [](const SimulationRecord& r) { return r.ok(); });
}

Rational SimulationReport::max_ratio() const {
  Rational best = 0;
  for (const auto& r : records) {
    if (auto q = r.ratio()) best = std::max(best, *q);
  }
  return best;
}

bool SimulationReport::passed() const {
  return all_ok() && std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.passed; });
}

ErrorPolicy parse_policy(std::string_view text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), '_', '-');
  if (s == "worst" || s == "worst-case") return ErrorPolicy::worst_case;
  if (s == "random") return ErrorPolicy::random;
  if (s == "adversarial" || s == "adversarial-sign") return ErrorPolicy::adversarial_sign;
  throw std::invalid_argument("unknown error policy '" + std::string(text) + "'");
}

std::string_view policy_name(ErrorPolicy p) {
  switch (p) {
    case ErrorPolicy::worst_case: return "worst-case";
    case ErrorPolicy::random: return "random";
    case ErrorPolicy::adversarial_sign: return "adversarial-sign";
  }
  return "?";
}

Rational random_symmetric(std::mt19937_64& rng, const Rational& bound) {
  const Integer m(std::to_string(rng() >> 31));  // 33 random bits
  Rational x(Integer(m - (Integer(1) << 32)), Integer(1) << 32);
  x.canonicalize();
  return Rational(x * bound);
}

namespace {

Rational seed_value(std::uint64_t seed) { return Rational(Integer(std::to_string(seed))); }

void require_steps(long N) {
  if (N < 1) throw std::invalid_argument("number of steps must be >= 1");
}

}  // namespace

Rational toy_naive_bound(long n, const Rational& u) {
  // (4 + 3 sqrt2)(1 + sqrt2)^n = A + B sqrt2 and its conjugate sum to 2A.
  Integer A = 4, B = 3;
  for (long k = 0; k < n; ++k) {
    Integer a2 = A + 2 * B;
    B += A;
    A = std::move(a2);
  }
  return Rational((2 * A - 4) * u);
}

SimulationReport toy_fixed_run(const Rational& c0, const Rational& u, long N, ErrorPolicy policy, std::uint64_t seed,
                               long naive_limit) {
  require_steps(N);
  if (sgn(u) < 0) throw std::invalid_argument("u must be nonnegative");
  SimulationReport rep;
  rep.name = "toy-fixed";
  rep.add_param("c0", c0);
  rep.add_param("u", u);
  rep.add_param("steps", Rational(N));
  rep.add_param("policy", std::string(policy_name(policy)));
  rep.add_param("seed", seed_value(seed));

  std::mt19937_64 rng(seed);
  const Rational two_u = 2 * u;
  Rational delta0;
  switch (policy) {
    case ErrorPolicy::worst_case: delta0 = u; break;
    case ErrorPolicy::random: delta0 = random_symmetric(rng, u); break;
    case ErrorPolicy::adversarial_sign: delta0 = -u; break;
  }

  Rational prev = 0;            // c~_{n-1}
  Rational cur = c0 + delta0;   // c~_n
  for (long n = 0; n < N; ++n) {
    SimulationRecord rec;
    rec.index = {n};
    rec.computed = cur;
    rec.exact = c0 * (n + 1);
    rec.bound = Rational((n + 1) * (n + 2)) * u;
    if (n <= naive_limit) rec.comparison = toy_naive_bound(n, u);
    rep.records.push_back(std::move(rec));

    Rational next = 2 * cur - prev;
    Rational eps;
    switch (policy) {
      case ErrorPolicy::worst_case: eps = two_u; break;
      case ErrorPolicy::random: eps = random_symmetric(rng, two_u); break;
      case ErrorPolicy::adversarial_sign: {
        // push the propagated error further from zero
        const Rational propagated = next - c0 * (n + 2);
        eps = sgn(propagated) < 0 ? Rational(-two_u) : two_u;
        break;
      }
    }
    prev = std::move(cur);
    cur = next + eps;
  }
  rep.add_check("sharp-bound", rep.all_ok(), "max ratio " + to_decimal(rep.max_ratio(), 6));
  return rep;
}

Rational toy_alpha_upper(const Rational& u, int bits) {
  const Rational one_u = 1 + u;
  return round_up_dyadic(Rational(one_u + sqrt_upper(Rational(u * one_u), bits)), bits);
}

SimulationReport toy_float_run(const BinFloat& c0, const FloatContext& ctx, long N) {
  require_steps(N);
  if (c0.precision() != ctx.precision()) throw std::invalid_argument("c0 must be a float of the working precision");
  const Rational u = ctx.unit_roundoff();
  const Rational c0v = c0.to_rational();
  SimulationReport rep;
  rep.name = "toy-float";
  rep.add_param("c0", c0v);
  rep.add_param("precision", Rational(ctx.precision()));
  rep.add_param("steps", Rational(N));

  const int bits = 96;
  const Rational alpha = toy_alpha_upper(u, bits);
  rep.add_param("alpha_upper", alpha);

  BinFloat prev = BinFloat::zero(ctx.precision());
  BinFloat cur = c0;
  Rational alpha_pow = 1;
  for (long n = 0; n < N; ++n) {
    SimulationRecord rec;
    rec.index = {n};
    rec.computed = cur.to_rational();
    rec.exact = c0v * (n + 1);
    const Rational poly = Rational(Integer(n + 1) * (n + 2) * (n + 3), 6);
    rec.bound = round_up_dyadic(Rational(abs(c0v) * poly * alpha_pow * u), bits);
    rep.records.push_back(std::move(rec));

    BinFloat next = fp_op(ctx, FpOp::sub, cur.ldexp(1), prev);
    prev = std::move(cur);
    cur = std::move(next);
    alpha_pow = round_up_dyadic(Rational(alpha_pow * alpha), bits);
  }
  rep.add_check("relative-bound", rep.all_ok(), "max ratio " + to_decimal(rep.max_ratio(), 6));

  if (u <= Rational(1, 128)) {
    // alpha^n is increasing, so checking the largest n <= u^(-1/2) covers all.
    Integer n_max = Integer(u.get_den()) / u.get_num();  // floor(sqrt(1/u)) = floor(sqrt(floor(1/u)))
    mpz_sqrt(n_max.get_mpz_t(), n_max.get_mpz_t());
    Rational power = 1, base = alpha;
    for (unsigned long e = n_max.get_ui(); e > 0; e >>= 1) {
      if (e & 1) power = round_up_dyadic(Rational(power * base), bits);
      base = round_up_dyadic(Rational(base * base), bits);
    }
    rep.add_check("alpha-power-at-most-3", power <= 3,
                  "alpha^" + n_max.get_str() + " <= " + to_decimal(power, 8));
  }
  return rep;
}

std::vector<Rational> toy_majorant_coefficients(const Rational& c0, const Rational& u, long N) {
  require_steps(N);
  const Rational one_u = 1 + u;
  // (1 - z)^2 (1 - 2(1+u) z + (1+u) z^2)
  const RationalSeries a{Rational(1), Rational(-2), Rational(1)};
  const RationalSeries b{Rational(1), Rational(-2 * one_u), one_u};
  RationalSeries den(static_cast<std::size_t>(std::max(N, 5L)));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i + j < den.order()) den[i + j] += a[i] * b[j];
  const RationalSeries inv = ps_reciprocal(den);
  std::vector<Rational> out;
  const Rational scale = abs(c0) * u;
  for (long n = 0; n < N; ++n) out.push_back(scale * inv[static_cast<std::size_t>(n)]);
  return out;
}

SimulationReport toy_float_tightness(const Rational& c0, const Rational& u, long N) {
  require_steps(N);
  if (sgn(c0) < 0) throw std::invalid_argument("tightness needs c0 >= 0");
  SimulationReport rep;
  rep.name = "toy-tight";
  rep.add_param("c0", c0);
  rep.add_param("u", u);
  rep.add_param("steps", Rational(N));

  const std::vector<Rational> dhat = toy_majorant_coefficients(c0, u, N);
  const Rational one_u = 1 + u;
  Rational prev = 0;
  Rational cur = c0 * one_u;
  long first_mismatch = -1;
  for (long n = 0; n < N; ++n) {
    SimulationRecord rec;
    rec.index = {n};
    rec.computed = cur;
    rec.exact = c0 * (n + 1);
    rec.bound = dhat[static_cast<std::size_t>(n)];
    if (rec.error() != rec.bound && first_mismatch < 0) first_mismatch = n;
    rep.records.push_back(std::move(rec));
    Rational next = (2 * cur - prev) * one_u;
    prev = std::move(cur);
    cur = std::move(next);
  }
  rep.add_check("exact-equality", first_mismatch < 0,
                first_mismatch < 0 ? "delta_n equals the majorant coefficient for every n"
                                   : "first mismatch at n = " + std::to_string(first_mismatch));
  return rep;
}

SimulationReport legendre_run(const Rational& x, const Rational& eps_bar, long N, ErrorPolicy policy,
                              std::uint64_t seed) {
  require_steps(N);
  if (abs(x) > 1) throw std::invalid_argument("x must lie in [-1, 1]");
  if (sgn(eps_bar) < 0) throw std::invalid_argument("error bound must be nonnegative");
  SimulationReport rep;
  rep.name = "legendre";
  rep.add_param("x", x);
  rep.add_param("eps_bar", eps_bar);
  rep.add_param("steps", Rational(N));
  rep.add_param("policy", std::string(policy_name(policy)));
  rep.add_param("seed", seed_value(seed));

  std::mt19937_64 rng(seed);
  Rational p_prev = 0, p = 1;    // exact
  Rational q_prev = 0, q = 1;    // perturbed
  for (long n = 0; n < N; ++n) {
    SimulationRecord rec;
    rec.index = {n};
    rec.computed = q;
    rec.exact = p;
    rec.bound = Rational((n + 1) * (n + 2)) * eps_bar / 4;
    rep.records.push_back(std::move(rec));

    const Rational c1 = Rational(2 * n + 1, n + 1) * x;
    const Rational c2 = Rational(n, n + 1);
    Rational p_next = c1 * p - c2 * p_prev;
    Rational q_next = c1 * q - c2 * q_prev;
    switch (policy) {
      case ErrorPolicy::worst_case: q_next += eps_bar; break;
      case ErrorPolicy::random: q_next += random_symmetric(rng, eps_bar); break;
      case ErrorPolicy::adversarial_sign:
        q_next += sgn(q_next - p_next) < 0 ? Rational(-eps_bar) : eps_bar;
        break;
    }
    p_prev = std::move(p);
    p = std::move(p_next);
    q_prev = std::move(q);
    q = std::move(q_next);
  }
  rep.add_check("global-bound", rep.all_ok(), "max ratio " + to_decimal(rep.max_ratio(), 6));
  return rep;
}

namespace {

Integer factorial(long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

// n! by the chain ((2 x 3) x 4) x ... x n, one rounding per product.
BinFloat float_factorial(long n, const FloatContext& ctx) {
  BinFloat f = round_nearest(Rational(1), ctx);
  for (long i = 2; i <= n; ++i) f = fp_op(ctx, FpOp::mul, f, round_nearest(Rational(i), ctx));
  return f;
}

}  // namespace

std::vector<Rational> bernoulli_exact(long K) {
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  std::vector<Rational> b;
  for (long k = 0; k < K; ++k) {
    Rational v(Integer(1), factorial(2 * k) << static_cast<unsigned long>(2 * k));
    for (long j = 0; j < k; ++j)
      v -= b[static_cast<std::size_t>(j)] /
           Rational(factorial(2 * k + 1 - 2 * j) << static_cast<unsigned long>(2 * (k - j)));
    v.canonicalize();
    b.push_back(std::move(v));
  }
  return b;
}

std::vector<BinFloat> bernoulli_float(const FloatContext& ctx, long K) {
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  const BinFloat one = round_nearest(Rational(1), ctx);
  std::vector<BinFloat> b;
  for (long k = 0; k < K; ++k) {
    const BinFloat lead = fp_op(ctx, FpOp::div, one, float_factorial(2 * k, ctx).ldexp(2 * k));
    if (k == 0) {
      b.push_back(lead);
      continue;
    }
    BinFloat sum;
    for (long j = 0; j < k; ++j) {
      const BinFloat den = float_factorial(2 * k + 1 - 2 * j, ctx).ldexp(2 * (k - j));
      BinFloat term = fp_op(ctx, FpOp::div, b[static_cast<std::size_t>(j)], den);
      sum = j == 0 ? std::move(term) : fp_op(ctx, FpOp::add, sum, term);
    }
    b.push_back(fp_op(ctx, FpOp::sub, lead, sum));
  }
  return b;
}

bool bernoulli_magnitudes_ok(const std::vector<Rational>& b, std::string* detail) {
  const long K = static_cast<long>(b.size());
  // |b_k| exceeds 2 (2 pi)^-2k by a relative margin of about 4^-k, so the
  // bracket on pi must be correspondingly tight.
  const int bits = static_cast<int>(64 + 4 * K);
  const auto [pi_lo, pi_hi] = pi_bracket(bits);
  const Rational two_pi_lo_sq = 4 * pi_lo * pi_lo;
  const Rational two_pi_hi_sq = 4 * pi_hi * pi_hi;
  Rational lo_pow = 1, hi_pow = 1;
  for (long k = 1; k < K; ++k) {
    lo_pow *= two_pi_lo_sq;
    hi_pow *= two_pi_hi_sq;
    const Rational& v = b[static_cast<std::size_t>(k)];
    const bool sign_ok = (k % 2 == 1) ? sgn(v) > 0 : sgn(v) < 0;
    const Rational mag = abs(v);
    // pi_lo < pi < pi_hi makes both comparisons conservative.
    const bool lower_ok = mag * lo_pow >= 2;
    const bool upper_ok = mag * hi_pow <= 4;
    if (!(sign_ok && lower_ok && upper_ok)) {
      if (detail) *detail = "fails at k = " + std::to_string(k);
      return false;
    }
  }
  if (detail) *detail = "pi bracketed to " + std::to_string(bits) + " bits";
  return true;
}

SimulationReport bernoulli_run(const FloatContext& ctx, long K) {
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  const Rational u = ctx.unit_roundoff();
  if (u > Rational(1, 65536)) throw std::invalid_argument("bound requires u <= 2^-16");
  if ((Integer(1) << ctx.precision()) < 2 * K) throw std::invalid_argument("precision too low for exact factors");
  SimulationReport rep;
  rep.name = "bernoulli";
  rep.add_param("precision", Rational(ctx.precision()));
  rep.add_param("K", Rational(K));

  const std::vector<Rational> exact = bernoulli_exact(K);
  const std::vector<BinFloat> approx = bernoulli_float(ctx, K);
  const Rational growth = 1 + Rational(106, 5) * u;
  Rational growth_pow = 1;
  bool corollary_ok = true;
  long corollary_count = 0;
  for (long k = 0; k < K; ++k) {
    const Rational& e = exact[static_cast<std::size_t>(k)];
    SimulationRecord rec;
    rec.index = {k};
    rec.computed = approx[static_cast<std::size_t>(k)].to_rational();
    rec.exact = e;
    // bound on |eta_k| times |b_k|
    rec.bound = k == 0 ? Rational(0) : Rational(growth_pow * (Rational(11, 10) * k + 446) * u * abs(e));
    if (k >= 1 && 43 * k * u <= 1) {
      rec.comparison = Rational((3 * k + 1213) * u * abs(e));
      ++corollary_count;
      if (abs(rec.error()) > *rec.comparison) corollary_ok = false;
    }
    rep.records.push_back(std::move(rec));
    growth_pow *= growth;
  }
  rep.add_check("relative-bound", rep.all_ok(), "max ratio " + to_decimal(rep.max_ratio(), 6));
  rep.add_check("corollary-bound", corollary_ok, std::to_string(corollary_count) + " indices with 43 k u <= 1");
  std::string detail;
  const bool mags = bernoulli_magnitudes_ok(exact, &detail);
  rep.add_check("magnitude-enclosure", mags, detail);
  return rep;
}

}  // namespace recurbound
