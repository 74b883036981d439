#include "recurbound/cyclic.hpp"

#include <algorithm>
#include <stdexcept>

namespace recurbound {

CyclicPolySeries::CyclicPolySeries(int n, int order) : n_(n), order_(order) {
  if (n < 1) throw std::invalid_argument("cyclic series needs n >= 1");
  if (order < 1) throw std::invalid_argument("series order must be >= 1");
  data_.assign(static_cast<std::size_t>(2 * n) * static_cast<std::size_t>(order), Rational(0));
}

std::size_t CyclicPolySeries::cell(long i, int k) const {
  if (k < 0 || k >= order_) throw std::out_of_range("time index outside truncation order");
  const long p = period();
  const long j = ((i % p) + p) % p;
  return static_cast<std::size_t>(k) * static_cast<std::size_t>(p) + static_cast<std::size_t>(j);
}

std::vector<Rational> CyclicPolySeries::slice(int k) const {
  const auto begin = data_.begin() + static_cast<long>(cell(0, k));
  return {begin, begin + period()};
}

void CyclicPolySeries::set_slice(int k, const std::vector<Rational>& values) {
  if (static_cast<int>(values.size()) != period()) throw std::invalid_argument("slice length must be 2n");
  std::copy(values.begin(), values.end(), data_.begin() + static_cast<long>(cell(0, k)));
}

Rational CyclicPolySeries::min_coefficient() const { return *std::min_element(data_.begin(), data_.end()); }

std::vector<Rational> apply_phi(const std::vector<Rational>& f, const Rational& a) {
  const std::size_t p = f.size();
  const Rational centre = 2 - 2 * a;
  std::vector<Rational> out(p);
  for (std::size_t i = 0; i < p; ++i)
    out[i] = centre * f[i] + a * (f[(i + p - 1) % p] + f[(i + 1) % p]);
  return out;
}

namespace {

// Integer image of a cyclic series over a common denominator, so that the
// convolution kernel only does integer multiply-adds.
struct IntGrid {
  int p;
  int K;
  std::vector<Integer> v;
  Integer den;
  std::vector<char> nonzero_slice;

  const Integer& at(int i, int k) const { return v[static_cast<std::size_t>(k) * p + i]; }
};

IntGrid to_integers(const CyclicPolySeries& f) {
  IntGrid g{f.period(), f.order(), {}, Integer(1), {}};
  for (int k = 0; k < g.K; ++k)
    for (int i = 0; i < g.p; ++i) mpz_lcm(g.den.get_mpz_t(), g.den.get_mpz_t(), f.at(i, k).get_den_mpz_t());
  g.v.resize(static_cast<std::size_t>(g.p) * g.K);
  g.nonzero_slice.assign(static_cast<std::size_t>(g.K), 0);
  for (int k = 0; k < g.K; ++k) {
    for (int i = 0; i < g.p; ++i) {
      const Rational& x = f.at(i, k);
      Integer& out = g.v[static_cast<std::size_t>(k) * g.p + i];
      out = g.den / x.get_den() * x.get_num();
      if (sgn(out) != 0) g.nonzero_slice[static_cast<std::size_t>(k)] = 1;
    }
  }
  return g;
}

void convolve_slice(const IntGrid& F, const IntGrid& G, int k, std::vector<Integer>& acc) {
  const int p = F.p;
  for (auto& x : acc) x = 0;
  for (int j = 0; j <= k; ++j) {
    if (j >= F.K || k - j >= G.K) continue;
    if (!F.nonzero_slice[static_cast<std::size_t>(j)] || !G.nonzero_slice[static_cast<std::size_t>(k - j)]) continue;
    for (int l = 0; l < p; ++l) {
      const Integer& a = F.at(l, j);
      if (sgn(a) == 0) continue;
      for (int m = 0; m < p; ++m) {
        const Integer& b = G.at(m, k - j);
        if (sgn(b) == 0) continue;
        const int idx = l + m < p ? l + m : l + m - p;
        mpz_addmul(acc[static_cast<std::size_t>(idx)].get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      }
    }
  }
}

void store_slice(CyclicPolySeries& out, int k, const std::vector<Integer>& acc, const Integer& den) {
  for (int i = 0; i < out.period(); ++i) {
    Rational q(acc[static_cast<std::size_t>(i)], den);
    q.canonicalize();
    out.at(i, k) = std::move(q);
  }
}

void check_compatible(const CyclicPolySeries& f, const CyclicPolySeries& g) {
  if (f.half_period() != g.half_period()) throw std::invalid_argument("cyclic series with different periods");
}

}  // namespace

CyclicPolySeries cyclic_mul_serial(const CyclicPolySeries& f, const CyclicPolySeries& g) {
  check_compatible(f, g);
  const int K = std::min(f.order(), g.order());
  const IntGrid F = to_integers(f), G = to_integers(g);
  const Integer den = F.den * G.den;
  CyclicPolySeries out(f.half_period(), K);
  std::vector<Integer> acc(static_cast<std::size_t>(f.period()));
  for (int k = 0; k < K; ++k) {
    convolve_slice(F, G, k, acc);
    store_slice(out, k, acc, den);
  }
  return out;
}

CyclicPolySeries cyclic_mul(const CyclicPolySeries& f, const CyclicPolySeries& g) {
  check_compatible(f, g);
  const int K = std::min(f.order(), g.order());
  const IntGrid F = to_integers(f), G = to_integers(g);
  const Integer den = F.den * G.den;
  CyclicPolySeries out(f.half_period(), K);
  // Later slices sum more terms; dynamic scheduling keeps threads balanced.
#pragma omp parallel
  {
    std::vector<Integer> acc(static_cast<std::size_t>(f.period()));
#pragma omp for schedule(dynamic, 1)
    for (int k = K - 1; k >= 0; --k) {
      convolve_slice(F, G, k, acc);
      store_slice(out, k, acc, den);
    }
  }
  return out;
}

CyclicPolySeries wave_lambda(int n, const Rational& a, int K) {
  if (sgn(a) <= 0 || a > 1) throw std::invalid_argument("wave parameter a must lie in (0, 1]");
  // (1 - phi t + t^2) lambda = 1  <=>  lambda^k = phi lambda^(k-1) - lambda^(k-2).
  CyclicPolySeries lambda(n, K);
  lambda.at(0, 0) = 1;
  std::vector<Rational> prev(static_cast<std::size_t>(2 * n), Rational(0));
  std::vector<Rational> cur = lambda.slice(0);
  for (int k = 1; k < K; ++k) {
    std::vector<Rational> next = apply_phi(cur, a);
    for (std::size_t i = 0; i < next.size(); ++i) next[i] -= prev[i];
    lambda.set_slice(k, next);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return lambda;
}

}  // namespace recurbound
