#include "recurbound/polynomial.hpp"

#include <algorithm>

namespace recurbound {

Poly poly_trim(Poly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

int poly_degree(const Poly& p) {
  for (std::size_t i = p.size(); i-- > 0;) {
    if (!p[i].is_zero()) return static_cast<int>(i);
  }
  return -1;
}

bool poly_is_zero(const Poly& p) { return poly_degree(p) < 0; }

ComplexRational poly_eval(const Poly& p, const ComplexRational& x) {
  ComplexRational acc;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return poly_trim(std::move(r));
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return poly_trim(std::move(r));
}

Poly poly_scale(const Poly& p, const ComplexRational& c) {
  Poly r = p;
  for (auto& x : r) x *= c;
  return poly_trim(std::move(r));
}

Poly shifted_falling_factorial(int k, long shift) {
  Poly r{ComplexRational(1)};
  for (int i = 0; i < k; ++i) r = poly_mul(r, Poly{ComplexRational(-(shift + i)), ComplexRational(1)});
  return r;
}

Poly graeffe_step(const Poly& p) {
  // p(z) = E(z^2) + z O(z^2)  =>  p(z) p(-z) = E(z^2)^2 - z^2 O(z^2)^2.
  Poly even, odd;
  for (std::size_t i = 0; i < p.size(); ++i) (i % 2 == 0 ? even : odd).push_back(p[i]);
  Poly e2 = poly_mul(even, even);
  Poly o2 = poly_mul(odd, odd);
  Poly shifted_o2(o2.size() + 1);
  for (std::size_t i = 0; i < o2.size(); ++i) shifted_o2[i + 1] = -o2[i];
  return poly_add(e2, shifted_o2);
}

namespace {

// |a_0| / (|a_0| + max_{j>=1} |a_j|) bounds every root modulus from below:
// if |z| < 1 is a root then |a_0| <= max|a_j| |z| / (1 - |z|).
Rational cauchy_lower(const Poly& p, int guard_bits) {
  const Rational a0 = abs_lower(p[0], guard_bits);
  Rational top = 0;
  for (std::size_t j = 1; j < p.size(); ++j) top = std::max(top, abs_upper(p[j], guard_bits));
  return a0 / (a0 + top);
}

}  // namespace

std::optional<Rational> root_modulus_lower_bound(const Poly& p_in, const Rational& need, int max_steps,
                                                 int guard_bits) {
  Poly p = poly_trim(p_in);
  if (p.empty() || p[0].is_zero()) throw std::invalid_argument("root bound needs p(0) != 0");
  if (poly_degree(p) == 0) return std::nullopt;

  Rational best = 0;
  for (int step = 0;; ++step) {
    Rational bound = cauchy_lower(p, guard_bits);
    // roots of p are 2^step-th roots of roots of the current polynomial
    for (int i = 0; i < step; ++i) bound = round_down_dyadic(sqrt_lower(bound, guard_bits), guard_bits);
    best = std::max(best, bound);
    if (best > need) return best;
    if (step == max_steps) break;
    p = graeffe_step(p);
    const ComplexRational lead = p[0];
    p = poly_scale(p, ComplexRational(1) / lead);
  }
  throw CertificationFailure("cannot certify the evaluation point inside the singularity-free disk (best bound " +
                             to_decimal(best, 6) + ")");
}

}  // namespace recurbound
