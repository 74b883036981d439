#ifndef RECURBOUND_POLYNOMIAL_HPP
#define RECURBOUND_POLYNOMIAL_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "recurbound/exactnum.hpp"

namespace recurbound {

/// Dense univariate polynomial, coefficients in ascending degree order.
using Poly = std::vector<ComplexRational>;

/// Drops trailing zero coefficients.
Poly poly_trim(Poly p);
/// Degree, or -1 for the zero polynomial.
int poly_degree(const Poly& p);
bool poly_is_zero(const Poly& p);

ComplexRational poly_eval(const Poly& p, const ComplexRational& x);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& p, const ComplexRational& c);

/// (X - shift)(X - shift - 1)...(X - shift - k + 1).
Poly shifted_falling_factorial(int k, long shift);

/// Polynomial whose roots are the squares of the roots of p.
Poly graeffe_step(const Poly& p);

/// Raised when a root-modulus lower bound cannot be pushed above the
/// requested threshold.
class CertificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rational L <= min |root of p|, from a Cauchy-type bound on the reversed
/// polynomial sharpened by Graeffe squaring. Stops as soon as L > need;
/// returns std::nullopt (infinite radius) for constant p. Throws
/// CertificationFailure if L <= need after `max_steps` squarings.
std::optional<Rational> root_modulus_lower_bound(const Poly& p, const Rational& need, int max_steps = 8,
                                                 int guard_bits = 32);

}  // namespace recurbound

#endif  // RECURBOUND_POLYNOMIAL_HPP
