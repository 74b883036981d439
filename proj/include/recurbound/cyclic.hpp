#ifndef RECURBOUND_CYCLIC_HPP
#define RECURBOUND_CYCLIC_HPP

// Truncated power series in t whose coefficients live in R[x]/(x^(2n) - 1).
// Coefficient (i, k) is the x^i t^k term; i is taken modulo 2n, so the index
// ranges [-n, n-1] and [0, 2n-1] address the same cells.

#include <vector>

#include "recurbound/exactnum.hpp"

namespace recurbound {

class CyclicPolySeries {
 public:
  CyclicPolySeries(int n, int order);

  int half_period() const { return n_; }
  int period() const { return 2 * n_; }
  int order() const { return order_; }

  const Rational& at(long i, int k) const { return data_[cell(i, k)]; }
  Rational& at(long i, int k) { return data_[cell(i, k)]; }

  /// All 2n coefficients of t^k, indexed 0..2n-1.
  std::vector<Rational> slice(int k) const;
  void set_slice(int k, const std::vector<Rational>& values);

  Rational min_coefficient() const;

  friend bool operator==(const CyclicPolySeries& a, const CyclicPolySeries& b) {
    return a.n_ == b.n_ && a.order_ == b.order_ && a.data_ == b.data_;
  }

 private:
  std::size_t cell(long i, int k) const;

  int n_;
  int order_;
  std::vector<Rational> data_;
};

/// (phi f)_i = (2 - 2a) f_i + a f_{i-1} + a f_{i+1}, cyclically; f has 2n entries.
std::vector<Rational> apply_phi(const std::vector<Rational>& f, const Rational& a);

/// Truncated product in Omega[[t]]. The parallel version splits the output
/// time slices across OpenMP threads; both return identical results.
CyclicPolySeries cyclic_mul(const CyclicPolySeries& f, const CyclicPolySeries& g);
CyclicPolySeries cyclic_mul_serial(const CyclicPolySeries& f, const CyclicPolySeries& g);

/// lambda(x, t) = 1 / (1 - phi(x) t + t^2) to order K.
CyclicPolySeries wave_lambda(int n, const Rational& a, int K);

}  // namespace recurbound

#endif  // RECURBOUND_CYCLIC_HPP
