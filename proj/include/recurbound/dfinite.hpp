#ifndef RECURBOUND_DFINITE_HPP
#define RECURBOUND_DFINITE_HPP

// Certified summation of power-series solutions of linear ODEs with
// polynomial coefficients
//
//     p_r(z) y^(r) + ... + p_1(z) y' + p_0(z) y = 0,   p_r(0) != 0.
//
// The coefficients are generated by the associated recurrence in ball
// arithmetic, but each new coefficient is squashed to its midpoint before
// being fed back. The largest relative local error eta_bar seen along the way
// is then turned into a bound Delta_N on the accumulated effect of all the
// discarded radii through a first-order majorant equation, and the partial
// sum ball is widened by Delta_N.

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "recurbound/ball.hpp"
#include "recurbound/exactnum.hpp"
#include "recurbound/polynomial.hpp"

namespace recurbound {

class DiffOperator {
 public:
  /// polys[i] is the coefficient of d^i/dz^i; requires r >= 1, p_r(0) != 0.
  explicit DiffOperator(std::vector<Poly> polys);

  int order() const { return static_cast<int>(polys_.size()) - 1; }
  const Poly& coeff(int i) const { return polys_.at(static_cast<std::size_t>(i)); }
  const Poly& leading() const { return polys_.back(); }
  const std::vector<Poly>& polys() const { return polys_; }

 private:
  std::vector<Poly> polys_;
};

/// b_0(n) u_n = b_1(n) u_{n-1} + ... + b_s(n) u_{n-s}.
struct RecOperator {
  std::vector<Poly> b;

  int order() const { return static_cast<int>(b.size()) - 1; }
  ComplexRational eval(int i, long n) const { return poly_eval(b.at(static_cast<std::size_t>(i)), ComplexRational(n)); }
};

/// Parameters of the majorant ahat(z) = M c^-1 alpha / (1 - alpha z)^m.
struct MajorantParams {
  Rational alpha;
  Rational c;
  Rational M;
  int m = 1;
  /// Certified lower bound on the distance to the nearest singularity;
  /// empty when p_r is constant.
  std::optional<Rational> rho_lower;
};

struct DfsumOptions {
  /// Recentre u_n at zero whenever its ball contains zero.
  bool force_zero_midpoints = false;
  bool keep_trace = false;
  int guard_bits = kDefaultGuardBits;
  /// Use this alpha instead of the automatic choice (still validated).
  std::optional<Rational> alpha;
};

/// Algorithm failure that more working precision would fix (sigma eta_bar >= 1,
/// or a positive radius with all-zero predecessors).
class PrecisionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoopResult {
  Ball partial_sum;
  Rational eta_bar;
  std::vector<Rational> eta_trace;  // eta_n for r <= n < N when kept (0 where mu = 0)
  std::vector<ComplexFloat> coefficients;  // squashed u_0 .. u_{N-1}
};

struct FinalBound {
  Rational sigma;
  Rational A;
  Rational Delta;
};

struct DfsumResult {
  Ball enclosure;
  Rational eta_bar;
  Rational u0_hat;
  Rational delta0_hat;
  Rational sigma;
  Rational A;
  Rational Delta_N;
  Rational partial_sum_rad;
  MajorantParams params;
  RecOperator rec;
  std::vector<Rational> ghat_lower;
  std::vector<Rational> eta_trace;
};

RecOperator to_recurrence(const DiffOperator& op);

MajorantParams majorant_params(const DiffOperator& op, const ComplexRational& zeta,
                               std::optional<Rational> alpha = std::nullopt, int guard_bits = kDefaultGuardBits);

/// Positive lower bounds on ghat_0 .. ghat_{r-1} for ghat = exp(int ahat).
std::vector<Rational> ghat_prefix(const MajorantParams& params, int r, const FloatContext& ctx);

/// (u0_hat, delta0_hat) from the initial balls and the ghat lower bounds.
std::pair<Rational, Rational> initial_bounds(std::span<const Ball> inits, std::span<const Rational> ghat_lower,
                                             int guard_bits = kDefaultGuardBits);

LoopResult dfsum_loop(const RecOperator& rec, std::span<const ComplexFloat> init_mids, const ComplexRational& zeta,
                      long N, const FloatContext& ctx, const DfsumOptions& options = {});

FinalBound final_bound(const MajorantParams& params, const ComplexRational& zeta, int s, const Rational& eta_bar,
                       const Rational& u0_hat, const Rational& delta0_hat, int guard_bits = kDefaultGuardBits);

/// Ball containing sum_{n<N} u_n zeta^n for every solution whose initial
/// values lie in `inits`.
DfsumResult evaluate(const DiffOperator& op, std::span<const Ball> inits, const ComplexRational& zeta, long N,
                     const FloatContext& ctx, const DfsumOptions& options = {});

}  // namespace recurbound

#endif  // RECURBOUND_DFINITE_HPP
