#ifndef RECURBOUND_CASESTUDIES_HPP
#define RECURBOUND_CASESTUDIES_HPP

// Worked examples: each run simulates a recurrence with a controlled error
// model next to its exact rational counterpart and compares the observed
// global error with a closed-form bound.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "recurbound/cyclic.hpp"
#include "recurbound/exactnum.hpp"

namespace recurbound {

struct SimulationRecord {
  std::vector<long> index;  // {n} or {i, k}
  Rational computed;
  Rational exact;
  Rational bound;
  /// Secondary bound shown for comparison only (not part of ok()).
  std::optional<Rational> comparison;

  Rational error() const { return computed - exact; }
  bool ok() const;
  /// |error| / bound; empty when bound is zero.
  std::optional<Rational> ratio() const;
};

struct NamedCheck {
  std::string name;
  bool passed;
  std::string detail;
};

struct SimulationReport {
  using Value = std::variant<Rational, std::string>;

  std::string name;
  std::vector<std::pair<std::string, Value>> parameters;
  std::vector<SimulationRecord> records;
  std::vector<NamedCheck> checks;

  /// Every record's error lies within its bound.
  bool all_ok() const;
  Rational max_ratio() const;
  /// all_ok() and every named check passed.
  bool passed() const;

  void add_param(std::string key, Value value) { parameters.emplace_back(std::move(key), std::move(value)); }
  void add_check(std::string check_name, bool ok, std::string detail = {}) {
    checks.push_back({std::move(check_name), ok, std::move(detail)});
  }
};

enum class ErrorPolicy { worst_case, random, adversarial_sign };

/// Accepts "worst", "worst-case", "random", "adversarial", "adversarial-sign" (and _ spellings).
ErrorPolicy parse_policy(std::string_view text);
std::string_view policy_name(ErrorPolicy p);

/// Uniform rational in [-bound, bound) on a 2^-32 grid; uses only the raw
/// engine output so streams are identical across standard libraries.
Rational random_symmetric(std::mt19937_64& rng, const Rational& bound);

// Constant-coefficient toy recurrence c_{n+1} = 2 c_n - c_{n-1}, c_{-1} = 0.

/// (lambda+ alpha+^n + lambda- alpha-^n - 4) u, computed exactly: the two
/// irrational terms are conjugates in Z[sqrt 2] so their sum is an integer.
Rational toy_naive_bound(long n, const Rational& u);

/// Absolute errors injected per step: |eps_n| <= 2u, |delta_0| <= u.
/// The naive bound column is filled for n <= naive_limit.
SimulationReport toy_fixed_run(const Rational& c0, const Rational& u, long N, ErrorPolicy policy,
                               std::uint64_t seed = 0, long naive_limit = 100);

/// Rational upper bound on the larger root of z^2 - 2(1+u) z + (1+u).
Rational toy_alpha_upper(const Rational& u, int bits = 96);

/// Floating-point run at ctx precision; relative rounding per step.
SimulationReport toy_float_run(const BinFloat& c0, const FloatContext& ctx, long N);

/// Coefficients of |c0| u / ((1-z)^2 (1 - 2(1+u) z + (1+u) z^2)) up to order N.
std::vector<Rational> toy_majorant_coefficients(const Rational& c0, const Rational& u, long N);

/// Every step rounded by exactly (1+u), including c~_0 = c0 (1+u); checks the
/// global errors against the majorant coefficients for exact equality.
SimulationReport toy_float_tightness(const Rational& c0, const Rational& u, long N);

// Legendre polynomials by the three-term recurrence with absolute errors.

SimulationReport legendre_run(const Rational& x, const Rational& eps_bar, long N, ErrorPolicy policy,
                              std::uint64_t seed = 0);

// Scaled Bernoulli numbers b_k = B_{2k} / (2k)!.

std::vector<Rational> bernoulli_exact(long K);

/// The floating-point realisation of the same recurrence.
std::vector<BinFloat> bernoulli_float(const FloatContext& ctx, long K);

/// sign and 2 (2 pi)^-2k <= |b_k| <= 4 (2 pi)^-2k for 1 <= k < b.size().
bool bernoulli_magnitudes_ok(const std::vector<Rational>& b, std::string* detail = nullptr);

SimulationReport bernoulli_run(const FloatContext& ctx, long K);

// Finite-difference scheme for the 1-d wave equation.

/// Samples sin(pi i / n), i = 1..n-1, rounded to ctx.
std::vector<Rational> wave_sine_init(int n, const FloatContext& ctx, const Rational& scale = 1);

struct WaveOptions {
  /// Cross-check the global errors against lambda * eta up to this order (0 disables).
  int identity_order = 0;
};

/// init holds p_1 .. p_{n-1}; p_0 = p_n = 0.
SimulationReport wave_run(int n, const Rational& a, const std::vector<Rational>& init, const FloatContext& ctx,
                          int K, const WaveOptions& options = {});

/// Nonnegativity check of lambda as a report (one record per time slice).
SimulationReport wave_lambda_report(int n, const Rational& a, int K);

}  // namespace recurbound

#endif  // RECURBOUND_CASESTUDIES_HPP
