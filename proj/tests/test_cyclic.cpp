#include "doctest.h"
#include "oracles.hpp"
#include "recurbound/cyclic.hpp"

using namespace recurbound;

namespace {

CyclicPolySeries random_cyclic(oracle::Gen& gen, int n, int K) {
  CyclicPolySeries f(n, K);
  for (int k = 0; k < K; ++k) {
    for (int i = 0; i < 2 * n; ++i) f.at(i, k) = gen.integer(0, 3) == 0 ? Rational(0) : gen.rational(6);
  }
  return f;
}

}  // namespace

TEST_SUITE("cyclic") {

TEST_CASE("indices wrap modulo 2n") {
  CyclicPolySeries f(3, 2);
  f.at(-1, 1) = 7;
  CHECK(f.at(5, 1) == 7);
  CHECK(f.at(11, 1) == 7);
  CHECK(f.slice(1)[5] == 7);
  CHECK_THROWS(f.set_slice(0, std::vector<Rational>(5)));
}

TEST_CASE("phi acts as the symmetric three-point stencil") {
  const std::vector<Rational> e0{1, 0, 0, 0};
  const Rational a(1, 3);
  const auto p = apply_phi(e0, a);
  CHECK(p == std::vector<Rational>{2 - 2 * a, a, 0, a});
}

TEST_CASE("parallel and serial products agree") {
  oracle::Gen gen(61);
  for (int it = 0; it < 20; ++it) {
    const int n = static_cast<int>(gen.integer(2, 8));
    const int K = static_cast<int>(gen.integer(1, 12));
    const CyclicPolySeries f = random_cyclic(gen, n, K), g = random_cyclic(gen, n, K);
    const CyclicPolySeries par = cyclic_mul(f, g);
    CHECK(par == cyclic_mul_serial(f, g));
    // spot check one coefficient against the definition
    const int k = static_cast<int>(gen.integer(0, K - 1));
    const long i = gen.integer(0, 2 * n - 1);
    Rational acc = 0;
    for (int kk = 0; kk <= k; ++kk) {
      for (long j = 0; j < 2 * n; ++j) acc += f.at(j, kk) * g.at(i - j, k - kk);
    }
    CHECK(par.at(i, k) == acc);
  }
}

TEST_CASE("lambda inverts 1 - phi t + t^2") {
  for (const int n : {2, 3, 5}) {
    for (const Rational a : {Rational(1, 4), Rational(1)}) {
      const int K = 16;
      const CyclicPolySeries lambda = wave_lambda(n, a, K);
      CHECK(lambda.at(0, 0) == 1);
      CHECK(lambda.at(1, 0) == 0);
      CHECK(lambda.at(0, 1) == 2 - 2 * a);
      CHECK(lambda.at(1, 1) == a);
      CHECK(lambda.at(-1, 1) == a);

      CyclicPolySeries denom(n, K);
      denom.at(0, 0) = 1;
      denom.at(0, 1) = -(2 - 2 * a);
      denom.at(1, 1) = -a;
      denom.at(-1, 1) = -a;
      if (K > 2) denom.at(0, 2) = 1;
      CyclicPolySeries one(n, K);
      one.at(0, 0) = 1;
      CHECK(cyclic_mul(lambda, denom) == one);
    }
  }
  CHECK_THROWS(wave_lambda(4, Rational(0), 8));
  CHECK_THROWS(wave_lambda(4, Rational(3, 2), 8));
}

TEST_CASE("lambda is nonnegative in the stable range") {
  CHECK(wave_lambda(4, Rational(1, 2), 64).min_coefficient() >= 0);
}

}  // TEST_SUITE
