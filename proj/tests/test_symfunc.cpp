#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "balmat/symfunc.hpp"

#include <cstdint>

#include "oracles.hpp"

using namespace balmat;
using namespace balmat::symfunc;

namespace {
std::vector<Integer> to_integers(const std::vector<std::uint64_t>& v) {
  return std::vector<Integer>(v.begin(), v.end());
}
}  // namespace

TEST_CASE("support enumerates balanced 0/1 vectors in lex order") {
  auto s1 = support(1);
  REQUIRE(s1.size() == 2);
  CHECK(s1[0] == ExponentVector{0, 1});
  CHECK(s1[1] == ExponentVector{1, 0});

  auto s2 = support(2);
  CHECK(s2.size() == 6);
  CHECK(std::find(s2.begin(), s2.end(), ExponentVector{1, 1, 0, 0}) != s2.end());
  CHECK(std::find(s2.begin(), s2.end(), ExponentVector{0, 1, 1, 0}) != s2.end());
  for (const auto& v : s2) {
    int sum = 0;
    for (int x : v) sum += x;
    CHECK(sum == 2);
  }
  CHECK(std::is_sorted(s2.begin(), s2.end()));

  CHECK(support(3).size() == 20);
  CHECK_THROWS_AS(support(0), invalid_parameter);
  CHECK_THROWS_AS(support(-2), invalid_parameter);
}

TEST_CASE("rank and unrank are inverse bijections in lex-descending order") {
  LayerShape tiny(1, 2, 2);
  REQUIRE(tiny.count() == 2);
  CHECK(tiny.rank({2, 0}) == 0);
  CHECK(tiny.rank({1, 1}) == 1);
  CHECK(tiny.unrank(0) == ExponentVector{2, 0});
  CHECK(tiny.unrank(1) == ExponentVector{1, 1});

  LayerShape shape(2, 3, 3);
  for (std::uint64_t r = 0; r < shape.count(); ++r) {
    auto v = shape.unrank(r);
    CHECK(shape.valid(v));
    CHECK(shape.rank(v) == r);
  }
  // strictly decreasing lexicographic order
  for (std::uint64_t r = 1; r < shape.count(); ++r) CHECK(shape.unrank(r - 1) > shape.unrank(r));

  LayerShape single(2, 1, 10);
  CHECK(single.count() == 1);
  CHECK(single.unrank(0) == ExponentVector{1, 1, 0, 0});

  CHECK_THROWS_AS(shape.rank({5, 1, 0, 0}), invalid_parameter);       // entry above cap
  CHECK_THROWS_AS(shape.rank({1, 2, 2, 1}), invalid_parameter);       // not weakly decreasing
  CHECK_THROWS_AS(shape.rank({2, 2, 1, 0}), invalid_parameter);       // wrong sum
  CHECK_THROWS_AS(shape.unrank(shape.count()), invalid_parameter);    // out of range
}

TEST_CASE("step_layer implements the e_k convolution with boundary conditions") {
  const std::uint64_t p = 1000000007ull;
  auto sup1 = support(1);
  auto layer0 = initial_layer(1, 4, p);
  auto layer1 = step_layer(layer0, sup1);
  CHECK(layer1.at({1, 0}) == 1);
  auto layer2 = step_layer(layer1, sup1);
  CHECK(layer2.at({1, 1}) == 2);
  CHECK(layer2.at({2, 0}) == 1);

  auto sup2 = support(2);
  auto l0 = initial_layer(2, 4, p);
  auto l1 = step_layer(l0, sup2);
  auto l2 = step_layer(l1, sup2);
  CHECK(l2.at({1, 1, 1, 1}) == 6);  // b_2(1)

  CHECK_THROWS_AS(step_layer(l1, sup1), invalid_parameter);  // mismatched k
}

TEST_CASE("layer coefficient sums equal binomial(2k,k)^n mod p while n <= N") {
  // the a_i <= N budget prunes keys once n exceeds N, so check within budget
  const std::uint64_t p = 999999999999999989ull;  // below 2^60
  auto sup = support(2);
  auto layer = initial_layer(2, 6, p);
  std::uint64_t expect = 1;
  for (int n = 1; n <= 6; ++n) {
    layer = step_layer(layer, sup);
    expect = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(expect) * 6) % p);
    CHECK(layer_coefficient_sum(layer) == expect);
  }
}

TEST_CASE("homogeneity: every key of layer n sums to k*n") {
  const std::uint64_t p = 1000000007ull;
  auto sup = support(3);
  auto layer = initial_layer(3, 2, p);
  for (int n = 1; n <= 4; ++n) {
    layer = step_layer(layer, sup);
    for (std::uint64_t r = 0; r < layer.shape->count(); ++r) {
      auto v = layer.shape->unrank(r);
      int sum = 0;
      for (int x : v) sum += x;
      CHECK(sum == 3 * n);
    }
  }
}

TEST_CASE("bk_terms_mod emits residues of the even-step central coefficients") {
  const std::uint64_t p = 1000000007ull;
  auto r = bk_terms_mod(2, 4, p);
  CHECK(r == std::vector<std::uint64_t>{6, 90, 1860, 44730});
  auto r1 = bk_terms_mod(1, 3, p);
  CHECK(r1 == std::vector<std::uint64_t>{2, 6, 20});
  CHECK_THROWS_AS(bk_terms_mod(0, 3, p), invalid_parameter);
  CHECK_THROWS_AS(bk_terms_mod(2, 0, p), invalid_parameter);
}

TEST_CASE("primes_needed covers the binomial bound with decreasing 62-bit primes") {
  auto basis = primes_needed(2, 10);
  CHECK(basis.bound == Integer("3656158440062976"));  // 6^20
  CHECK(basis.primes.size() == 1);
  CHECK(basis.primes[0] < (std::uint64_t(1) << 62));
  CHECK(basis.primes[0] > (std::uint64_t(1) << 61));
  CHECK(is_prime_u64(basis.primes[0]));

  auto small = primes_needed(1, 1);
  CHECK(small.bound == 4);
  CHECK(small.primes.size() == 1);

  auto big = primes_needed(4, 30);
  Integer product = 1;
  for (std::size_t i = 0; i < big.primes.size(); ++i) {
    product *= big.primes[i];
    if (i) CHECK(big.primes[i] < big.primes[i - 1]);
    CHECK(is_prime_u64(big.primes[i]));
  }
  CHECK(product > big.bound);
}

TEST_CASE("crt_combine reconstructs integers from residues") {
  CHECK(crt_combine({1, 2}, {3, 5}) == 7);
  CHECK(crt_combine({4, 4, 4}, {11, 13, 17}) == 4);
  CHECK_THROWS_AS(crt_combine({1, 2}, {7, 7}), invalid_parameter);
  CHECK_THROWS_AS(crt_combine({1}, {3, 5}), invalid_parameter);

  Integer b2_10("25989269017140");
  std::uint64_t p1 = 4611686018427387847ull, p2 = 4611686018427387817ull;
  REQUIRE(is_prime_u64(p1));
  REQUIRE(is_prime_u64(p2));
  std::uint64_t r1 = static_cast<std::uint64_t>(b2_10 % p1);
  std::uint64_t r2 = static_cast<std::uint64_t>(b2_10 % p2);
  CHECK(crt_combine({r1, r2}, {p1, p2}) == b2_10);
}

TEST_CASE("bk_terms matches the published k=2 sequence exactly") {
  auto seq = bk_terms(2, 10);
  std::vector<Integer> expect = {
      Integer(6),
      Integer(90),
      Integer(1860),
      Integer(44730),
      Integer(1172556),
      Integer(32496156),
      Integer(936369720),
      Integer("27770358330"),
      Integer("842090474940"),
      Integer("25989269017140"),
  };
  CHECK(seq.k == 2);
  CHECK(seq.terms == expect);
}

TEST_CASE("bk_terms agrees with brute-force enumeration for k <= 2, n <= 3") {
  for (int k = 1; k <= 2; ++k) {
    auto seq = bk_terms(k, 3);
    for (int n = 1; n <= 3; ++n) {
      CHECK(seq.terms[n - 1] == oracle::count_balanced_enum(k, n));
      if (2 * k * 2 * n <= 16) CHECK(seq.terms[n - 1] == oracle::count_balanced_raw(k, n));
    }
  }
  auto k1 = bk_terms(1, 5);
  CHECK(k1.terms == std::vector<Integer>{2, 6, 20, 70, 252});
}

TEST_CASE("bk_terms agrees with the independent row DP and transposition") {
  auto k3 = bk_terms(3, 6);
  for (int n = 1; n <= 6; ++n) CHECK(k3.terms[n - 1] == oracle::row_dp_balanced(3, n));
  auto k4 = bk_terms(4, 3);
  // transposing a balanced 2k x 2n matrix gives a balanced 2n x 2k one
  auto k2 = bk_terms(2, 4);
  CHECK(k4.terms[1] == k2.terms[3]);
  CHECK(k4.terms[2] == bk_terms(3, 4).terms[3]);
}

TEST_CASE("budget consistency: shorter runs are prefixes of longer ones") {
  auto a = bk_terms(2, 4);
  auto b = bk_terms(2, 7);
  for (int i = 0; i < 4; ++i) CHECK(a.terms[i] == b.terms[i]);
}

TEST_CASE("terms respect the trivial upper bound") {
  auto seq = bk_terms(3, 5);
  for (int n = 1; n <= 5; ++n) {
    CHECK(seq.terms[n - 1] > 0);
    CHECK(seq.terms[n - 1] <= ipow(binomial(6, 3), 2 * n));
  }
}

TEST_CASE("prime independence: residues from different primes agree after CRT") {
  std::uint64_t p1 = 4611686018427387847ull, p2 = 4611686018427387817ull,
                p3 = 4611686018427387787ull;
  REQUIRE(is_prime_u64(p3));
  auto r1 = bk_terms_mod(3, 5, p1);
  auto r2 = bk_terms_mod(3, 5, p2);
  auto r3 = bk_terms_mod(3, 5, p3);
  for (int i = 0; i < 5; ++i) {
    Integer combined = crt_combine({r1[i], r2[i]}, {p1, p2});
    CHECK(static_cast<std::uint64_t>(combined % p3) == r3[i]);
  }
}

TEST_CASE("sparse fallback and threading produce identical results") {
  Options dense_opts;
  Options sparse_opts;
  sparse_opts.dense_budget_bytes = 8;  // force the sparse path
  Options threaded_opts;
  threaded_opts.threads = 3;
  auto a = bk_terms_mod(2, 5, 1000000007ull, dense_opts);
  auto b = bk_terms_mod(2, 5, 1000000007ull, sparse_opts);
  auto c = bk_terms_mod(2, 5, 1000000007ull, threaded_opts);
  CHECK(a == b);
  CHECK(a == c);
  Options threaded_crt;
  threaded_crt.threads = 2;
  CHECK(bk_terms(3, 4, threaded_crt).terms == bk_terms(3, 4).terms);
}

TEST_CASE("bk_terms matches the cubic lattice walk formula for k = 2") {
  auto seq = bk_terms(2, 8);
  for (int n = 1; n <= 8; ++n) CHECK(seq.terms[n - 1] == oracle::cubic_lattice_walks(n));
}
