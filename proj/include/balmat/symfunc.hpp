#pragma once

// Exact counting of balanced 2k x 2n 0-1 matrices: b_k(n) is the coefficient
// of (x_1...x_{2k})^n in e_k(x_1,...,x_{2k})^{2n}. Layers of coefficients of
// e_k^n are built by convolution with the support of e_k, stored on
// weakly-decreasing exponent vectors only (the coefficients are symmetric),
// modulo word-sized primes, and reconstructed by CRT.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <thread>
#include <unordered_map>
#include <vector>

#include "balmat/bigint.hpp"
#include "balmat/errors.hpp"

namespace balmat::symfunc {

using ExponentVector = std::vector<int>;

inline bool is_normalized(const ExponentVector& v) {
  return std::is_sorted(v.rbegin(), v.rend());
}

inline ExponentVector normalized(ExponentVector v) {
  std::sort(v.begin(), v.end(), std::greater<int>());
  return v;
}

// All 0/1 vectors of length 2k with exactly k ones, in lexicographic order.
inline std::vector<ExponentVector> support(int k) {
  if (k < 1) throw invalid_parameter("support: k must be >= 1");
  std::vector<ExponentVector> out;
  ExponentVector cur(2 * k, 0);
  auto rec = [&](auto&& self, int pos, int ones) -> void {
    if (pos == 2 * k) {
      if (ones == k) out.push_back(cur);
      return;
    }
    int slots = 2 * k - pos;
    if (ones > k || ones + slots < k) return;
    cur[pos] = 0;
    self(self, pos + 1, ones);
    cur[pos] = 1;
    self(self, pos + 1, ones + 1);
    cur[pos] = 0;
  };
  rec(rec, 0, 0);
  return out;
}

// The valid normalized keys at step n with term budget N: weakly decreasing
// vectors of length 2k, entries <= min(n, N), sum k*n. Provides counting,
// rank and unrank in lexicographic-descending order.
class LayerShape {
 public:
  LayerShape(int k, int n, int budget_N) : k_(k), n_(n), budget_(budget_N) {
    if (k < 1 || n < 0 || budget_N < 1) throw invalid_parameter("LayerShape: bad parameters");
    len_ = 2 * k;
    cap_ = std::min(n, budget_N);
    sum_ = k * n;
    if (sum_ > len_ * cap_)
      throw invalid_parameter("LayerShape: no valid keys (budget too small)");
    // wd_[m][c][s]: weakly decreasing vectors of length m, entries <= c, sum s
    wd_.assign(static_cast<std::size_t>(len_ + 1) * (cap_ + 1) * (sum_ + 1), 0);
    for (int c = 0; c <= cap_; ++c) at(0, c, 0) = 1;
    for (int m = 1; m <= len_; ++m)
      for (int c = 0; c <= cap_; ++c)
        for (int s = 0; s <= sum_; ++s) {
          std::uint64_t v = c > 0 ? at(m, c - 1, s) : 0;
          if (c > 0 && s >= c) v += at(m - 1, c, s - c);
          if (c == 0) v = (s == 0) ? 1 : 0;
          at(m, c, s) = v;
          if (v > (1ull << 62)) throw resource_limit("LayerShape: key count exceeds 2^62", 0);
        }
  }

  int k() const { return k_; }
  int n() const { return n_; }
  int budget() const { return budget_; }
  int cap() const { return cap_; }
  int length() const { return len_; }
  int key_sum() const { return sum_; }

  std::uint64_t count() const { return at(len_, cap_, sum_); }

  bool valid(const ExponentVector& v) const {
    if (static_cast<int>(v.size()) != len_) return false;
    long s = 0;
    for (int i = 0; i < len_; ++i) {
      if (v[i] < 0 || v[i] > cap_) return false;
      if (i > 0 && v[i] > v[i - 1]) return false;
      s += v[i];
    }
    return s == sum_;
  }

  std::uint64_t rank(const ExponentVector& v) const {
    if (!valid(v)) throw invalid_parameter("rank: vector violates layer invariants");
    std::uint64_t r = 0;
    int prev = cap_, rem = sum_;
    for (int i = 0; i < len_; ++i) {
      int tail = len_ - 1 - i;
      int hi = std::min(prev, rem);
      for (int e = v[i] + 1; e <= hi; ++e)
        if (rem - e <= tail * e) r += at(tail, e, rem - e);
      prev = v[i];
      rem -= v[i];
    }
    return r;
  }

  ExponentVector unrank(std::uint64_t r) const {
    if (r >= count()) throw invalid_parameter("unrank: rank out of range");
    ExponentVector v(len_);
    int prev = cap_, rem = sum_;
    for (int i = 0; i < len_; ++i) {
      int tail = len_ - 1 - i;
      for (int e = std::min(prev, rem);; --e) {
        std::uint64_t c = (rem - e <= tail * e) ? at(tail, e, rem - e) : 0;
        if (r < c) {
          v[i] = e;
          prev = e;
          rem -= e;
          break;
        }
        r -= c;
        if (e == 0) throw invalid_parameter("unrank: internal inconsistency");
      }
    }
    return v;
  }

 private:
  std::uint64_t& at(int m, int c, int s) {
    return wd_[(static_cast<std::size_t>(m) * (cap_ + 1) + c) * (sum_ + 1) + s];
  }
  std::uint64_t at(int m, int c, int s) const {
    return wd_[(static_cast<std::size_t>(m) * (cap_ + 1) + c) * (sum_ + 1) + s];
  }

  int k_, n_, budget_, len_, cap_, sum_;
  std::vector<std::uint64_t> wd_;
};

// Coefficients of e_k^n modulo one prime, keyed by normalized exponent
// vectors (by rank). Dense while the key count fits the byte budget.
struct CoeffLayer {
  int k = 0;
  int n = 0;
  int budget_N = 0;
  std::uint64_t prime = 0;
  std::shared_ptr<const LayerShape> shape;
  bool dense = true;
  std::vector<std::uint64_t> dense_table;
  std::unordered_map<std::uint64_t, std::uint64_t> sparse_table;

  std::uint64_t at_rank(std::uint64_t r) const {
    if (dense) return dense_table[r];
    auto it = sparse_table.find(r);
    return it == sparse_table.end() ? 0 : it->second;
  }

  std::uint64_t at(const ExponentVector& v) const { return at_rank(shape->rank(v)); }
};

struct Options {
  std::size_t dense_budget_bytes = std::size_t(512) << 20;
  int threads = 1;
};

inline CoeffLayer initial_layer(int k, int budget_N, std::uint64_t prime,
                                const Options& opts = {}) {
  if (k < 1) throw invalid_parameter("initial_layer: k must be >= 1");
  CoeffLayer layer;
  layer.k = k;
  layer.n = 0;
  layer.budget_N = budget_N;
  layer.prime = prime;
  layer.shape = std::make_shared<LayerShape>(k, 0, budget_N);
  layer.dense = true;
  (void)opts;
  layer.dense_table.assign(1, 1 % prime);  // the zero vector, coefficient 1
  return layer;
}

// One multiplication by e_k: c_n(a) = sum over support s of c_{n-1}(a - s),
// where out-of-range arguments contribute 0.
inline CoeffLayer step_layer(const CoeffLayer& prev, const std::vector<ExponentVector>& sup,
                             const Options& opts = {}) {
  if (sup.empty() || static_cast<int>(sup[0].size()) != 2 * prev.k)
    throw invalid_parameter("step_layer: support does not match layer k");
  CoeffLayer out;
  out.k = prev.k;
  out.n = prev.n + 1;
  out.budget_N = prev.budget_N;
  out.prime = prev.prime;
  out.shape = std::make_shared<LayerShape>(prev.k, out.n, prev.budget_N);
  const LayerShape& shape = *out.shape;
  const LayerShape& prev_shape = *prev.shape;
  const std::uint64_t total = shape.count();
  const int len = shape.length();
  const int prev_cap = prev_shape.cap();
  const std::uint64_t p = prev.prime;

  out.dense = total * 8 <= opts.dense_budget_bytes;
  if (out.dense) out.dense_table.assign(total, 0);

  auto compute = [&](std::uint64_t r) -> std::uint64_t {
    ExponentVector v = shape.unrank(r);
    ExponentVector w(len);
    std::uint64_t acc = 0;
    for (const auto& s : sup) {
      bool ok = true;
      for (int i = 0; i < len; ++i) {
        int x = v[i] - s[i];
        if (x < 0 || x > prev_cap) {
          ok = false;
          break;
        }
        w[i] = x;
      }
      if (!ok) continue;
      ExponentVector ws = w;
      // v was weakly decreasing and s is 0/1, so ws is nearly sorted
      for (int i = 1; i < len; ++i) {
        int key = ws[i], j = i - 1;
        while (j >= 0 && ws[j] < key) {
          ws[j + 1] = ws[j];
          --j;
        }
        ws[j + 1] = key;
      }
      acc += prev.at_rank(prev_shape.rank(ws));
      if (acc >= p) acc -= p;
    }
    return acc;
  };

  int threads = std::max(1, opts.threads);
  if (threads == 1 || total < 1024) {
    if (out.dense) {
      for (std::uint64_t r = 0; r < total; ++r) out.dense_table[r] = compute(r);
    } else {
      out.sparse_table.reserve(total);
      for (std::uint64_t r = 0; r < total; ++r) {
        std::uint64_t c = compute(r);
        if (c) out.sparse_table.emplace(r, c);
      }
    }
  } else {
    std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> partial(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        std::uint64_t lo = total * t / threads, hi = total * (t + 1) / threads;
        if (out.dense) {
          for (std::uint64_t r = lo; r < hi; ++r) out.dense_table[r] = compute(r);
        } else {
          for (std::uint64_t r = lo; r < hi; ++r) {
            std::uint64_t c = compute(r);
            if (c) partial[t].emplace_back(r, c);
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (!out.dense) {
      out.sparse_table.reserve(total);
      for (auto& chunk : partial)
        for (auto& [r, c] : chunk) out.sparse_table.emplace(r, c);
    }
  }
  return out;
}

// Residues of b_k(1), ..., b_k(N) modulo one prime: run 2N layer steps and
// read off the coefficient of (x_1...x_{2k})^m after each even step 2m.
inline std::vector<std::uint64_t> bk_terms_mod(int k, int N, std::uint64_t prime,
                                               const Options& opts = {}) {
  if (k < 1) throw invalid_parameter("bk_terms_mod: k must be >= 1");
  if (N < 1) throw invalid_parameter("bk_terms_mod: N must be >= 1");
  auto sup = support(k);
  CoeffLayer layer = initial_layer(k, N, prime, opts);
  std::vector<std::uint64_t> out;
  out.reserve(N);
  for (int n = 1; n <= 2 * N; ++n) {
    layer = step_layer(layer, sup, opts);
    if (n % 2 == 0) out.push_back(layer.at(ExponentVector(2 * k, n / 2)));
  }
  return out;
}

struct PrimeBasis {
  std::vector<std::uint64_t> primes;  // decreasing
  Integer bound;                      // binomial(2k,k)^{2N}
};

// Largest primes below 2^62, enough that their product exceeds the trivial
// bound binomial(2k,k)^{2N} >= b_k(N).
inline PrimeBasis primes_needed(int k, int N) {
  if (k < 1 || N < 1) throw invalid_parameter("primes_needed: k and N must be >= 1");
  PrimeBasis basis;
  basis.bound = ipow(binomial(2 * k, k), 2 * static_cast<unsigned>(N));
  Integer product = 1;
  std::uint64_t candidate = (std::uint64_t(1) << 62) - 1;
  while (product <= basis.bound) {
    while (!is_prime_u64(candidate)) candidate -= 2;
    basis.primes.push_back(candidate);
    product *= candidate;
    candidate -= 2;
  }
  return basis;
}

// Unique x in [0, prod primes) with x = residues[i] mod primes[i].
inline Integer crt_combine(const std::vector<std::uint64_t>& residues,
                           const std::vector<std::uint64_t>& primes) {
  if (residues.size() != primes.size())
    throw invalid_parameter("crt_combine: residue/prime count mismatch");
  if (primes.empty()) throw invalid_parameter("crt_combine: empty prime list");
  for (std::size_t i = 0; i < primes.size(); ++i)
    for (std::size_t j = i + 1; j < primes.size(); ++j)
      if (primes[i] == primes[j]) throw invalid_parameter("crt_combine: duplicate prime");
  Integer x = residues[0] % primes[0];
  Integer modulus = primes[0];
  for (std::size_t i = 1; i < primes.size(); ++i) {
    Integer p = primes[i];
    Integer r = residues[i] % primes[i];
    // t = (r - x) * modulus^{-1} mod p  (p prime, modulus not divisible by p)
    Integer t = ((r - x) % p + p) % p;
    Integer inv = boost::multiprecision::powm(modulus % p, p - 2, p);
    t = (t * inv) % p;
    x += modulus * t;
    modulus *= p;
  }
  return x;
}

struct CountSequence {
  int k = 0;
  std::vector<Integer> terms;  // b_k(1), ..., b_k(N)
};

inline CountSequence bk_terms(int k, int N, const Options& opts = {}) {
  PrimeBasis basis = primes_needed(k, N);
  const std::size_t np = basis.primes.size();
  std::vector<std::vector<std::uint64_t>> residues(np);
  int threads = std::max(1, opts.threads);
  if (threads == 1 || np == 1) {
    Options inner = opts;
    for (std::size_t i = 0; i < np; ++i) residues[i] = bk_terms_mod(k, N, basis.primes[i], inner);
  } else {
    // distinct primes run concurrently; each stream single-threaded
    Options inner = opts;
    inner.threads = 1;
    std::vector<std::thread> pool;
    std::size_t width = std::min<std::size_t>(threads, np);
    for (std::size_t t = 0; t < width; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < np; i += width)
          residues[i] = bk_terms_mod(k, N, basis.primes[i], inner);
      });
    }
    for (auto& th : pool) th.join();
  }
  CountSequence seq;
  seq.k = k;
  seq.terms.reserve(N);
  for (int m = 0; m < N; ++m) {
    std::vector<std::uint64_t> rs(np);
    for (std::size_t i = 0; i < np; ++i) rs[i] = residues[i][m];
    seq.terms.push_back(crt_combine(rs, basis.primes));
  }
  return seq;
}

// Number of distinct permutations of a normalized key, mod p.
inline std::uint64_t key_multiplicity_mod(const ExponentVector& v, std::uint64_t p) {
  Integer mult = 1;
  for (std::size_t i = 1; i <= v.size(); ++i) mult *= i;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    for (std::size_t r = 1; r <= j - i; ++r) mult /= r;
    i = j;
  }
  return static_cast<std::uint64_t>(mult % p);
}

// sum over all exponent vectors of c_n(a) mod p; must equal
// binomial(2k,k)^n mod p because e_k(1,...,1) = binomial(2k,k).
inline std::uint64_t layer_coefficient_sum(const CoeffLayer& layer) {
  const LayerShape& shape = *layer.shape;
  const std::uint64_t p = layer.prime;
  unsigned __int128 acc = 0;
  for (std::uint64_t r = 0; r < shape.count(); ++r) {
    std::uint64_t c = layer.at_rank(r);
    if (!c) continue;
    std::uint64_t m = key_multiplicity_mod(shape.unrank(r), p);
    acc += static_cast<unsigned __int128>(c) * m % p;
  }
  return static_cast<std::uint64_t>(acc % p);
}

}  // namespace balmat::symfunc
