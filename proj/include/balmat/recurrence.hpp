#pragma once

// Linear recurrences with constant (C-finite) and polynomial (P-recursive)
// coefficients: guessing from terms by exact nullspace computation, exact
// verification, unrolling, and rational generating functions. No floating
// point anywhere; everything is big-integer / big-rational arithmetic.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "balmat/bigint.hpp"
#include "balmat/errors.hpp"

namespace balmat::recurrence {

using Poly = std::vector<Rational>;  // ascending coefficients

inline void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline bool poly_is_zero(const Poly& p) {
  for (const auto& c : p)
    if (c != 0) return false;
  return true;
}

inline Rational poly_eval(const Poly& p, long n) {
  Rational v = 0;
  for (std::size_t j = p.size(); j-- > 0;) v = v * n + p[j];
  return v;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// sum_{i=0}^{L} c_i a(n+i) = 0 with constant rational coefficients, c_L != 0.
struct CFiniteRecurrence {
  std::vector<Rational> coeffs;
  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

// sum_{i=0}^{L} p_i(n) a(n+i) = 0 with polynomial coefficients, p_L not
// identically zero.
struct PolyRecurrence {
  std::vector<Poly> coeffs;
  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  int degree() const {
    std::size_t d = 0;
    for (const auto& p : coeffs) {
      Poly t = p;
      poly_trim(t);
      if (!t.empty()) d = std::max(d, t.size() - 1);
    }
    return static_cast<int>(d);
  }
};

inline PolyRecurrence to_poly_recurrence(const CFiniteRecurrence& rec) {
  PolyRecurrence out;
  for (const auto& c : rec.coeffs) out.coeffs.push_back(Poly{c});
  return out;
}

// Scales so all coefficients are integers with overall content 1 and the
// leading polynomial's leading coefficient is positive.
inline void normalize_primitive(PolyRecurrence& rec) {
  Integer lcm_den = 1;
  for (const auto& p : rec.coeffs)
    for (const auto& c : p) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(c));
  Integer content = 0;
  for (auto& p : rec.coeffs)
    for (auto& c : p) {
      c *= lcm_den;
      content = boost::multiprecision::gcd(content, numerator(c));
    }
  if (content == 0) return;
  for (auto& p : rec.coeffs)
    for (auto& c : p) c /= Rational(content);
  Poly lead = rec.coeffs.back();
  poly_trim(lead);
  if (!lead.empty() && lead.back() < 0)
    for (auto& p : rec.coeffs)
      for (auto& c : p) c = -c;
}

// Equal coefficient vectors up to one overall rational factor.
inline bool proportional(const PolyRecurrence& a, const PolyRecurrence& b) {
  if (a.order() != b.order()) return false;
  Rational ratio = 0;
  std::size_t deg = 0;
  for (int i = 0; i <= a.order(); ++i)
    deg = std::max({deg, a.coeffs[i].size(), b.coeffs[i].size()});
  for (int i = 0; i <= a.order(); ++i)
    for (std::size_t j = 0; j < deg; ++j) {
      Rational x = j < a.coeffs[i].size() ? a.coeffs[i][j] : Rational(0);
      Rational y = j < b.coeffs[i].size() ? b.coeffs[i][j] : Rational(0);
      if (x == 0 && y == 0) continue;
      if (x == 0 || y == 0) return false;
      Rational r = y / x;
      if (ratio == 0)
        ratio = r;
      else if (r != ratio)
        return false;
    }
  return ratio != 0;
}

struct VerifyReport {
  bool ok = false;
  long windows_checked = 0;
  long first_failure = -1;  // n of the first failing window, -1 if none
};

// Evaluates sum p_i(n) a(n+i) exactly at every admissible n. `first_index`
// is the n of terms[0].
inline VerifyReport verify_recurrence(const PolyRecurrence& rec, const std::vector<Integer>& terms,
                                      long first_index = 1) {
  Poly lead = rec.coeffs.back();
  poly_trim(lead);
  if (rec.coeffs.empty() || lead.empty())
    throw invalid_parameter("verify_recurrence: leading coefficient is identically zero");
  const int L = rec.order();
  VerifyReport rep;
  if (static_cast<long>(terms.size()) < L + 1) return rep;  // nothing to check
  rep.ok = true;
  for (long w = 0; w + L < static_cast<long>(terms.size()); ++w) {
    long n = first_index + w;
    Rational acc = 0;
    for (int i = 0; i <= L; ++i) acc += poly_eval(rec.coeffs[i], n) * Rational(terms[w + i]);
    ++rep.windows_checked;
    if (acc != 0) {
      rep.ok = false;
      rep.first_failure = n;
      return rep;
    }
  }
  return rep;
}

inline VerifyReport verify_recurrence(const CFiniteRecurrence& rec,
                                      const std::vector<Integer>& terms, long first_index = 1) {
  return verify_recurrence(to_poly_recurrence(rec), terms, first_index);
}

struct UnrollResult {
  std::vector<Rational> values;
  bool all_integers = true;
  long first_fractional = -1;  // index n of the first non-integer value
};

// Extends the sequence with a(n+L) = -sum_{i<L} p_i(n) a(n+i) / p_L(n),
// exactly over rationals, to `total_terms` values.
inline UnrollResult unroll(const PolyRecurrence& rec, const std::vector<Integer>& initial,
                           long total_terms, long first_index = 1) {
  const int L = rec.order();
  Poly lead = rec.coeffs.back();
  poly_trim(lead);
  if (lead.empty()) throw invalid_parameter("unroll: leading coefficient is identically zero");
  if (static_cast<long>(initial.size()) < L)
    throw invalid_parameter("unroll: need at least `order` initial terms");
  UnrollResult out;
  for (const auto& v : initial) out.values.emplace_back(v);
  while (static_cast<long>(out.values.size()) < total_terms) {
    long n = first_index + static_cast<long>(out.values.size()) - L;
    Rational den = poly_eval(rec.coeffs[L], n);
    if (den == 0)
      throw singular_point("unroll: leading coefficient vanishes at n = " + std::to_string(n), n);
    Rational acc = 0;
    for (int i = 0; i < L; ++i)
      acc += poly_eval(rec.coeffs[i], n) * out.values[out.values.size() - L + i];
    Rational next = -acc / den;
    if (out.all_integers && denominator(next) != 1) {
      out.all_integers = false;
      out.first_fractional = first_index + static_cast<long>(out.values.size());
    }
    out.values.push_back(next);
  }
  return out;
}

// P(t)/Q(t) with Q(0) != 0.
struct RationalGF {
  Poly num, den;

  // Taylor coefficients t^0 .. t^{count-1}
  std::vector<Rational> series(long count) const {
    std::vector<Rational> f(count, Rational(0));
    for (long d = 0; d < count; ++d) {
      Rational acc = d < static_cast<long>(num.size()) ? num[d] : Rational(0);
      for (std::size_t i = 1; i < den.size() && static_cast<long>(i) <= d; ++i)
        acc -= den[i] * f[d - i];
      f[d] = acc / den[0];
    }
    return f;
  }
};

// Same rational function (pair scaling cancels in P/Q): cross-multiplication.
inline bool same_rational_function(const RationalGF& a, const RationalGF& b) {
  Poly x = poly_mul(a.num, b.den), y = poly_mul(b.num, a.den);
  poly_trim(x);
  poly_trim(y);
  return x == y;
}

// Q(t) from reversed recurrence coefficients; P(t) = Q(t) * series, truncated
// below deg Q + slack. terms[i] is the coefficient of t^{offset+i}; all
// product coefficients beyond the kept range must vanish.
inline RationalGF gf_from_cfinite(const CFiniteRecurrence& rec, const std::vector<Integer>& terms,
                                  long offset = 1, int slack = 1) {
  const int L = rec.order();
  if (L < 1 || rec.coeffs[L] == 0) throw invalid_parameter("gf_from_cfinite: bad recurrence");
  if (terms.empty()) throw invalid_parameter("gf_from_cfinite: no terms");
  RationalGF gf;
  gf.den.resize(L + 1);
  for (int i = 0; i <= L; ++i) gf.den[i] = rec.coeffs[L - i];
  const long top = offset + static_cast<long>(terms.size()) - 1;
  std::vector<Rational> product(top + 1, Rational(0));
  for (long d = 0; d <= top; ++d) {
    Rational acc = 0;
    for (int i = 0; i <= L && i <= d; ++i) {
      long fi = d - i - offset;  // index into terms of the series factor
      if (fi >= 0 && fi < static_cast<long>(terms.size())) acc += gf.den[i] * Rational(terms[fi]);
    }
    product[d] = acc;
  }
  const long keep = L + slack - 1;
  for (long d = keep + 1; d <= top; ++d)
    if (product[d] != 0)
      throw contradiction_error("gf_from_cfinite: recurrence does not reproduce term at t^" +
                                std::to_string(d));
  gf.num.assign(product.begin(), product.begin() + std::min(top, keep) + 1);
  poly_trim(gf.num);
  return gf;
}

// ---- exact linear algebra -------------------------------------------------

namespace linalg {

// Rank of the matrix modulo a word-sized prime (entries reduced on entry).
inline int rank_mod(const std::vector<std::vector<Integer>>& m, std::uint64_t p) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      Integer r = m[i][j] % static_cast<long long>(p);
      if (r < 0) r += static_cast<long long>(p);
      a[i][j] = static_cast<std::uint64_t>(r);
    }
  auto mulmod = [p](std::uint64_t x, std::uint64_t y) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % p);
  };
  auto powmod = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, b);
      b = mulmod(b, b);
      e >>= 1;
    }
    return r;
  };
  int rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows); ++c) {
    std::size_t pivot = rows;
    for (std::size_t i = rank; i < rows; ++i)
      if (a[i][c]) {
        pivot = i;
        break;
      }
    if (pivot == rows) continue;
    std::swap(a[rank], a[pivot]);
    std::uint64_t inv = powmod(a[rank][c], p - 2);
    for (std::size_t j = c; j < cols; ++j) a[rank][j] = mulmod(a[rank][j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == static_cast<std::size_t>(rank) || !a[i][c]) continue;
      std::uint64_t f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        std::uint64_t sub = mulmod(f, a[rank][j]);
        a[i][j] = a[i][j] >= sub ? a[i][j] - sub : a[i][j] + p - sub;
      }
    }
    ++rank;
  }
  return rank;
}

// Nullspace basis over the rationals via fraction-free (Bareiss) forward
// elimination and rational back-substitution.
inline std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Integer>> m) {
  if (m.empty()) return {};
  const std::size_t rows = m.size(), cols = m[0].size();
  std::vector<std::size_t> pivot_col;
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        pr = i;
        break;
      }
    if (pr == rows) continue;
    std::swap(m[r], m[pr]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer t = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        m[i][j] = t / prev;  // exact (Bareiss)
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> x(cols, Rational(0));
    x[f] = 1;
    for (std::size_t pi = pivot_col.size(); pi-- > 0;) {
      std::size_t pc = pivot_col[pi];
      Rational acc = 0;
      for (std::size_t j = 0; j < cols; ++j)
        if (j != pc && x[j] != 0 && m[pi][j] != 0) acc += Rational(m[pi][j]) * x[j];
      x[pc] = -acc / Rational(m[pi][pc]);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace linalg

// ---- guessing -------------------------------------------------------------

template <typename Rec>
struct GuessReport {
  std::optional<Rec> recurrence;
  long terms_supplied = 0;
  long terms_used = 0;          // prefix consumed by fitting
  long held_out_validated = 0;  // terms never touched by the solve
  long unknowns = 0;            // ansatz size of the successful (or last) cell
  std::string status;
};

namespace detail {

constexpr std::uint64_t kScreenPrime = 4611686018427387847ull;  // below 2^62

// Primes for the multi-prime solve, descending from 2^62.
inline const std::vector<std::uint64_t>& solver_primes() {
  static const std::vector<std::uint64_t> primes = [] {
    std::vector<std::uint64_t> out;
    std::uint64_t candidate = (std::uint64_t(1) << 62) - 1;
    while (out.size() < 48) {
      while (!is_prime_u64(candidate)) candidate -= 2;
      out.push_back(candidate);
      candidate -= 2;
    }
    return out;
  }();
  return primes;
}

// Nullspace vector of an F x u system mod p when the modular nullspace is
// exactly one-dimensional, normalized so its first nonzero coordinate is 1.
inline std::optional<std::vector<std::uint64_t>> modular_nullspace_vector(
    const std::vector<std::vector<Integer>>& rows, std::size_t fit, std::uint64_t p) {
  const std::size_t u = rows[0].size();
  std::vector<std::vector<std::uint64_t>> a(fit, std::vector<std::uint64_t>(u));
  for (std::size_t i = 0; i < fit; ++i)
    for (std::size_t j = 0; j < u; ++j) {
      Integer r = rows[i][j] % static_cast<long long>(p);
      if (r < 0) r += static_cast<long long>(p);
      a[i][j] = static_cast<std::uint64_t>(r);
    }
  auto mulmod = [p](std::uint64_t x, std::uint64_t y) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % p);
  };
  auto powmod = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, b);
      b = mulmod(b, b);
      e >>= 1;
    }
    return r;
  };
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < u && rank < fit; ++c) {
    std::size_t pr = fit;
    for (std::size_t i = rank; i < fit; ++i)
      if (a[i][c]) {
        pr = i;
        break;
      }
    if (pr == fit) continue;
    std::swap(a[rank], a[pr]);
    std::uint64_t inv = powmod(a[rank][c], p - 2);
    for (std::size_t j = c; j < u; ++j) a[rank][j] = mulmod(a[rank][j], inv);
    for (std::size_t i = 0; i < fit; ++i) {
      if (i == rank || !a[i][c]) continue;
      std::uint64_t f = a[i][c];
      for (std::size_t j = c; j < u; ++j) {
        std::uint64_t sub = mulmod(f, a[rank][j]);
        a[i][j] = a[i][j] >= sub ? a[i][j] - sub : a[i][j] + p - sub;
      }
    }
    pivot_col.push_back(c);
    ++rank;
  }
  if (rank != u - 1) return std::nullopt;  // dim != 1 mod p
  std::size_t free_col = 0;
  std::vector<bool> is_pivot(u, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  while (free_col < u && is_pivot[free_col]) ++free_col;
  std::vector<std::uint64_t> x(u, 0);
  x[free_col] = 1;
  for (std::size_t pi = 0; pi < pivot_col.size(); ++pi) {
    // rows are reduced: x[pivot] = -a[pi][free_col]
    std::uint64_t v = a[pi][free_col];
    x[pivot_col[pi]] = v ? p - v : 0;
  }
  std::size_t lead = 0;
  while (lead < u && x[lead] == 0) ++lead;
  if (lead == u) return std::nullopt;
  std::uint64_t inv = powmod(x[lead], p - 2);
  for (auto& v : x) v = mulmod(v, inv);
  return x;
}

// Wang's rational reconstruction: a/b with |a|, b <= sqrt(M/2) congruent to
// r mod M.
inline std::optional<Rational> rational_reconstruct(const Integer& r, const Integer& M) {
  Integer bound = boost::multiprecision::sqrt(Integer(M / 2));
  Integer v0 = M, v1 = r % M;
  Integer t0 = 0, t1 = 1;
  while (v1 > bound) {
    Integer q = v0 / v1;
    Integer v2 = v0 - q * v1;
    Integer t2 = t0 - q * t1;
    v0 = v1;
    v1 = v2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || boost::multiprecision::abs(t1) > bound) return std::nullopt;
  if (boost::multiprecision::gcd(v1, boost::multiprecision::abs(t1)) != 1) return std::nullopt;
  if (t1 < 0) {  // the two-argument constructor requires a positive denominator
    t1 = -t1;
    v1 = -v1;
  }
  return Rational(v1, t1);
}

inline bool annihilates_rows(const std::vector<std::vector<Integer>>& rows, std::size_t fit,
                             const std::vector<Rational>& x) {
  Integer lcm_den = 1;
  for (const auto& c : x) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(c));
  std::vector<Integer> xi(x.size());
  for (std::size_t j = 0; j < x.size(); ++j)
    xi[j] = numerator(x[j]) * (lcm_den / denominator(x[j]));
  for (std::size_t i = 0; i < fit; ++i) {
    Integer acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (xi[j] != 0) acc += rows[i][j] * xi[j];
    if (acc != 0) return false;
  }
  return true;
}

// Multi-prime modular solve with rational reconstruction; the result is
// checked exactly against every fitted row before it is returned.
inline std::optional<std::vector<Rational>> reconstruct_nullspace_vector(
    const std::vector<std::vector<Integer>>& rows, std::size_t fit) {
  const std::size_t u = rows[0].size();
  Integer modulus = 0;
  std::vector<Integer> residue(u, 0);
  std::size_t lead = u;
  for (std::uint64_t p : solver_primes()) {
    auto xp = modular_nullspace_vector(rows, fit, p);
    if (!xp) continue;  // unlucky prime (or dim mismatch)
    std::size_t this_lead = 0;
    while (this_lead < u && (*xp)[this_lead] == 0) ++this_lead;
    if (lead == u) lead = this_lead;
    if (this_lead != lead) continue;  // normalized at a different coordinate
    if (modulus == 0) {
      modulus = p;
      for (std::size_t j = 0; j < u; ++j) residue[j] = (*xp)[j];
    } else {
      Integer pi = p;
      Integer inv = boost::multiprecision::powm(modulus % pi, pi - 2, pi);
      for (std::size_t j = 0; j < u; ++j) {
        Integer t = (Integer((*xp)[j]) - residue[j]) % pi;
        if (t < 0) t += pi;
        residue[j] = residue[j] + modulus * ((t * inv) % pi);
      }
      modulus *= pi;
    }
    if (modulus <= (std::uint64_t(1) << 62)) continue;  // want at least two primes
    std::vector<Rational> x(u);
    bool ok = true;
    for (std::size_t j = 0; j < u && ok; ++j) {
      auto rec = rational_reconstruct(residue[j], modulus);
      if (!rec)
        ok = false;
      else
        x[j] = *rec;
    }
    if (ok && annihilates_rows(rows, fit, x)) return x;
  }
  return std::nullopt;
}

// Grows the fitted prefix until the nullspace is one-dimensional (or rows run
// out); returns candidate coefficient vectors. Small systems are solved
// fraction-free over the integers; large ones modulo several primes with
// rational reconstruction (verified exactly), falling back to the
// fraction-free path if reconstruction fails.
inline std::vector<std::vector<Rational>> fit_candidates(
    const std::vector<std::vector<Integer>>& all_rows, std::size_t unknowns, std::size_t& used) {
  std::size_t fit = std::min(unknowns > 1 ? unknowns - 1 : 1, all_rows.size());
  while (true) {
    int rank = linalg::rank_mod(
        std::vector<std::vector<Integer>>(all_rows.begin(), all_rows.begin() + fit),
        kScreenPrime);
    std::size_t dim_bound = unknowns - static_cast<std::size_t>(rank);
    used = fit;
    if (dim_bound == 0) return {};
    if (dim_bound == 1) {
      if (unknowns > 24)
        if (auto x = reconstruct_nullspace_vector(all_rows, fit)) return {*x};
      std::vector<std::vector<Integer>> prefix(all_rows.begin(), all_rows.begin() + fit);
      return linalg::nullspace(std::move(prefix));
    }
    if (fit == all_rows.size()) {
      // still under-determined: hand back the exact basis of the prefix
      std::vector<std::vector<Integer>> prefix(all_rows.begin(), all_rows.begin() + fit);
      return linalg::nullspace(std::move(prefix));
    }
    fit = std::min(all_rows.size(), fit + dim_bound - 1);
  }
}

}  // namespace detail

// Minimal-order constant-coefficient recurrence, fitted on a prefix of the
// windows and exactly validated on every supplied term. Coefficients are
// normalized so c_L = 1.
inline GuessReport<CFiniteRecurrence> guess_cfinite(const std::vector<Integer>& terms, int Lmax,
                                                    long first_index = 1) {
  if (Lmax < 1) throw invalid_parameter("guess_cfinite: Lmax must be >= 1");
  GuessReport<CFiniteRecurrence> rep;
  rep.terms_supplied = static_cast<long>(terms.size());
  long need = 2L * Lmax + 5;
  if (rep.terms_supplied < need)
    throw needs_more_data("guess_cfinite: need at least " + std::to_string(need) + " terms, got " +
                              std::to_string(terms.size()),
                          need - rep.terms_supplied);
  for (int L = 1; L <= Lmax; ++L) {
    const long W = rep.terms_supplied - L;
    if (W < L + 2) break;
    std::vector<std::vector<Integer>> rows(W, std::vector<Integer>(L + 1));
    for (long w = 0; w < W; ++w)
      for (int i = 0; i <= L; ++i) rows[w][i] = terms[w + i];
    std::size_t used = 0;
    auto candidates = detail::fit_candidates(rows, L + 1, used);
    for (auto& v : candidates) {
      if (v[L] == 0) continue;
      CFiniteRecurrence rec;
      rec.coeffs = v;
      for (auto& c : rec.coeffs) c /= v[L];
      auto check = verify_recurrence(rec, terms, first_index);
      if (!check.ok) continue;
      rep.recurrence = rec;
      rep.unknowns = L + 1;
      rep.terms_used = static_cast<long>(used) + L;
      rep.held_out_validated = rep.terms_supplied - rep.terms_used;
      rep.status = "order " + std::to_string(L) + " found; fitted on " +
                   std::to_string(rep.terms_used) + " terms, validated on all " +
                   std::to_string(rep.terms_supplied);
      return rep;
    }
  }
  rep.status = "no recurrence of order <= " + std::to_string(Lmax) + " validates on all terms";
  return rep;
}

// First (order, then degree) polynomial-coefficient recurrence that fits a
// prefix and annihilates every supplied term. A word-sized-prime elimination
// screens out hopeless ansatz cells before any exact solve.
inline GuessReport<PolyRecurrence> guess_precursive(const std::vector<Integer>& terms, int Lmax,
                                                    int dmax, long first_index = 1) {
  if (Lmax < 1 || dmax < 0) throw invalid_parameter("guess_precursive: bad ansatz bounds");
  GuessReport<PolyRecurrence> rep;
  rep.terms_supplied = static_cast<long>(terms.size());
  const long ansatz = static_cast<long>(Lmax + 1) * (dmax + 1);
  const long need = ansatz + 10;
  if (rep.terms_supplied < need)
    throw needs_more_data("guess_precursive: ansatz has " + std::to_string(ansatz) +
                              " unknowns; need at least " + std::to_string(need) +
                              " terms, got " + std::to_string(terms.size()),
                          need - rep.terms_supplied);
  for (int L = 1; L <= Lmax; ++L) {
    const long W = rep.terms_supplied - L;
    for (int d = 0; d <= dmax; ++d) {
      const long u = static_cast<long>(L + 1) * (d + 1);
      if (W < u) continue;  // cannot even reach a one-dimensional fit
      std::vector<std::vector<Integer>> rows(W, std::vector<Integer>(u));
      for (long w = 0; w < W; ++w) {
        long n = first_index + w;
        Integer npow = 1;
        for (int j = 0; j <= d; ++j) {
          for (int i = 0; i <= L; ++i) rows[w][i * (d + 1) + j] = npow * terms[w + i];
          npow *= n;
        }
      }
      if (linalg::rank_mod(rows, detail::kScreenPrime) == static_cast<int>(u)) continue;
      std::size_t used = 0;
      auto candidates = detail::fit_candidates(rows, u, used);
      for (auto& v : candidates) {
        PolyRecurrence rec;
        rec.coeffs.assign(L + 1, Poly(d + 1, Rational(0)));
        for (int i = 0; i <= L; ++i)
          for (int j = 0; j <= d; ++j) rec.coeffs[i][j] = v[i * (d + 1) + j];
        Poly lead = rec.coeffs.back();
        poly_trim(lead);
        if (lead.empty()) continue;  // effective order below L
        normalize_primitive(rec);
        auto check = verify_recurrence(rec, terms, first_index);
        if (!check.ok) continue;
        rep.recurrence = rec;
        rep.unknowns = u;
        rep.terms_used = static_cast<long>(used) + L;
        rep.held_out_validated = rep.terms_supplied - rep.terms_used;
        rep.status = "order " + std::to_string(L) + ", degree " + std::to_string(d) + " (" +
                     std::to_string(u) + " unknowns); fitted on " + std::to_string(rep.terms_used) +
                     " terms, validated on all " + std::to_string(rep.terms_supplied);
        return rep;
      }
    }
  }
  rep.status = "no recurrence with order <= " + std::to_string(Lmax) + ", degree <= " +
               std::to_string(dmax) + " validates on all terms";
  return rep;
}

}  // namespace balmat::recurrence
