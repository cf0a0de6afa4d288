#pragma once

// Counts balanced 2k x 2n 0-1 matrices avoiding H in every row and V in
// every column: a dynamic program over balanced V-avoiding columns whose
// state is (per-row automaton state, per-row count of ones placed).

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "balmat/automaton.hpp"
#include "balmat/bigint.hpp"
#include "balmat/errors.hpp"
#include "balmat/matrix.hpp"
#include "balmat/patterns.hpp"

namespace balmat::balanced_dp {

// All 0/1 columns of height 2k with exactly k ones avoiding V, lex order.
inline std::vector<std::string> balanced_columns(const std::vector<std::string>& vertical,
                                                 int k) {
  if (k < 1) throw invalid_parameter("balanced_columns: k must be >= 1");
  std::vector<std::string> out;
  std::string cur(2 * k, '0');
  auto rec = [&](auto&& self, int pos, int ones) -> void {
    if (ones > k || ones + (2 * k - pos) < k) return;
    if (pos == 2 * k) {
      if (avoids_all(cur, vertical)) out.push_back(cur);
      return;
    }
    cur[pos] = '0';
    self(self, pos + 1, ones);
    cur[pos] = '1';
    self(self, pos + 1, ones + 1);
    cur[pos] = '0';
  };
  rec(rec, 0, 0);
  return out;
}

struct TermStream {
  std::vector<Integer> terms;
  bool truncated = false;
  std::string note;
};

namespace detail {

struct Key {
  std::uint64_t lo = 0, hi = 0;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    auto mix = [](std::uint64_t x) {
      x += 0x9e3779b97f4a7c15ull;
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
      return x ^ (x >> 31);
    };
    return static_cast<std::size_t>(mix(k.lo) ^ (mix(k.hi) << 1 | mix(k.hi) >> 63));
  }
};

inline int bits_for(int n) {
  int b = 1;
  while ((1 << b) <= n) ++b;
  return b;
}

// Per-row (automaton state, ones placed) packed into 128 bits.
struct Packer {
  int rows, state_bits, sum_bits, stride;

  Packer(int rows_, int states, int max_sum) : rows(rows_) {
    state_bits = bits_for(states);
    sum_bits = bits_for(max_sum);
    stride = state_bits + sum_bits;
    if (rows * stride > 128)
      throw resource_limit("balanced_dp: state key exceeds 128 bits at this size", 0);
  }

  Key pack(const std::vector<int>& states, const std::vector<int>& sums) const {
    Key k;
    for (int r = 0; r < rows; ++r) {
      std::uint64_t field =
          (static_cast<std::uint64_t>(states[r]) << sum_bits) | static_cast<std::uint64_t>(sums[r]);
      int off = r * stride;
      if (off < 64) {
        k.lo |= field << off;
        if (off + stride > 64) k.hi |= field >> (64 - off);
      } else {
        k.hi |= field << (off - 64);
      }
    }
    return k;
  }

  void unpack(const Key& k, std::vector<int>& states, std::vector<int>& sums) const {
    const std::uint64_t field_mask = (stride == 64) ? ~0ull : ((1ull << stride) - 1);
    const std::uint64_t sum_mask = (1ull << sum_bits) - 1;
    for (int r = 0; r < rows; ++r) {
      int off = r * stride;
      std::uint64_t field;
      if (off < 64) {
        field = k.lo >> off;
        if (off + stride > 64) field |= k.hi << (64 - off);
      } else {
        field = k.hi >> (off - 64);
      }
      field &= field_mask;
      sums[r] = static_cast<int>(field & sum_mask);
      states[r] = static_cast<int>(field >> sum_bits);
    }
  }
};

using WeightMap = std::unordered_map<Key, Integer, KeyHash>;

// rough per-entry footprint for the memory cap (node, key, small bigint)
constexpr std::size_t kEntryBytes = 96;

}  // namespace detail

// b_{H,V,k}(n) for n = 1..N over the binary alphabet. Stops early (truncated
// result) instead of exceeding the memory budget.
inline TermStream balanced_avoid_terms(const PatternSystem& sys, int k, int N,
                                       std::size_t memory_budget_bytes = std::size_t(16) << 30) {
  if (k < 1) throw invalid_parameter("balanced_avoid_terms: k must be >= 1");
  if (N < 1) throw invalid_parameter("balanced_avoid_terms: N must be >= 1");
  if (sys.alphabet.size() != 2 || !sys.alphabet.contains('0') || !sys.alphabet.contains('1'))
    throw invalid_parameter("balanced_avoid_terms: alphabet must be {0,1}");
  sys.validate();

  const int rows = 2 * k;
  automaton::RowAutomaton row_auto = automaton::build_row_automaton(sys.alphabet, sys.horizontal);
  std::vector<std::string> letters = balanced_columns(sys.vertical, k);
  // letter bits as symbol indices, row-major
  std::vector<std::vector<int>> letter_sym(letters.size(), std::vector<int>(rows));
  std::vector<std::vector<int>> letter_bit(letters.size(), std::vector<int>(rows));
  for (std::size_t l = 0; l < letters.size(); ++l)
    for (int r = 0; r < rows; ++r) {
      letter_sym[l][r] = sys.alphabet.index(letters[l][r]);
      letter_bit[l][r] = letters[l][r] == '1';
    }

  TermStream out;
  for (int n = 1; n <= N; ++n) {
    detail::Packer packer(rows, row_auto.states(), n);
    detail::WeightMap cur;
    std::vector<int> states(rows, row_auto.start()), sums(rows, 0);
    cur[packer.pack(states, sums)] = 1;
    const int total_cols = 2 * n;
    bool over_budget = false;
    std::vector<int> nstates(rows), nsums(rows);
    for (int col = 0; col < total_cols && !over_budget; ++col) {
      const int remaining_after = total_cols - col - 1;
      detail::WeightMap next;
      next.reserve(cur.size());
      for (const auto& [key, weight] : cur) {
        packer.unpack(key, states, sums);
        for (std::size_t l = 0; l < letters.size(); ++l) {
          bool ok = true;
          for (int r = 0; r < rows; ++r) {
            int s = row_auto.step(states[r], letter_sym[l][r]);
            int ones = sums[r] + letter_bit[l][r];
            // each remaining column can add at most one 1 per row
            if (s == automaton::RowAutomaton::dead || ones > n || n - ones > remaining_after) {
              ok = false;
              break;
            }
            nstates[r] = s;
            nsums[r] = ones;
          }
          if (!ok) continue;
          next[packer.pack(nstates, nsums)] += weight;
        }
        if (next.size() * detail::kEntryBytes > memory_budget_bytes) {
          over_budget = true;
          break;
        }
      }
      cur.swap(next);
    }
    if (over_budget) {
      out.truncated = true;
      out.note = "memory budget reached; last completed term: n = " + std::to_string(n - 1);
      return out;
    }
    Integer total = 0;
    for (const auto& [key, weight] : cur) {
      packer.unpack(key, states, sums);
      bool balanced = true;
      for (int r = 0; r < rows; ++r)
        if (sums[r] != n) {
          balanced = false;
          break;
        }
      if (balanced) total += weight;
    }
    out.terms.push_back(total);
  }
  return out;
}

// Every balanced 2k x 2k grid avoiding H and V, in lexicographic order of the
// column sequence.
inline std::vector<Matrix01> catalog_full_grids(const PatternSystem& sys, int k,
                                                std::size_t memory_budget_bytes = std::size_t(4)
                                                                                  << 30) {
  if (k < 1) throw invalid_parameter("catalog_full_grids: k must be >= 1");
  if (sys.alphabet.size() != 2 || !sys.alphabet.contains('0') || !sys.alphabet.contains('1'))
    throw invalid_parameter("catalog_full_grids: alphabet must be {0,1}");
  sys.validate();

  const int rows = 2 * k, cols = 2 * k, target = k;
  automaton::RowAutomaton row_auto = automaton::build_row_automaton(sys.alphabet, sys.horizontal);
  std::vector<std::string> letters = balanced_columns(sys.vertical, k);
  std::vector<Matrix01> out;
  const std::size_t grid_bytes = static_cast<std::size_t>(rows) * cols + 48;

  std::vector<int> chosen(cols, -1);
  std::vector<std::vector<int>> states(cols + 1, std::vector<int>(rows, row_auto.start()));
  std::vector<std::vector<int>> sums(cols + 1, std::vector<int>(rows, 0));
  auto rec = [&](auto&& self, int col) -> void {
    if (col == cols) {
      Matrix01 g(rows, cols);
      for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) g.at(r, c) = letters[chosen[c]][r] == '1';
      if ((out.size() + 1) * grid_bytes > memory_budget_bytes)
        throw resource_limit("catalog_full_grids: memory budget exceeded",
                             static_cast<long>(out.size()));
      out.push_back(std::move(g));
      return;
    }
    const int remaining_after = cols - col - 1;
    for (std::size_t l = 0; l < letters.size(); ++l) {
      bool ok = true;
      for (int r = 0; r < rows; ++r) {
        int s = row_auto.step(states[col][r], sys.alphabet.index(letters[l][r]));
        int ones = sums[col][r] + (letters[l][r] == '1');
        if (s == automaton::RowAutomaton::dead || ones > target ||
            target - ones > remaining_after) {
          ok = false;
          break;
        }
        states[col + 1][r] = s;
        sums[col + 1][r] = ones;
      }
      if (!ok) continue;
      chosen[col] = static_cast<int>(l);
      self(self, col + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace balmat::balanced_dp
