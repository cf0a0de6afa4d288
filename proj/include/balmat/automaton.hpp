#pragma once

// Pattern-avoidance machinery: a deterministic automaton over the alphabet
// whose live states are exactly the H-avoiding words (Aho-Corasick with a
// single absorbing dead state), the meta-alphabet of V-avoiding columns, and
// the transfer walk that counts k x n matrices avoiding H in rows and V in
// columns.

#include <map>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <vector>

#include "balmat/bigint.hpp"
#include "balmat/errors.hpp"
#include "balmat/matrix.hpp"
#include "balmat/patterns.hpp"

namespace balmat::automaton {

// Deterministic, total automaton over alphabet indices. State `dead` absorbs;
// every other state accepts. A word is H-avoiding iff it keeps the automaton
// out of `dead`.
struct RowAutomaton {
  static constexpr int dead = -1;
  int alphabet_size = 0;
  std::vector<std::vector<int>> next;  // [state][symbol] -> state or dead

  int start() const { return 0; }
  int states() const { return static_cast<int>(next.size()); }

  int step(int state, int symbol) const {
    if (state == dead) return dead;
    return next[state][symbol];
  }

  bool accepts(const Alphabet& a, std::string_view word) const {
    int s = start();
    for (char c : word) {
      s = step(s, a.index(c));
      if (s == dead) return false;
    }
    return true;
  }
};

// Classic multi-pattern construction: trie of pattern prefixes with failure
// links; nodes at or past a full match collapse into the dead state.
inline RowAutomaton build_row_automaton(const Alphabet& alphabet,
                                        const std::vector<std::string>& patterns) {
  const int sigma = alphabet.size();
  struct Node {
    std::vector<int> child;
    int fail = 0;
    bool terminal = false;
  };
  std::vector<Node> trie(1, Node{std::vector<int>(sigma, 0), 0, false});
  for (const auto& p : patterns) {
    if (p.empty()) throw invalid_parameter("patterns must be nonempty");
    int cur = 0;
    for (char c : p) {
      int sym = alphabet.index(c);  // throws for symbols outside the alphabet
      if (trie[cur].child[sym] == 0) {
        trie.push_back(Node{std::vector<int>(sigma, 0), 0, false});
        trie[cur].child[sym] = static_cast<int>(trie.size()) - 1;
      }
      cur = trie[cur].child[sym];
    }
    trie[cur].terminal = true;
  }
  // BFS failure links; goto function made total
  std::queue<int> bfs;
  for (int sym = 0; sym < sigma; ++sym) {
    int v = trie[0].child[sym];
    if (v) {
      trie[v].fail = 0;
      bfs.push(v);
    }
  }
  while (!bfs.empty()) {
    int u = bfs.front();
    bfs.pop();
    if (trie[trie[u].fail].terminal) trie[u].terminal = true;
    for (int sym = 0; sym < sigma; ++sym) {
      int v = trie[u].child[sym];
      if (v) {
        trie[v].fail = trie[trie[u].fail].child[sym];
        bfs.push(v);
      } else {
        trie[u].child[sym] = trie[trie[u].fail].child[sym];
      }
    }
  }
  // live nodes keep their BFS discovery order; terminal nodes merge into dead
  std::vector<int> live_id(trie.size(), RowAutomaton::dead);
  int count = 0;
  for (std::size_t i = 0; i < trie.size(); ++i)
    if (!trie[i].terminal) live_id[i] = count++;
  if (trie[0].terminal)
    throw invalid_parameter("a pattern of length zero would forbid every word");
  RowAutomaton out;
  out.alphabet_size = sigma;
  out.next.assign(count, std::vector<int>(sigma, RowAutomaton::dead));
  for (std::size_t i = 0; i < trie.size(); ++i) {
    if (trie[i].terminal) continue;
    for (int sym = 0; sym < sigma; ++sym) {
      int t = trie[i].child[sym];
      out.next[live_id[i]][sym] = trie[t].terminal ? RowAutomaton::dead : live_id[t];
    }
  }
  return out;
}

// All words of length k over the alphabet avoiding every pattern in V,
// lexicographic by alphabet order. Patterns longer than k cannot occur and
// constrain nothing.
inline std::vector<std::string> column_letters(const Alphabet& alphabet,
                                               const std::vector<std::string>& vertical, int k) {
  if (k < 1) throw invalid_parameter("column_letters: k must be >= 1");
  std::vector<std::string> out;
  std::string cur(k, alphabet.symbols[0]);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == k) {
      if (avoids_all(cur, vertical)) out.push_back(cur);
      return;
    }
    for (char c : alphabet.symbols) {
      cur[pos] = c;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  return out;
}

// One row-automaton state per matrix row.
using TransferState = std::vector<int>;

// Advance every row by its symbol of the column letter; nullopt on any dead
// row (the column would create a forbidden horizontal factor).
inline std::optional<TransferState> transfer_step(const RowAutomaton& rows, const Alphabet& a,
                                                  const TransferState& state,
                                                  std::string_view letter) {
  if (letter.size() != state.size())
    throw invalid_parameter("transfer_step: letter height != row count");
  TransferState out(state.size());
  for (std::size_t r = 0; r < state.size(); ++r) {
    out[r] = rows.step(state[r], a.index(letter[r]));
    if (out[r] == RowAutomaton::dead) return std::nullopt;
  }
  return out;
}

// Reachable product states and their transitions under the column alphabet.
struct TransferGraph {
  std::vector<std::string> letters;
  std::vector<std::vector<int>> next;  // [state][letter] -> state or -1
  int start = 0;
  int states() const { return static_cast<int>(next.size()); }
};

inline TransferGraph build_transfer_graph(const PatternSystem& sys, int k) {
  if (k < 1) throw invalid_parameter("build_transfer_graph: k must be >= 1");
  sys.validate();
  RowAutomaton rows = build_row_automaton(sys.alphabet, sys.horizontal);
  TransferGraph g;
  g.letters = column_letters(sys.alphabet, sys.vertical, k);
  std::map<TransferState, int> id;
  std::vector<TransferState> order;
  TransferState init(k, rows.start());
  id[init] = 0;
  order.push_back(init);
  for (std::size_t s = 0; s < order.size(); ++s) {
    TransferState cur = order[s];  // copy: order grows below
    g.next.emplace_back(g.letters.size(), -1);
    for (std::size_t l = 0; l < g.letters.size(); ++l) {
      auto to = transfer_step(rows, sys.alphabet, cur, g.letters[l]);
      if (!to) continue;
      auto [it, inserted] = id.emplace(*to, static_cast<int>(order.size()));
      if (inserted) order.push_back(*to);
      g.next[s][l] = it->second;
    }
  }
  return g;
}

// m_k(n) for n = 1..N: matrices with k rows and n columns, entries in the
// alphabet, rows avoiding H and columns avoiding V.
inline std::vector<Integer> mk_terms(const PatternSystem& sys, int k, int N) {
  if (N < 1) throw invalid_parameter("mk_terms: N must be >= 1");
  TransferGraph g = build_transfer_graph(sys, k);
  std::vector<Integer> weights(g.states());
  weights[g.start] = 1;
  std::vector<Integer> out;
  out.reserve(N);
  for (int n = 1; n <= N; ++n) {
    std::vector<Integer> next(g.states());
    for (int s = 0; s < g.states(); ++s) {
      if (weights[s] == 0) continue;
      for (std::size_t l = 0; l < g.letters.size(); ++l) {
        int t = g.next[s][l];
        if (t >= 0) next[t] += weights[s];
      }
    }
    weights.swap(next);
    Integer total = 0;
    for (const auto& w : weights) total += w;
    out.push_back(total);
  }
  return out;
}

// Adds the chessboard 0-1 mask: entry (i,j) -> entry + i + j (mod 2) with
// 1-based indices. An involution; swaps {010,101}-avoidance with
// {000,111}-avoidance.
inline Matrix01 chessboard_mask(const Matrix01& m) {
  for (auto v : m.a)
    if (v > 1) throw invalid_parameter("chessboard_mask: entries must be 0 or 1");
  Matrix01 out = m;
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) out.at(r, c) = (m.at(r, c) + r + c) & 1;
  return out;
}

}  // namespace balmat::automaton
