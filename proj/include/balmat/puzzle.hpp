#pragma once

// Not-Alone puzzles: balanced 2k x 2k 0-1 grids with 010 and 101 forbidden in
// every row and column, some cells given as clues. Brute-force solving
// filters the full catalog of legal grids; the logic solver applies
// human-style deduction rules and falls back to a case split only when the
// rules stall.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "balmat/balanced_dp.hpp"
#include "balmat/errors.hpp"
#include "balmat/matrix.hpp"
#include "balmat/patterns.hpp"

namespace balmat::puzzle {

inline PatternSystem not_alone_system() {
  return PatternSystem(Alphabet::binary(), {"010", "101"}, {"010", "101"});
}

constexpr int kBlank = -1;

// Square grid of even size; cells are 0, 1 or blank.
struct Grid {
  int size = 0;
  std::vector<std::int8_t> cells;

  Grid() = default;
  explicit Grid(int n) : size(n), cells(static_cast<std::size_t>(n) * n, kBlank) {
    if (n < 2 || n % 2 != 0) throw invalid_parameter("grid size must be even and >= 2");
  }

  std::int8_t get(int r, int c) const { return cells[static_cast<std::size_t>(r) * size + c]; }
  void set(int r, int c, int v) { cells[static_cast<std::size_t>(r) * size + c] = static_cast<std::int8_t>(v); }

  int clue_count() const {
    int n = 0;
    for (auto v : cells) n += v != kBlank;
    return n;
  }

  bool complete() const {
    for (auto v : cells)
      if (v == kBlank) return false;
    return true;
  }

  bool matches(const Matrix01& full) const {
    for (int r = 0; r < size; ++r)
      for (int c = 0; c < size; ++c)
        if (get(r, c) != kBlank && get(r, c) != full.at(r, c)) return false;
    return true;
  }

  static Grid from_full(const Matrix01& m) {
    if (m.rows != m.cols) throw invalid_parameter("puzzle grids are square");
    Grid g(m.rows);
    for (int r = 0; r < m.rows; ++r)
      for (int c = 0; c < m.cols; ++c) g.set(r, c, m.at(r, c));
    return g;
  }

  Matrix01 to_matrix() const {
    if (!complete()) throw invalid_parameter("grid still has blanks");
    Matrix01 m(size, size);
    for (int r = 0; r < size; ++r)
      for (int c = 0; c < size; ++c) m.at(r, c) = static_cast<std::uint8_t>(get(r, c));
    return m;
  }

  // one row per line, characters 0 1 .
  static Grid from_text(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) lines.push_back(line);
    }
    if (lines.empty()) throw invalid_parameter("empty grid text");
    Grid g(static_cast<int>(lines.size()));
    for (int r = 0; r < g.size; ++r) {
      if (static_cast<int>(lines[r].size()) != g.size)
        throw invalid_parameter("grid text is not square");
      for (int c = 0; c < g.size; ++c) {
        char ch = lines[r][c];
        if (ch == '0' || ch == '1')
          g.set(r, c, ch - '0');
        else if (ch == '.')
          g.set(r, c, kBlank);
        else
          throw invalid_parameter(std::string("bad grid character '") + ch + "'");
      }
    }
    return g;
  }

  std::string to_text() const {
    std::string out;
    for (int r = 0; r < size; ++r) {
      for (int c = 0; c < size; ++c) {
        auto v = get(r, c);
        out += v == kBlank ? '.' : static_cast<char>('0' + v);
      }
      out += '\n';
    }
    return out;
  }
};

// Catalog of all legal full grids of the given size, in deterministic order.
inline std::vector<Matrix01> build_catalog(int size) {
  if (size < 2 || size % 2 != 0) throw invalid_parameter("grid size must be even and >= 2");
  return balanced_dp::catalog_full_grids(not_alone_system(), size / 2);
}

inline std::vector<Matrix01> solve_brute(const Grid& g, const std::vector<Matrix01>& catalog,
                                         std::size_t cap = SIZE_MAX) {
  if (!catalog.empty() && (catalog[0].rows != g.size || catalog[0].cols != g.size))
    throw invalid_parameter("catalog size does not match the grid");
  std::vector<Matrix01> out;
  for (const auto& full : catalog) {
    if (g.matches(full)) {
      out.push_back(full);
      if (out.size() >= cap) break;
    }
  }
  return out;
}

struct Deduction {
  int row = 0, col = 0;
  int value = 0;
  std::string rule;
  std::vector<std::pair<int, int>> because;
};

using DeductionTrace = std::vector<Deduction>;

enum class SolveStatus { unique, multiple, none };

struct LogicResult {
  SolveStatus status = SolveStatus::none;
  std::optional<Grid> solution;
  DeductionTrace trace;
  bool used_search = false;  // whether a case split was needed
};

namespace detail {

// legal completions of one full line: balanced words avoiding the line's
// forbidden patterns
inline const std::vector<std::string>& line_words(int size) {
  static std::map<int, std::vector<std::string>> cache;
  auto it = cache.find(size);
  if (it == cache.end()) {
    auto sys = not_alone_system();
    it = cache.emplace(size, balanced_dp::balanced_columns(sys.vertical, size / 2)).first;
  }
  return it->second;
}

struct LineRef {
  bool is_row;
  int index;
  std::pair<int, int> cell(int i) const {
    return is_row ? std::pair{index, i} : std::pair{i, index};
  }
};

inline int get_line(const Grid& g, const LineRef& ln, int i) {
  auto [r, c] = ln.cell(i);
  return g.get(r, c);
}

// Applies R1-R4 on every line until fixpoint. Returns false on contradiction.
inline bool propagate(Grid& g, DeductionTrace& trace) {
  const int n = g.size, half = n / 2;
  const auto& words = line_words(n);
  std::vector<LineRef> lines;
  for (int r = 0; r < n; ++r) lines.push_back({true, r});
  for (int c = 0; c < n; ++c) lines.push_back({false, c});

  auto force = [&](const LineRef& ln, int i, int v, const char* rule,
                   std::vector<std::pair<int, int>> because) {
    auto [r, c] = ln.cell(i);
    g.set(r, c, v);
    trace.push_back({r, c, v, rule, std::move(because)});
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& ln : lines) {
      // R1 neighbors-equal: v _ v would otherwise become v x v = 010/101
      for (int i = 1; i + 1 < n; ++i) {
        int a = get_line(g, ln, i - 1), b = get_line(g, ln, i), c = get_line(g, ln, i + 1);
        if (b == kBlank && a != kBlank && a == c) {
          force(ln, i, a, "neighbors-equal", {ln.cell(i - 1), ln.cell(i + 1)});
          changed = true;
        }
      }
      // R2 edge-propagation: around a v w boundary the runs must extend
      for (int i = 0; i + 1 < n; ++i) {
        int a = get_line(g, ln, i), b = get_line(g, ln, i + 1);
        if (a == kBlank || b == kBlank || a == b) continue;
        if (i + 2 < n && get_line(g, ln, i + 2) == kBlank) {
          force(ln, i + 2, b, "edge-propagation", {ln.cell(i), ln.cell(i + 1)});
          changed = true;
        }
        if (i - 1 >= 0 && get_line(g, ln, i - 1) == kBlank) {
          force(ln, i - 1, a, "edge-propagation", {ln.cell(i), ln.cell(i + 1)});
          changed = true;
        }
      }
      // R3 count rule
      int ones = 0, zeros = 0;
      for (int i = 0; i < n; ++i) {
        int v = get_line(g, ln, i);
        ones += v == 1;
        zeros += v == 0;
      }
      if (ones > half || zeros > half) return false;
      if (ones == half || zeros == half) {
        int fill = ones == half ? 0 : 1;
        std::vector<std::pair<int, int>> because;
        for (int i = 0; i < n; ++i)
          if (get_line(g, ln, i) == (fill ^ 1)) because.push_back(ln.cell(i));
        for (int i = 0; i < n; ++i)
          if (get_line(g, ln, i) == kBlank) {
            force(ln, i, fill, "count", because);
            changed = true;
          }
      }
      // R4 feasibility lookahead against the line's legal completions
      if (ones + zeros < n) {
        std::vector<int> agree(n, -2);  // -2 unseen, -1 disagree, 0/1 agreed value
        bool any = false;
        for (const auto& w : words) {
          bool fits = true;
          for (int i = 0; i < n && fits; ++i) {
            int v = get_line(g, ln, i);
            if (v != kBlank && v != w[i] - '0') fits = false;
          }
          if (!fits) continue;
          any = true;
          for (int i = 0; i < n; ++i) {
            int wv = w[i] - '0';
            if (agree[i] == -2)
              agree[i] = wv;
            else if (agree[i] != wv)
              agree[i] = -1;
          }
        }
        if (!any) return false;
        std::vector<std::pair<int, int>> because;
        for (int i = 0; i < n; ++i)
          if (get_line(g, ln, i) != kBlank) because.push_back(ln.cell(i));
        for (int i = 0; i < n; ++i)
          if (get_line(g, ln, i) == kBlank && agree[i] >= 0) {
            force(ln, i, agree[i], "line-feasibility", because);
            changed = true;
          }
      } else {
        // complete line must itself be legal
        std::string w(n, '0');
        for (int i = 0; i < n; ++i) w[i] = static_cast<char>('0' + get_line(g, ln, i));
        bool legal = false;
        for (const auto& cand : words)
          if (cand == w) {
            legal = true;
            break;
          }
        if (!legal) return false;
      }
    }
  }
  return true;
}

// DFS over the first blank cell; collects up to `cap` solutions.
inline void search(const Grid& g, std::vector<Grid>& found, DeductionTrace& winning_trace,
                   const DeductionTrace& so_far, std::size_t cap) {
  if (found.size() >= cap) return;
  int br = -1, bc = -1;
  for (int r = 0; r < g.size && br < 0; ++r)
    for (int c = 0; c < g.size; ++c)
      if (g.get(r, c) == kBlank) {
        br = r;
        bc = c;
        break;
      }
  if (br < 0) {
    found.push_back(g);
    if (found.size() == 1) winning_trace = so_far;
    return;
  }
  for (int v = 0; v <= 1; ++v) {
    Grid branch = g;
    branch.set(br, bc, v);
    DeductionTrace trace = so_far;
    trace.push_back({br, bc, v, "case-split", {}});
    if (propagate(branch, trace)) search(branch, found, winning_trace, trace, cap);
    if (found.size() >= cap) return;
  }
}

}  // namespace detail

inline LogicResult solve_logic(const Grid& g) {
  LogicResult res;
  Grid work = g;
  if (!detail::propagate(work, res.trace)) {
    res.status = SolveStatus::none;
    return res;
  }
  if (work.complete()) {
    res.status = SolveStatus::unique;
    res.solution = work;
    return res;
  }
  res.used_search = true;
  std::vector<Grid> found;
  DeductionTrace winning;
  detail::search(work, found, winning, res.trace, 2);
  if (found.empty()) {
    res.status = SolveStatus::none;
  } else if (found.size() == 1) {
    res.status = SolveStatus::unique;
    res.solution = found[0];
    res.trace = winning;
  } else {
    res.status = SolveStatus::multiple;
    res.solution = found[0];
  }
  return res;
}

// Deterministic Fisher-Yates; std::shuffle is implementation-defined.
inline void deterministic_shuffle(std::vector<int>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rng() % i]);
}

// Picks a catalog grid by seed, then removes clues in seeded random order,
// keeping a clue only when its removal breaks uniqueness. Stops once the clue
// count reaches `max_clues`.
inline Grid generate(int size, std::uint64_t seed, int max_clues,
                     const std::vector<Matrix01>& catalog) {
  if (catalog.empty()) throw invalid_parameter("generate: empty catalog");
  std::mt19937_64 rng(seed);
  Grid g = Grid::from_full(catalog[rng() % catalog.size()]);
  std::vector<int> order(static_cast<std::size_t>(size) * size);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  deterministic_shuffle(order, rng);
  for (int cell : order) {
    if (g.clue_count() <= max_clues) break;
    int r = cell / size, c = cell % size;
    int saved = g.get(r, c);
    g.set(r, c, kBlank);
    if (solve_brute(g, catalog, 2).size() != 1) g.set(r, c, saved);
  }
  return g;
}

}  // namespace balmat::puzzle
