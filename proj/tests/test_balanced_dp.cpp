#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "balmat/balanced_dp.hpp"

#include "balmat/symfunc.hpp"
#include "oracles.hpp"

using namespace balmat;
using namespace balmat::balanced_dp;

namespace {
const std::vector<std::string> kAlone = {"010", "101"};
PatternSystem not_alone() { return PatternSystem(Alphabet::binary(), kAlone, kAlone); }
PatternSystem unrestricted() { return PatternSystem(Alphabet::binary(), {}, {}); }
}  // namespace

TEST_CASE("balanced_columns enumerates balanced V-avoiding columns") {
  CHECK(balanced_columns(kAlone, 2) == std::vector<std::string>{"0011", "0110", "1001", "1100"});
  CHECK(balanced_columns({}, 1) == std::vector<std::string>{"01", "10"});
  CHECK(balanced_columns({"01"}, 1) == std::vector<std::string>{"10"});
  CHECK(balanced_columns(kAlone, 3).size() == 8);
  CHECK(balanced_columns(kAlone, 4).size() == 18);
  CHECK_THROWS_AS(balanced_columns({}, 0), invalid_parameter);
}

TEST_CASE("balanced_avoid_terms reproduces the 6 x 2n Not-Alone counts") {
  auto stream = balanced_avoid_terms(not_alone(), 3, 6);
  REQUIRE_FALSE(stream.truncated);
  std::vector<Integer> expect = {8, 64, 368, 2776, 25880, 251704};
  CHECK(stream.terms == expect);
}

TEST_CASE("balanced_avoid_terms matches brute force for k <= 2, n <= 2") {
  for (int k = 1; k <= 2; ++k) {
    auto stream = balanced_avoid_terms(not_alone(), k, 2);
    for (int n = 1; n <= 2; ++n)
      CHECK(stream.terms[n - 1] == oracle::count_balanced_enum(k, n, kAlone, kAlone));
    auto plain = balanced_avoid_terms(unrestricted(), k, 2);
    for (int n = 1; n <= 2; ++n)
      CHECK(plain.terms[n - 1] == oracle::count_balanced_enum(k, n));
  }
  // 4 x 2n Not-Alone counts, brute-forced: 4, 16, 64
  auto k2 = balanced_avoid_terms(not_alone(), 2, 3);
  CHECK(k2.terms == std::vector<Integer>{4, 16, 64});
}

TEST_CASE("empty pattern sets specialize to the vanilla balanced counts") {
  for (int k = 1; k <= 3; ++k) {
    auto stream = balanced_avoid_terms(unrestricted(), k, 6);
    auto vanilla = symfunc::bk_terms(k, 6);
    CHECK(stream.terms == vanilla.terms);
  }
}

TEST_CASE("memory budget produces a truncated stream, not an exception") {
  auto stream = balanced_avoid_terms(not_alone(), 3, 6, 4096);
  CHECK(stream.truncated);
  CHECK(stream.terms.size() < 6);
  CHECK(stream.note.find("last completed term") != std::string::npos);
  // whatever was completed is still correct
  std::vector<Integer> expect = {8, 64, 368, 2776, 25880, 251704};
  for (std::size_t i = 0; i < stream.terms.size(); ++i) CHECK(stream.terms[i] == expect[i]);
}

TEST_CASE("alphabet must be binary") {
  PatternSystem tri(Alphabet("abc"), {}, {});
  CHECK_THROWS_AS(balanced_avoid_terms(tri, 2, 2), invalid_parameter);
  CHECK_THROWS_AS(catalog_full_grids(tri, 2), invalid_parameter);
}

TEST_CASE("catalog_full_grids lists every legal grid exactly once") {
  auto grids = catalog_full_grids(not_alone(), 3);
  CHECK(grids.size() == 368);
  auto terms = balanced_avoid_terms(not_alone(), 3, 3);
  CHECK(Integer(grids.size()) == terms.terms[2]);

  // deterministic order, no duplicates
  auto again = catalog_full_grids(not_alone(), 3);
  CHECK(grids == again);
  std::set<std::vector<std::string>> seen;
  for (const auto& g : grids) seen.insert(g.to_rows());
  CHECK(seen.size() == grids.size());
}

TEST_CASE("every catalog grid is balanced and pattern-free") {
  auto grids = catalog_full_grids(not_alone(), 3);
  for (const auto& g : grids) {
    for (int r = 0; r < g.rows; ++r) {
      auto w = g.row_word(r);
      int ones = 0;
      for (char c : w) ones += c == '1';
      CHECK(ones == 3);
      CHECK(oracle::avoids(w, kAlone));
    }
    for (int c = 0; c < g.cols; ++c) {
      auto w = g.col_word(c);
      int ones = 0;
      for (char ch : w) ones += ch == '1';
      CHECK(ones == 3);
      CHECK(oracle::avoids(w, kAlone));
    }
  }
}

TEST_CASE("catalog is closed under complement and reversals") {
  auto grids = catalog_full_grids(not_alone(), 3);
  CHECK(grids.size() % 2 == 0);
  std::set<std::vector<std::string>> index;
  for (const auto& g : grids) index.insert(g.to_rows());
  for (const auto& g : grids) {
    Matrix01 comp = g, lr = g, tb = g;
    for (int r = 0; r < g.rows; ++r)
      for (int c = 0; c < g.cols; ++c) {
        comp.at(r, c) = 1 - g.at(r, c);
        lr.at(r, c) = g.at(r, g.cols - 1 - c);
        tb.at(r, c) = g.at(g.rows - 1 - r, c);
      }
    CHECK(index.count(comp.to_rows()) == 1);
    CHECK(index.count(lr.to_rows()) == 1);
    CHECK(index.count(tb.to_rows()) == 1);
  }
}

TEST_CASE("k=2 catalog brute-force cross-check and column pair structure") {
  auto grids = catalog_full_grids(not_alone(), 2);
  CHECK(Integer(grids.size()) == oracle::count_balanced_enum(2, 2, kAlone, kAlone));

  // in every legal balanced 4 x 2n matrix the (0011)/(1100) columns pair up,
  // as do (0110)/(1001); checked over full catalogs for n <= 3
  for (int n = 2; n <= 3; ++n) {
    // enumerate 4 x 2n legal matrices directly from the DP's own columns
    auto cols = balanced_columns(kAlone, 2);
    std::vector<std::vector<int>> stacks;
    std::vector<int> idx(2 * n, 0);
    auto alone_free = [&](const std::vector<int>& pick) {
      for (int r = 0; r < 4; ++r) {
        std::string w;
        for (int c : pick) w += cols[c][r];
        int ones = 0;
        for (char ch : w) ones += ch == '1';
        if (ones != n || !oracle::avoids(w, kAlone)) return false;
      }
      return true;
    };
    std::function<void(int)> rec = [&](int pos) {
      if (pos == 2 * n) {
        if (alone_free(idx)) stacks.push_back(idx);
        return;
      }
      for (int c = 0; c < 4; ++c) {
        idx[pos] = c;
        rec(pos + 1);
      }
    };
    rec(0);
    auto terms = balanced_avoid_terms(not_alone(), 2, n);
    CHECK(Integer(stacks.size()) == terms.terms[n - 1]);
    for (const auto& pick : stacks) {
      int c0011 = 0, c1100 = 0, c0110 = 0, c1001 = 0;
      for (int c : pick) {
        c0011 += cols[c] == "0011";
        c1100 += cols[c] == "1100";
        c0110 += cols[c] == "0110";
        c1001 += cols[c] == "1001";
      }
      CHECK(c0011 == c1100);
      CHECK(c0110 == c1001);
    }
  }
}

TEST_CASE("catalog budget errors carry the completed count") {
  CHECK_THROWS_AS(catalog_full_grids(not_alone(), 3, 1024), resource_limit);
}
