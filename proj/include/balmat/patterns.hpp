#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "balmat/errors.hpp"

namespace balmat {

// Finite ordered alphabet of single-character symbols.
struct Alphabet {
  std::string symbols;

  Alphabet() = default;
  explicit Alphabet(std::string syms) : symbols(std::move(syms)) {
    if (symbols.empty()) throw invalid_parameter("alphabet must be nonempty");
    for (std::size_t i = 0; i < symbols.size(); ++i)
      for (std::size_t j = i + 1; j < symbols.size(); ++j)
        if (symbols[i] == symbols[j])
          throw invalid_parameter(std::string("duplicate alphabet symbol '") + symbols[i] + "'");
  }

  static Alphabet binary() { return Alphabet("01"); }

  int size() const { return static_cast<int>(symbols.size()); }

  int index(char c) const {
    auto pos = symbols.find(c);
    if (pos == std::string::npos)
      throw invalid_parameter(std::string("symbol '") + c + "' not in alphabet");
    return static_cast<int>(pos);
  }

  bool contains(char c) const { return symbols.find(c) != std::string::npos; }
};

// A pattern is a nonempty contiguous word; a word contains it when it occurs
// as a factor.
inline bool contains_pattern(std::string_view word, std::string_view pattern) {
  if (pattern.empty()) throw invalid_parameter("patterns must be nonempty");
  return word.find(pattern) != std::string_view::npos;
}

inline bool avoids_all(std::string_view word, const std::vector<std::string>& patterns) {
  for (const auto& p : patterns)
    if (contains_pattern(word, p)) return false;
  return true;
}

// Alphabet plus the forbidden horizontal (row) and vertical (column) sets.
struct PatternSystem {
  Alphabet alphabet;
  std::vector<std::string> horizontal;  // H
  std::vector<std::string> vertical;    // V

  PatternSystem() = default;
  PatternSystem(Alphabet a, std::vector<std::string> h, std::vector<std::string> v)
      : alphabet(std::move(a)), horizontal(std::move(h)), vertical(std::move(v)) {
    validate();
  }

  void validate() const {
    for (const auto* set : {&horizontal, &vertical})
      for (const auto& p : *set) {
        if (p.empty()) throw invalid_parameter("patterns must be nonempty");
        for (char c : p)
          if (!alphabet.contains(c))
            throw invalid_parameter("pattern '" + p + "' uses a symbol outside the alphabet");
      }
  }
};

}  // namespace balmat
