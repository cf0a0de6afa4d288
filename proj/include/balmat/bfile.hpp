#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "balmat/bigint.hpp"
#include "balmat/errors.hpp"

namespace balmat {

// OEIS b-file: one "index value" pair per line, '#' starts a comment line,
// indices strictly increasing.
struct BFileEntries {
  std::vector<std::pair<long, Integer>> entries;
};

inline BFileEntries parse_bfile(std::istream& in) {
  BFileEntries out;
  std::string line;
  long line_no = 0;
  bool have_prev = false;
  long prev_index = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;  // whitespace-only
    if (line[first] == '#') continue;
    std::istringstream fields(line);
    std::string idx_tok, val_tok, extra;
    if (!(fields >> idx_tok >> val_tok)) throw parse_error("expected two fields", line_no);
    if (fields >> extra) throw parse_error("trailing field '" + extra + "'", line_no);
    long idx;
    try {
      std::size_t used = 0;
      idx = std::stol(idx_tok, &used);
      if (used != idx_tok.size()) throw std::invalid_argument(idx_tok);
    } catch (const std::exception&) {
      throw parse_error("bad index '" + idx_tok + "'", line_no);
    }
    Integer value;
    try {
      value = parse_integer(val_tok);
    } catch (const invalid_parameter&) {
      throw parse_error("bad value '" + val_tok + "'", line_no);
    }
    if (have_prev && idx <= prev_index) throw parse_error("indices not strictly increasing", line_no);
    have_prev = true;
    prev_index = idx;
    out.entries.emplace_back(idx, std::move(value));
  }
  return out;
}

inline std::string format_bfile(const std::vector<Integer>& terms, long first_index = 1) {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    out += std::to_string(first_index + static_cast<long>(i));
    out += ' ';
    out += terms[i].str();
    out += '\n';
  }
  return out;
}

inline std::string format_terms_json(int k, const std::vector<Integer>& terms) {
  std::string out = "{\"k\":" + std::to_string(k) + ",\"terms\":[";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += ',';
    out += '"';
    out += terms[i].str();
    out += '"';
  }
  out += "]}";
  return out;
}

}  // namespace balmat
