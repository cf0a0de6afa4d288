#pragma once

#include <stdexcept>
#include <string>

namespace balmat {

// Bad arguments or malformed domain objects (invalid k, pattern outside the
// alphabet, duplicate CRT primes, ...).
class invalid_parameter : public std::invalid_argument {
 public:
  explicit invalid_parameter(const std::string& what) : std::invalid_argument(what) {}
};

// A computation refused to start or stopped because it would exceed the
// configured memory budget. `completed` names the last fully computed term
// index (0 if none).
class resource_limit : public std::runtime_error {
 public:
  resource_limit(const std::string& what, long completed_terms)
      : std::runtime_error(what), completed(completed_terms) {}
  long completed;
};

// A guesser was handed fewer terms than its ansatz needs.
class needs_more_data : public std::runtime_error {
 public:
  needs_more_data(const std::string& what, long shortfall_terms)
      : std::runtime_error(what), shortfall(shortfall_terms) {}
  long shortfall;
};

// Supplied terms contradict a recurrence they were claimed to satisfy.
class contradiction_error : public std::runtime_error {
 public:
  explicit contradiction_error(const std::string& what) : std::runtime_error(what) {}
};

// Leading recurrence coefficient vanished at an unrolling index.
class singular_point : public std::runtime_error {
 public:
  singular_point(const std::string& what, long at) : std::runtime_error(what), index(at) {}
  long index;
};

// Text input (b-file, JSON fixture, grid file) that does not parse.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, long line_no)
      : std::runtime_error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
  long line;
};

// Requested data cannot be produced (offline and no fixture, fetch failed).
class data_unavailable : public std::runtime_error {
 public:
  explicit data_unavailable(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace balmat
