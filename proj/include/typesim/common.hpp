#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace typesim {

// Thrown on malformed formula or structure text. `pos` is a byte offset
// into the input, `line`/`col` are 1-based.
struct parse_error : std::runtime_error {
  std::size_t pos;
  int line, col;
  parse_error(std::string msg, std::size_t pos_, int line_, int col_)
      : std::runtime_error(std::move(msg)), pos(pos_), line(line_), col(col_) {}
};

// Thrown when input is well-formed but violates a semantic requirement
// (unknown symbol, arity mismatch, out-of-domain element, non-conjunctive
// formula where one is required, ...).
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an enumeration or closure would exceed its configured caps.
// Callers must not treat a partial result as an answer.
struct resource_limit_error : std::runtime_error {
  std::string what_limit;
  std::uint64_t limit, reached;
  resource_limit_error(std::string which, std::uint64_t limit_, std::uint64_t reached_)
      : std::runtime_error(which + " limit exceeded (" + std::to_string(reached_) +
                           " > " + std::to_string(limit_) + ")"),
        what_limit(std::move(which)), limit(limit_), reached(reached_) {}
};

// Caps for the formula/fingerprint machinery. Defaults are generous for
// desk-scale structures; exceeding them raises resource_limit_error.
struct Limits {
  std::uint64_t max_formulas = 1'000'000;    // syntactic candidates considered
  std::uint64_t max_fingerprints = 100'000;  // distinct semantic classes kept
};

}  // namespace typesim
