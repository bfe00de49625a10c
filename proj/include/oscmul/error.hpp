#pragma once

#include <stdexcept>
#include <string>

namespace oscmul {

// Caller passed arguments outside an operation's contract (wrong domain tag,
// p < 1, too few regression points, ...).
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A frequency support would exceed what the grid resolves.
class RangeError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

// Object construction failed its own invariants.
class ConstructionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Input configuration is malformed or inconsistent.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace oscmul
