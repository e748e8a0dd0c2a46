#pragma once

#include <stdexcept>
#include <string>

namespace packsolve {

// Input document is malformed (bad syntax, wrong field types).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Input document parses but violates a model invariant.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A solver gave up because its deadline expired.
class TimeoutError : public std::runtime_error {
 public:
  explicit TimeoutError(const std::string& msg) : std::runtime_error(msg) {}
};

// An internal invariant that should hold by construction was broken.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& msg) : std::logic_error(msg) {}
};

// The model admits no feasible solution (e.g. a demanded type no pattern covers).
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

// The generator backend could not be reached after bounded retries.
class GeneratorError : public std::runtime_error {
 public:
  explicit GeneratorError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace packsolve
