#pragma once

#include <stdexcept>
#include <string>

namespace mesc {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Instance file could not be parsed (schema violation, bad value).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

// A record refers to an entity that does not exist (dangling id).
class ReferenceError : public Error {
 public:
  explicit ReferenceError(const std::string& what) : Error(what) {}
};

// Ill-formed model construction (bad bounds, unknown variable, type misuse).
class ModelError : public Error {
 public:
  explicit ModelError(const std::string& what) : Error(what) {}
};

// Solver could not produce a usable answer (internal limit, numerical failure).
class SolveError : public Error {
 public:
  explicit SolveError(const std::string& what) : Error(what) {}
};

// I/O failure writing or reading artifacts.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

// Input too large for an exhaustive procedure.
class SizeError : public Error {
 public:
  explicit SizeError(const std::string& what) : Error(what) {}
};

}  // namespace mesc
