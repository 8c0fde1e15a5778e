#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adiabat {

/// Base class for every failure raised by the library. `kind()` is a short
/// machine-readable tag used by the CLI when reporting errors.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string &what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string &kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

class ArgumentError : public Error {
public:
  explicit ArgumentError(const std::string &what) : Error("argument", what) {}
};

/// A schedule produced an operator that is not Hermitian.
class ScheduleError : public Error {
public:
  explicit ScheduleError(const std::string &what) : Error("schedule", what) {}
};

/// Evolution did not return to the initial ray.
class CyclicityError : public Error {
public:
  CyclicityError(const std::string &what, double overlap)
      : Error("cyclicity", what), overlap_(overlap) {}
  double overlap() const noexcept { return overlap_; }

private:
  double overlap_;
};

/// A gap closed along a parameter loop.
class DegeneracyError : public Error {
public:
  DegeneracyError(const std::string &what, std::size_t index)
      : Error("degeneracy", what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

private:
  std::size_t index_;
};

class GeometryError : public Error {
public:
  explicit GeometryError(const std::string &what) : Error("geometry", what) {}
};

/// Discretisation too coarse for the requested answer; caller should refine.
class ResolutionError : public Error {
public:
  explicit ResolutionError(const std::string &what) : Error("resolution", what) {}
};

class AccuracyError : public Error {
public:
  explicit AccuracyError(const std::string &what) : Error("accuracy", what) {}
};

class RegimeError : public Error {
public:
  explicit RegimeError(const std::string &what) : Error("regime", what) {}
};

class NotFoundError : public Error {
public:
  explicit NotFoundError(const std::string &what) : Error("not-found", what) {}
};

class StabilityError : public Error {
public:
  explicit StabilityError(const std::string &what) : Error("stability", what) {}
};

class DynamicsError : public Error {
public:
  explicit DynamicsError(const std::string &what) : Error("dynamics", what) {}
};

/// Internal consistency check failed (e.g. |r| != 1 in a closed channel).
class ConsistencyError : public Error {
public:
  explicit ConsistencyError(const std::string &what) : Error("consistency", what) {}
};

} // namespace adiabat
