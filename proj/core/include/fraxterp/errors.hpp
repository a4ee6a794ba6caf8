#pragma once

#include <stdexcept>
#include <string>

namespace fraxterp {

/// A scheme, map, or operator is malformed in a way that no amount of
/// numerical probing can repair (mismatched domains, bad parameters, ...).
class StructuralError : public std::invalid_argument {
 public:
  explicit StructuralError(const std::string& what) : std::invalid_argument(what) {}
};

/// A point was passed to a map or function outside its declared domain.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A point could not be assigned to any piece image, even with tolerance.
class UnlocatableError : public std::runtime_error {
 public:
  explicit UnlocatableError(const std::string& what) : std::runtime_error(what) {}
};

/// An operator whose vertical maps are not a uniform contraction.
class NotContractiveError : public std::runtime_error {
 public:
  NotContractiveError(const std::string& what, std::string piece, double sup)
      : std::runtime_error(what), piece_label(std::move(piece)), scale_sup(sup) {}
  std::string piece_label;
  double scale_sup;
};

/// Recursive evaluation hit its depth cap before certifying the tolerance.
/// Carries the partial value and the error bound actually achieved.
class DepthExceededError : public std::runtime_error {
 public:
  DepthExceededError(const std::string& what, double partial, double bound)
      : std::runtime_error(what), partial_value(partial), achieved_bound(bound) {}
  double partial_value;
  double achieved_bound;
};

/// Configuration file could not be parsed or violates the schema.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fraxterp
