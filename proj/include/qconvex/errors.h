#ifndef QCONVEX_ERRORS_H_
#define QCONVEX_ERRORS_H_

#include <stdexcept>
#include <string>

namespace qconvex {

// Malformed instance, dimension mismatch, non-finite entries, bad arguments.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Eigen-decomposition failure or a numerically corrupted intermediate.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what)
      : std::runtime_error(what) {}
};

// The Gram matrix of the linear terms is singular, so x = 0 is not a regular
// point of the map.
class OriginNotRegular : public std::domain_error {
 public:
  explicit OriginNotRegular(const std::string& what)
      : std::domain_error(what) {}
};

}  // namespace qconvex

#endif  // QCONVEX_ERRORS_H_
