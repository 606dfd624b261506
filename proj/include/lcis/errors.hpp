#ifndef LCIS_ERRORS_HPP
#define LCIS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lcis {

/// An exhaustive routine was asked for an input larger than it accepts.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A documented precondition was violated by the caller.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lcis

#endif  // LCIS_ERRORS_HPP
