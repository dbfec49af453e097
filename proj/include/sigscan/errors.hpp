#pragma once

#include <stdexcept>
#include <string>

namespace sigscan {

/// Argument outside the mathematical domain of an operation (e.g. kappa > nu, p outside [0,1]).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A call that is well-formed but violates an operation's precondition
/// (e.g. Hoeffding significance requested with kappa/nu <= p).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed or unreadable input file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sigscan
