#pragma once

#include <stdexcept>
#include <string>

namespace arbor {

  // Root of all library errors. The CLI maps the concrete subclasses onto
  // distinct exit codes.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Malformed user input: unknown letters, bad JSON, inconsistent sizes.
  class InputError : public Error {
   public:
    using Error::Error;
  };

  // An enumeration or search would exceed its configured budget.
  class BudgetExceeded : public Error {
   public:
    using Error::Error;
  };

  // An operation was called outside of its documented domain.
  class PreconditionError : public Error {
   public:
    using Error::Error;
  };

  // A mathematical guarantee failed to hold. Seeing this means either a
  // precondition was not checked somewhere or there is a bug.
  class TheoremViolation : public Error {
   public:
    using Error::Error;
  };

}  // namespace arbor
