#pragma once

#include <stdexcept>
#include <string>

namespace tcq {

/// Base of every error raised by the library. The CLI maps any of these to a
/// non-zero exit code and prints `what()` on stderr.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
    virtual const char *category() const noexcept { return "error"; }
};

#define TCQ_DEFINE_ERROR(Name, tag)                                          \
    class Name : public Error {                                              \
      public:                                                                \
        using Error::Error;                                                  \
        const char *category() const noexcept override { return tag; }       \
    };

TCQ_DEFINE_ERROR(InputError, "input")
TCQ_DEFINE_ERROR(StateError, "state")
TCQ_DEFINE_ERROR(DomainError, "domain")
TCQ_DEFINE_ERROR(NumericalError, "numerical")
TCQ_DEFINE_ERROR(ConfigError, "config")
TCQ_DEFINE_ERROR(SolverFailure, "solver-failure")
TCQ_DEFINE_ERROR(AmbiguityError, "ambiguity")

#undef TCQ_DEFINE_ERROR

} // namespace tcq
