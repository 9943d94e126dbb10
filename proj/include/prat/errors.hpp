#ifndef PRAT_ERRORS_HPP
#define PRAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace prat {

/* Raised when an operation is called outside its domain (bad arguments). */
class precondition_error : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/* The input is a perfect square, so the "quadratic field" would be Q. */
class square_input_error : public precondition_error
{
  public:
    using precondition_error::precondition_error;
};

/* A configured size, period or precision cap was hit. Never a guess. */
class cap_exceeded : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class cancelled : public std::runtime_error
{
  public:
    cancelled() : std::runtime_error("computation cancelled") {}
};

} // namespace prat

#endif
