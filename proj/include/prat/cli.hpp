#ifndef PRAT_CLI_HPP
#define PRAT_CLI_HPP

#include <iosfwd>

namespace prat::cli {

enum exit_code { ok = 0, internal_error = 1, bad_arguments = 2, cap_reached = 3 };

/* Whole command line in, exit code out. Output is assembled first and
 * written in one piece, so a failing run never leaves a partial line. */
int run(int argc, char const * const * argv, std::ostream & out, std::ostream & err);

} // namespace prat::cli

#endif
