#ifndef BJORTHO_CLI_HPP_
#define BJORTHO_CLI_HPP_

#include <iosfwd>

namespace bjortho {

// Runs the command line. Exit codes: 0 verdict computed, 1 suite failure,
// 2 input or configuration error.
int cli_main(int argc, char** argv);
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace bjortho

#endif  // BJORTHO_CLI_HPP_
