#ifndef QSEMI_CLI_HPP
#define QSEMI_CLI_HPP

// Command-line front end.  run_command takes argv without the program name
// and writes to the given streams, so tests can drive it in-process.
//
// Exit codes: 0 success / positive classification; 1 I/O, schema, or usage
// error; 2 mathematical verification failure; 3 negative classification
// (a well-formed answer, not a tool failure).

#include <iosfwd>
#include <string>
#include <vector>

namespace qsemi {

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qsemi

#endif
