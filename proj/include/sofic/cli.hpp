#ifndef SOFIC_CLI_HPP_
#define SOFIC_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace sofic::cli {

// Subcommands: count, verify, construct, calc, curve. args excludes the
// program name. Errors are written to err as JSON with a nonzero return.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// "a..b", "a,b,c" or "a"
std::vector<std::size_t> parse_degrees(const std::string &text);

} // namespace sofic::cli

#endif // SOFIC_CLI_HPP_
