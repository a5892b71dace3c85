#ifndef SOFIC_GROUPOID_IO_HPP_
#define SOFIC_GROUPOID_IO_HPP_

#include <string>
#include <string_view>

#include "sofic/groupoid.hpp"

namespace sofic {

// Text format, one record per line, '#' starts a comment:
//
//   groupoid 1
//   units <U>
//   unit <id> <weight>            (U lines, ids 0..U-1, weight as a/b)
//   arrows <A>
//   arrow <id> <source> <range> <inverse>   (A lines)
//   compose <g> <h> <gh>          (one line per pair with source(g) == range(h))
//
// write_groupoid emits the canonical form: no comments, records in id order,
// compose rows sorted by (g, h). parse(write(G)) == G and
// write(parse(text)) == text for canonical text.
GroupoidPtr parse_groupoid(std::string_view text);
std::string write_groupoid(const FiniteGroupoid &g);

GroupoidPtr load_groupoid(const std::string &path);
void save_groupoid(const FiniteGroupoid &g, const std::string &path);

} // namespace sofic

#endif // SOFIC_GROUPOID_IO_HPP_
