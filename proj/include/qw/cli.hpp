#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "qw/slice.hpp"

namespace qw {

/// Factor word such as "X[1,1](3/2) s2^-1 T(2,1/3)"; "1" is the identity.
/// Simple indices are 1-based. Throws InvalidArgument on malformed input.
GroupElement<Rational> parse_point(const RootSystem& rs, const std::string& text);

/// Function descriptor: integers, + - * /, parentheses, entry(i,b,c),
/// trace(i) and mc(i; u1,u2,..; v1,v2,..), all indices 1-based.
GFunction parse_function(const ChevalleyBasis& cb, const std::string& text);

/// Command-line front end. args excludes the program name. Returns the exit
/// code: 0 on success, 1 on a mathematical failure, 2 on a parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qw
