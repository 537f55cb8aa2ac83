#ifndef FREEARR_IO_HPP
#define FREEARR_IO_HPP

// Text formats.
//
//   .arr   field Q | field Q sqrt <d> | field F <p>
//          line <a> <b> <c>          one per line a x + b y + c = 0
//   .marr  same header, then
//          mline <a> <b> <mult>      one per central a x + b y = 0
//
// '#' starts a comment. Scalars use the parse_scalar syntax.

#include <filesystem>
#include <string>
#include <string_view>

#include "freearr/arrangement.hpp"
#include "freearr/derivations.hpp"

namespace freearr {

/// Throws ParseError (with line and column) on malformed or duplicate input.
Arrangement parse_arrangement(std::string_view text);
Multiarrangement parse_multiarrangement(std::string_view text);

/// Reads a file; ParseError on bad content, std::runtime_error if unreadable.
Arrangement load_arrangement(const std::filesystem::path& path);
Multiarrangement load_multiarrangement(const std::filesystem::path& path);

std::string serialize(const Arrangement& a);
std::string serialize(const Multiarrangement& m);

}  // namespace freearr

#endif
