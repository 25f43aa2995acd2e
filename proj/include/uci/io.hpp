#pragma once

#include <istream>
#include <string>
#include <string_view>

#include "uci/ustat.hpp"

namespace uci {

// One numeric value per line. A non-numeric first line is taken as a
// header; any later non-numeric line throws ParseError. Blank lines are
// skipped.
Sample parse_sample_csv(std::istream& in);
// Throws IoError when the file cannot be opened.
Sample read_sample_csv(const std::string& path);

// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double v);

// Strict full-string numeric parse.
bool parse_double(std::string_view text, double& out);

}  // namespace uci
