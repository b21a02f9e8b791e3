#pragma once

#include <cstdio>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "nurecon/error.hpp"

namespace nurecon::csv {

/// Scientific notation with 17 significant digits (round-trips a double).
inline std::string sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::vector<std::string> split(std::string_view line, char sep = ',');
std::string_view trim(std::string_view s);
double to_double(std::string_view s);
long long to_int(std::string_view s);

/// Reads the next non-comment, non-empty line. Comment lines ('#') are appended
/// to `comments` without the leading '#'. Returns false at end of input.
bool next_row(std::istream& in, std::string& line, std::vector<std::string>* comments = nullptr);

}  // namespace nurecon::csv
