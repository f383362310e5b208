#pragma once

#include <string>

namespace repstring {

// 17 significant digits: round-trip safe for doubles.
std::string format_number(double x);

std::string csv_escape(const std::string& field);

}  // namespace repstring
