#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

namespace tubular {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Int gcd(const Int& a, const Int& b);
Int abs(const Int& a);

std::string to_string(const Int& value);
std::string to_string(const Rational& value);

// JSON numbers when the value fits in 64 bits, decimal strings otherwise.
nlohmann::json int_to_json(const Int& value);
// Always a decimal string; used where the format pins strings.
nlohmann::json int_to_json_string(const Int& value);
// Accepts JSON integers or decimal strings. `where` prefixes error messages.
Int int_from_json(const nlohmann::json& j, const std::string& where);

}  // namespace tubular
