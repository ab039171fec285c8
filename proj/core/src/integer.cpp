#include "tubular/integer.hpp"

#include <cstdint>
#include <limits>

#include "tubular/error.hpp"

namespace tubular {

Int gcd(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(a, b);
}

Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

std::string to_string(const Int& value) { return value.str(); }

std::string to_string(const Rational& value) {
  const Int num = boost::multiprecision::numerator(value);
  const Int den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

nlohmann::json int_to_json(const Int& value) {
  static const Int lo = std::numeric_limits<std::int64_t>::min();
  static const Int hi = std::numeric_limits<std::int64_t>::max();
  if (value >= lo && value <= hi) return value.convert_to<std::int64_t>();
  return value.str();
}

nlohmann::json int_to_json_string(const Int& value) { return value.str(); }

Int int_from_json(const nlohmann::json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
    return Int(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size()) throw InputError(where + ": empty integer string");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9')
        throw InputError(where + ": invalid integer string \"" + s + "\"");
    }
    return Int(s[0] == '+' ? s.substr(1) : s);
  }
  throw InputError(where + ": expected an integer or a decimal string");
}

}  // namespace tubular
