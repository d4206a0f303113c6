#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <system_error>

namespace mmwsim {

// Shortest round-trip decimal form, independent of the C locale.
inline std::string format_double(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

// Strict inverse of format_double; false on trailing garbage.
inline bool parse_double(std::string_view s, double& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace mmwsim
