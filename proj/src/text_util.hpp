#ifndef SZANR_TEXT_UTIL_HPP
#define SZANR_TEXT_UTIL_HPP

#include <cstdio>
#include <string>
#include <vector>

namespace szanr::detail {

// snprintf-based %g formatting; identical output for identical doubles.
inline std::string fmt_g(double v, int precision = 17) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace szanr::detail

#endif  // SZANR_TEXT_UTIL_HPP
