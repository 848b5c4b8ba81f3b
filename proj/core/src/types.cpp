#include "perisched/types.hpp"

#include <charconv>
#include <cstdlib>

namespace perisched {

namespace {

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw InputError("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::string Rational::to_fixed(int digits) const {
  __int128 scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  __int128 n = static_cast<__int128>(num_) * scale;
  bool negative = n < 0;
  if (negative) n = -n;
  __int128 q = (2 * n + den_) / (2 * static_cast<__int128>(den_));
  auto whole = static_cast<std::int64_t>(q / scale);
  auto frac = static_cast<std::int64_t>(q % scale);
  std::string out = (negative && q != 0 ? "-" : "") + std::to_string(whole);
  if (digits > 0) {
    std::string f = std::to_string(frac);
    out += "." + std::string(static_cast<std::size_t>(digits) - f.size(), '0') + f;
  }
  return out;
}

Rational Rational::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return {parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1))};
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 15 || frac.find_first_not_of("0123456789") != frac.npos) {
      throw InputError("bad decimal: '" + std::string(text) + "'");
    }
    bool negative = !whole.empty() && whole.front() == '-';
    std::int64_t w = whole.empty() || whole == "-" ? 0 : parse_int(whole);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::int64_t f = parse_int(frac);
    std::int64_t magnitude = (w < 0 ? -w : w) * den + f;
    return {negative ? -magnitude : magnitude, den};
  }
  return {parse_int(text), 1};
}

Alpha::Alpha(Rational value) : value_(value) {
  if (value_ <= Rational(0) || value_ > Rational(1)) {
    throw InputError("alpha must lie in (0, 1]");
  }
}

}  // namespace perisched
