#include "attsp/time_util.hpp"

#include <cstdio>
#include <cstdlib>

#include "attsp/errors.hpp"

namespace attsp {

std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& year, int& month, int& day) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  month = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  year = static_cast<int>(y + (month <= 2));
}

UnixTime parse_iso8601(const std::string& s) {
  int y, mo, d, h, mi;
  double sec;
  int n = 0;
  if (std::sscanf(s.c_str(), "%d-%d-%dT%d:%d:%lf%n", &y, &mo, &d, &h, &mi,
                  &sec, &n) != 6 &&
      std::sscanf(s.c_str(), "%d-%d-%d %d:%d:%lf%n", &y, &mo, &d, &h, &mi,
                  &sec, &n) != 6) {
    throw ParseError("unparseable timestamp: " + s);
  }
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 ||
      mi > 59 || sec < 0 || sec >= 61) {
    throw ParseError("timestamp out of range: " + s);
  }
  std::int64_t t = days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 +
                   static_cast<std::int64_t>(sec);
  std::string rest = s.substr(static_cast<std::size_t>(n));
  if (rest.empty() || rest == "Z" || rest == "z") return t;
  int oh, om;
  char sign;
  if (std::sscanf(rest.c_str(), "%c%d:%d", &sign, &oh, &om) == 3 &&
      (sign == '+' || sign == '-')) {
    std::int64_t off = oh * 3600 + om * 60;
    return sign == '+' ? t - off : t + off;
  }
  throw ParseError("unparseable timestamp suffix: " + s);
}

std::string format_iso8601(UnixTime t) {
  std::int64_t days = t / 86400;
  std::int64_t rem = t % 86400;
  if (rem < 0) {
    rem += 86400;
    days -= 1;
  }
  int y, mo, d;
  civil_from_days(days, y, mo, d);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02lld:%02lld:%02lldZ", y,
                mo, d, static_cast<long long>(rem / 3600),
                static_cast<long long>((rem / 60) % 60),
                static_cast<long long>(rem % 60));
  return buf;
}

std::string format_iso_date(UnixTime t) {
  std::int64_t days = t / 86400;
  if (t % 86400 < 0) days -= 1;
  int y, mo, d;
  civil_from_days(days, y, mo, d);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, mo, d);
  return buf;
}

std::string month_bucket(UnixTime t) {
  std::int64_t days = t / 86400;
  if (t % 86400 < 0) days -= 1;
  int y, mo, d;
  civil_from_days(days, y, mo, d);
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", y, mo);
  return buf;
}

UnixTime iso_week_start(UnixTime t) {
  std::int64_t days = t / 86400;
  if (t % 86400 < 0) days -= 1;
  // 1970-01-01 was a Thursday; shift so Monday = 0.
  std::int64_t dow = (days + 3) % 7;
  if (dow < 0) dow += 7;
  return (days - dow) * 86400;
}

}  // namespace attsp
