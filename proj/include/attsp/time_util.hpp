#pragma once

#include <cstdint>
#include <string>

namespace attsp {

// Seconds since the Unix epoch, UTC.
using UnixTime = std::int64_t;

// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t days_from_civil(int year, int month, int day);
void civil_from_days(std::int64_t days, int& year, int& month, int& day);

// Accepts "YYYY-MM-DDTHH:MM:SS" with optional fractional seconds and an
// optional "Z" or "+HH:MM"/"-HH:MM" offset. Throws ParseError otherwise.
UnixTime parse_iso8601(const std::string& s);

std::string format_iso8601(UnixTime t);
std::string format_iso_date(UnixTime t);

// "YYYY-MM" bucket.
std::string month_bucket(UnixTime t);

// Unix time of the Monday 00:00 UTC starting the ISO week containing t.
UnixTime iso_week_start(UnixTime t);

}  // namespace attsp
