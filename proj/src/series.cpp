#include "gvar/series.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>

namespace gvar {

namespace {

namespace chrono = std::chrono;

chrono::year_month_day to_ymd(const Date& d) {
    return chrono::year_month_day{chrono::year{d.year},
                                  chrono::month{static_cast<unsigned>(d.month)},
                                  chrono::day{static_cast<unsigned>(d.day)}};
}

Date from_ymd(const chrono::year_month_day& ymd) {
    return Date{int(ymd.year()), int(unsigned(ymd.month())),
                int(unsigned(ymd.day()))};
}

bool parse_int_field(std::string_view text, int& out) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

} // namespace

Date Date::parse(std::string_view text) {
    const auto fail = [&](const char* why) -> Date {
        throw DomainError("invalid date '" + std::string(text) + "': " + why);
    };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        return fail("expected YYYY-MM-DD");
    }
    Date d;
    if (!parse_int_field(text.substr(0, 4), d.year) ||
        !parse_int_field(text.substr(5, 2), d.month) ||
        !parse_int_field(text.substr(8, 2), d.day)) {
        return fail("expected YYYY-MM-DD");
    }
    if (!to_ymd(d).ok()) {
        return fail("no such calendar date");
    }
    return d;
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    return buf;
}

Date Date::next_day() const {
    const auto days = chrono::sys_days{to_ymd(*this)} + chrono::days{1};
    return from_ymd(chrono::year_month_day{days});
}

Date Date::prev_day() const {
    const auto days = chrono::sys_days{to_ymd(*this)} - chrono::days{1};
    return from_ymd(chrono::year_month_day{days});
}

void ReturnSeries::validate() const {
    if (dates.size() != values.size()) {
        throw DomainError("ReturnSeries: " + std::to_string(dates.size()) +
                          " dates vs " + std::to_string(values.size()) +
                          " values");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw DomainError("ReturnSeries: non-finite value at " +
                              dates[i].to_string());
        }
        if (i > 0 && !(dates[i - 1] < dates[i])) {
            throw DomainError("ReturnSeries: dates not strictly increasing at " +
                              dates[i].to_string());
        }
    }
}

} // namespace gvar
