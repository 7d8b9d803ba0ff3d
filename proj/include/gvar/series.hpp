#pragma once

#include "gvar/errors.hpp"

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace gvar {

/// A calendar date, ISO-8601 text on the outside, plain fields inside.
/// Ordering is lexicographic on (year, month, day), which matches calendar
/// order.  next_day/prev_day do real calendar arithmetic (leap years
/// included) and exist for the synthetic-data paths; market data carries its
/// own trading calendar in the input file and is never "advanced" by us.
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    /// Parse strict "YYYY-MM-DD".  Rejects malformed text and impossible
    /// calendar dates (2021-02-29, month 13, ...) with DomainError.
    static Date parse(std::string_view text);

    std::string to_string() const;

    Date next_day() const;
    Date prev_day() const;

    friend auto operator<=>(const Date&, const Date&) = default;
};

/// Date-indexed sequence of scaled daily log-returns Z_t = 100 * ln(P_t /
/// P_{t-1}).  Parallel arrays rather than an array of pairs: every consumer
/// walks the values as a contiguous span.
struct ReturnSeries {
    std::vector<Date> dates;
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }

    /// Check the representation invariants: equal lengths, strictly
    /// increasing dates, finite values.  Throws DomainError.  Called by the
    /// pipeline entry points; cheap relative to any use of the series.
    void validate() const;
};

} // namespace gvar
