#pragma once

// Two-column CSV ingestion (label,value with a required header row) and
// label-aligned trimming of a pair to its common span.

#include <string>
#include <vector>

#include "tops/series.hpp"

namespace tops {

/// Read a CSV with a header row. `column` selects the value column by
/// header name; empty picks the second column. The first column provides
/// the labels, which must be strictly increasing strings.
RawSeries read_csv(const std::string& path, const std::string& column = "");

void write_csv(const std::string& path, const RawSeries& series,
               const std::string& label_header = "label",
               const std::string& value_header = "value");

struct TrimResult {
    RawSeries x, y;
    std::string first_label, last_label;
    std::size_t dropped_x = 0, dropped_y = 0;
};

/// Intersect two labelled series on their common labels (both label sets
/// must be strictly increasing; missing labels are dropped, never imputed).
TrimResult trim_common(const RawSeries& x, const RawSeries& y);

}  // namespace tops
