#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "robustlm/arfima.hpp"

namespace robustlm {

// Errors caused by malformed input files or configs (exit code 2 at the
// CLI), as opposed to computation refusals (exit code 1).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Column selector: a 0-based index, or a header name.
struct ColumnSelector {
    int index = 0;
    std::string name;  // non-empty name wins over index

    static ColumnSelector parse(const std::string& text);  // digits -> index, else name
};

// Reads one numeric column from an RFC-4180-style CSV ('.' decimal
// separator, optional header row, '#' comment lines). Missing or
// non-numeric cells are rejected with their 1-based file line numbers.
TimeSeries read_series_csv(const std::string& path, const ColumnSelector& column = {});

// Writes one value per line at full precision, preceded by '#' comment
// lines.
void write_series_csv(const std::string& path, const std::vector<double>& values,
                      const std::vector<std::string>& comments);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace robustlm
