#pragma once

#include <iosfwd>
#include <string>

#include "lmtest/series.hpp"

namespace lmtest {

/// Reads a two-column numeric table. Comma or whitespace delimited,
/// auto-detected; a single non-numeric header line and '#' comment lines
/// are skipped. Throws invalid_input on malformed rows.
BivariatePair read_pair_csv(std::istream& in);
BivariatePair read_pair_csv_file(const std::string& path);

/// Writes the pair as two comma-separated columns; header lines are emitted
/// as '#' comments.
void write_pair_csv(std::ostream& out, const BivariatePair& pair,
                    const std::string& header_comment);

}  // namespace lmtest
