#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "concord/types.hpp"

namespace concord {

// Two numeric columns out of a comma-separated file. Columns are picked by
// 0-based index, or by name when the index is negative and a name is given
// (requires a header). Plain unquoted cells; scientific notation accepted;
// NaN / infinities rejected.
struct CsvFormat {
    enum class Header { autodetect, present, absent };

    int response_col = 0;
    int prediction_col = 1;
    std::string response_name;
    std::string prediction_name;
    Header header = Header::autodetect;
    char delimiter = ',';
};

std::vector<ScoredPair> ingest_csv(std::istream& in, const CsvFormat& fmt = {});
std::vector<ScoredPair> ingest_csv_file(const std::string& path, const CsvFormat& fmt = {});

// Shortest round-trip formatting: write_csv then ingest_csv returns the same
// doubles bit for bit.
void write_csv(const std::vector<ScoredPair>& rows, std::ostream& out, bool header = true);
void write_csv_file(const std::vector<ScoredPair>& rows, const std::string& path, bool header = true);

}  // namespace concord
