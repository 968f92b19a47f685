#include "concord/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace concord {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_line(std::string_view line, char delim) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(delim, start);
        if (pos == std::string_view::npos) {
            cells.push_back(trim(line.substr(start)));
            break;
        }
        cells.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return cells;
}

bool parse_double(std::string_view cell, double& out) {
    if (cell.empty()) return false;
    const char* first = cell.data();
    const char* last = first + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, out, std::chars_format::general);
    return ec == std::errc() && ptr == last;
}

struct ColumnPick {
    std::size_t response = 0;
    std::size_t prediction = 1;
};

std::size_t find_column(const std::vector<std::string_view>& header, const std::string& name,
                        const char* role) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw ParseError(1, 1, std::string(role) + " column '" + name + "' not found in header");
}

}  // namespace

std::vector<ScoredPair> ingest_csv(std::istream& in, const CsvFormat& fmt) {
    const bool by_name = fmt.response_col < 0 || fmt.prediction_col < 0;
    if (by_name && (fmt.response_name.empty() || fmt.prediction_name.empty()))
        throw std::invalid_argument("CsvFormat: column names required when indices are negative");
    if (by_name && fmt.header == CsvFormat::Header::absent)
        throw std::invalid_argument("CsvFormat: named columns need a header row");

    std::vector<ScoredPair> rows;
    ColumnPick pick;
    if (!by_name) {
        pick.response = static_cast<std::size_t>(fmt.response_col);
        pick.prediction = static_cast<std::size_t>(fmt.prediction_col);
    }

    std::string line;
    std::size_t lineno = 0;
    bool header_resolved = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv = line;
        if (lineno == 1 && sv.size() >= 3 && sv.substr(0, 3) == "\xEF\xBB\xBF") sv.remove_prefix(3);
        if (trim(sv).empty()) continue;

        auto cells = split_line(sv, fmt.delimiter);
        if (!header_resolved) {
            header_resolved = true;
            bool treat_as_header = false;
            if (fmt.header == CsvFormat::Header::present || by_name) {
                treat_as_header = true;
            } else if (fmt.header == CsvFormat::Header::autodetect) {
                // a header has no numeric cells; a first row with one bad and
                // one numeric cell is malformed data, not a header
                double tmp;
                std::size_t probe = std::max(pick.response, pick.prediction);
                treat_as_header = probe >= cells.size() ||
                                  (!parse_double(cells[pick.response], tmp) &&
                                   !parse_double(cells[pick.prediction], tmp));
            }
            if (treat_as_header) {
                if (by_name) {
                    pick.response = find_column(cells, fmt.response_name, "response");
                    pick.prediction = find_column(cells, fmt.prediction_name, "prediction");
                }
                continue;
            }
        }

        std::size_t need = std::max(pick.response, pick.prediction);
        if (need >= cells.size())
            throw ParseError(lineno, need + 1, "row has only " + std::to_string(cells.size()) + " columns");

        double resp, pred;
        if (!parse_double(cells[pick.response], resp))
            throw ParseError(lineno, pick.response + 1,
                             "not a number: '" + std::string(cells[pick.response]) + "'");
        if (!parse_double(cells[pick.prediction], pred))
            throw ParseError(lineno, pick.prediction + 1,
                             "not a number: '" + std::string(cells[pick.prediction]) + "'");
        if (!std::isfinite(resp)) throw ParseError(lineno, pick.response + 1, "non-finite value");
        if (!std::isfinite(pred)) throw ParseError(lineno, pick.prediction + 1, "non-finite value");
        rows.emplace_back(resp, pred);
    }
    if (rows.empty()) throw EmptyInput();
    return rows;
}

std::vector<ScoredPair> ingest_csv_file(const std::string& path, const CsvFormat& fmt) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return ingest_csv(in, fmt);
}

namespace {

void append_shortest(std::string& buf, double v) {
    char tmp[32];
    auto [ptr, ec] = std::to_chars(tmp, tmp + sizeof tmp, v);
    (void)ec;
    buf.append(tmp, ptr);
}

}  // namespace

void write_csv(const std::vector<ScoredPair>& rows, std::ostream& out, bool header) {
    std::string buf;
    buf.reserve(rows.size() * 24 + 32);
    if (header) buf += "response,prediction\n";
    for (const auto& r : rows) {
        append_shortest(buf, r.response);
        buf += ',';
        append_shortest(buf, r.prediction);
        buf += '\n';
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_csv_file(const std::vector<ScoredPair>& rows, const std::string& path, bool header) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    write_csv(rows, out, header);
}

}  // namespace concord
