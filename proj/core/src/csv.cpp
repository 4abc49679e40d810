#include "copulakit/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <vector>

#include "copulakit/errors.hpp"

namespace copulakit {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(trim(line.substr(start)));
            break;
        }
        cells.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return cells;
}

bool try_parse(const std::string& cell, double* out) {
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto res = std::from_chars(first, last, *out);
    return res.ec == std::errc{} && res.ptr == last && !cell.empty();
}

}  // namespace

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& cell, int line_no) {
    double value = 0.0;
    if (!try_parse(cell, &value)) {
        throw CsvParseError("line " + std::to_string(line_no) + ": non-numeric cell '" + cell +
                            "'");
    }
    return value;
}

Sample ingest_csv(std::istream& in) {
    Sample sample;
    std::string line;
    int line_no = 0;
    bool first_content_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split_cells(line);
        if (cells.size() < 2) {
            throw CsvParseError("line " + std::to_string(line_no) +
                                ": expected at least 2 columns, got " +
                                std::to_string(cells.size()));
        }
        if (first_content_line) {
            first_content_line = false;
            double probe = 0.0;
            if (!try_parse(cells[0], &probe)) continue;  // header row
        }
        sample.x.push_back(parse_double(cells[0], line_no));
        sample.y.push_back(parse_double(cells[1], line_no));
    }
    if (sample.size() < 2) {
        throw InsufficientDataError("need at least 2 data rows, got " +
                                    std::to_string(sample.size()));
    }
    return sample;
}

Sample ingest_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CsvParseError("cannot open '" + path + "'");
    return ingest_csv(in);
}

}  // namespace copulakit
