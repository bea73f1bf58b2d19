#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "bgw/errors.hpp"
#include "bgw/sample.hpp"

namespace bgw {

void BivariateSample::validate() const {
    if (x.size() != y.size()) throw DataError("sample: x and y lengths differ");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(x[i]) || !std::isfinite(y[i])) {
            throw DataError("sample: row " + std::to_string(i + 1) + " is not strictly positive and finite");
        }
    }
}

BivariateSample BivariateSample::scaled(double factor) const {
    if (!(factor > 0.0) || !std::isfinite(factor)) throw DataError("sample: scale factor must be positive");
    BivariateSample out = *this;
    for (auto& v : out.x) v /= factor;
    for (auto& v : out.y) v /= factor;
    return out;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

double parse_field(std::string_view f, std::size_t line) {
    f = trim(f);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc() || ptr != f.data() + f.size() || f.empty()) {
        throw DataError("csv line " + std::to_string(line) + ": cannot parse number '" + std::string(f) + "'");
    }
    return v;
}

}  // namespace

BivariateSample read_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    // header, skipping a UTF-8 BOM
    if (!std::getline(in, line)) throw DataError("csv: empty input");
    ++lineno;
    std::string_view head = line;
    if (head.starts_with("\xEF\xBB\xBF")) head.remove_prefix(3);
    const auto comma = head.find(',');
    if (comma == std::string_view::npos || trim(head.substr(0, comma)) != "x" ||
        trim(head.substr(comma + 1)) != "y") {
        throw DataError("csv: header must be 'x,y'");
    }
    BivariateSample out;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view row = trim(line);
        if (row.empty()) continue;
        const auto c = row.find(',');
        if (c == std::string_view::npos || row.find(',', c + 1) != std::string_view::npos) {
            throw DataError("csv line " + std::to_string(lineno) + ": expected two fields");
        }
        out.push_back(parse_field(row.substr(0, c), lineno), parse_field(row.substr(c + 1), lineno));
    }
    if (out.empty()) throw DataError("csv: no data rows");
    out.validate();
    return out;
}

BivariateSample read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return read_csv(in);
}

void write_csv(std::ostream& out, const BivariateSample& data) {
    out << "x,y\n" << std::setprecision(17);
    for (std::size_t i = 0; i < data.size(); ++i) out << data.x[i] << ',' << data.y[i] << '\n';
}

}  // namespace bgw
