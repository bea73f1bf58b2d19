#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace bgw {

/// Ordered (x, y) pairs, all strictly positive.
struct BivariateSample {
    std::vector<double> x;
    std::vector<double> y;

    std::size_t size() const { return x.size(); }
    bool empty() const { return x.empty(); }
    void push_back(double xi, double yi) {
        x.push_back(xi);
        y.push_back(yi);
    }
    /// Throws DataError on length mismatch or non-positive / non-finite entries.
    void validate() const;
    /// Every coordinate divided by `factor`.
    BivariateSample scaled(double factor) const;
};

/// Reads comma-separated data with a required `x,y` header line.
BivariateSample read_csv(std::istream& in);
BivariateSample read_csv_file(const std::string& path);

void write_csv(std::ostream& out, const BivariateSample& data);

}  // namespace bgw
