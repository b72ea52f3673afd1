#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace mifem {

struct Triplet {
    int row;
    int col;
    double value;
};

/// Square matrix in compressed-row storage with sorted column indices.
class CsrMatrix {
public:
    CsrMatrix() = default;

    /// Zero-valued matrix holding the given pattern (diagonal always included).
    /// Duplicate pairs are merged.
    static CsrMatrix from_pattern(int n, std::span<const std::pair<int, int>> pairs);
    /// Duplicate entries are summed.
    static CsrMatrix from_triplets(int n, std::span<const Triplet> triplets);

    int size() const { return n_; }
    std::size_t nonzeros() const { return cols_.size(); }

    std::span<const int> row_cols(int i) const
    {
        return {cols_.data() + row_ptr_[i], static_cast<std::size_t>(row_ptr_[i + 1] - row_ptr_[i])};
    }
    std::span<const double> row_values(int i) const
    {
        return {vals_.data() + row_ptr_[i], static_cast<std::size_t>(row_ptr_[i + 1] - row_ptr_[i])};
    }
    std::span<double> row_values(int i)
    {
        return {vals_.data() + row_ptr_[i], static_cast<std::size_t>(row_ptr_[i + 1] - row_ptr_[i])};
    }
    const std::vector<int>& row_ptr() const { return row_ptr_; }
    const std::vector<int>& cols() const { return cols_; }
    const std::vector<double>& values() const { return vals_; }

    /// Adds into an existing pattern entry; throws std::out_of_range otherwise.
    void add(int i, int j, double v) { vals_[find(i, j)] += v; }
    /// Entry value, zero outside the pattern.
    double operator()(int i, int j) const;
    bool contains(int i, int j) const { return locate(i, j) >= 0; }

    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> diagonal() const;
    double max_abs() const;
    /// max |A_ij - A_ji| over the pattern union.
    double max_asymmetry() const;

    void scale(double s);
    void add_scaled(const CsrMatrix& other, double s);   // requires identical patterns

    /// One "row col value" line per stored entry, zero-based, 17 significant digits.
    void write_coordinate(std::ostream& os) const;

private:
    std::ptrdiff_t locate(int i, int j) const;
    std::size_t find(int i, int j) const;

    int n_ = 0;
    std::vector<int> row_ptr_{0};
    std::vector<int> cols_;
    std::vector<double> vals_;
};

} // namespace mifem
