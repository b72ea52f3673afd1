#include "mifem/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

namespace mifem {

CsrMatrix CsrMatrix::from_pattern(int n, std::span<const std::pair<int, int>> pairs)
{
    CsrMatrix m;
    m.n_ = n;
    m.row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) {
        ++m.row_ptr_[i + 1];   // diagonal
    }
    for (const auto& [i, j] : pairs) {
        if (i < 0 || j < 0 || i >= n || j >= n) {
            throw std::out_of_range("CsrMatrix::from_pattern: index out of range");
        }
        ++m.row_ptr_[i + 1];
    }
    for (int i = 0; i < n; ++i) {
        m.row_ptr_[i + 1] += m.row_ptr_[i];
    }
    std::vector<int> cols(m.row_ptr_.back());
    std::vector<int> fill(m.row_ptr_.begin(), m.row_ptr_.end() - 1);
    for (int i = 0; i < n; ++i) {
        cols[fill[i]++] = i;
    }
    for (const auto& [i, j] : pairs) {
        cols[fill[i]++] = j;
    }

    // sort and deduplicate row by row, compacting in place
    std::vector<int> new_ptr(static_cast<std::size_t>(n) + 1, 0);
    std::size_t out = 0;
    for (int i = 0; i < n; ++i) {
        auto b = cols.begin() + m.row_ptr_[i];
        auto e = cols.begin() + m.row_ptr_[i + 1];
        std::sort(b, e);
        e = std::unique(b, e);
        for (auto it = b; it != e; ++it) {
            cols[out++] = *it;
        }
        new_ptr[i + 1] = static_cast<int>(out);
    }
    cols.resize(out);
    cols.shrink_to_fit();
    m.row_ptr_ = std::move(new_ptr);
    m.cols_ = std::move(cols);
    m.vals_.assign(m.cols_.size(), 0.0);
    return m;
}

CsrMatrix CsrMatrix::from_triplets(int n, std::span<const Triplet> triplets)
{
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(triplets.size());
    for (const auto& t : triplets) {
        pairs.emplace_back(t.row, t.col);
    }
    CsrMatrix m = from_pattern(n, pairs);
    for (const auto& t : triplets) {
        m.add(t.row, t.col, t.value);
    }
    return m;
}

std::ptrdiff_t CsrMatrix::locate(int i, int j) const
{
    if (i < 0 || i >= n_) {
        return -1;
    }
    const auto b = cols_.begin() + row_ptr_[i];
    const auto e = cols_.begin() + row_ptr_[i + 1];
    const auto it = std::lower_bound(b, e, j);
    if (it == e || *it != j) {
        return -1;
    }
    return it - cols_.begin();
}

std::size_t CsrMatrix::find(int i, int j) const
{
    const auto k = locate(i, j);
    if (k < 0) {
        throw std::out_of_range("CsrMatrix: entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") outside pattern");
    }
    return static_cast<std::size_t>(k);
}

double CsrMatrix::operator()(int i, int j) const
{
    const auto k = locate(i, j);
    return k < 0 ? 0.0 : vals_[static_cast<std::size_t>(k)];
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const
{
    for (int i = 0; i < n_; ++i) {
        double s = 0.0;
        for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            s += vals_[k] * x[cols_[k]];
        }
        y[i] = s;
    }
}

std::vector<double> CsrMatrix::diagonal() const
{
    std::vector<double> d(n_);
    for (int i = 0; i < n_; ++i) {
        d[i] = (*this)(i, i);
    }
    return d;
}

double CsrMatrix::max_abs() const
{
    double m = 0.0;
    for (double v : vals_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

double CsrMatrix::max_asymmetry() const
{
    double m = 0.0;
    for (int i = 0; i < n_; ++i) {
        for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            m = std::max(m, std::abs(vals_[k] - (*this)(cols_[k], i)));
        }
    }
    return m;
}

void CsrMatrix::scale(double s)
{
    for (double& v : vals_) {
        v *= s;
    }
}

void CsrMatrix::add_scaled(const CsrMatrix& other, double s)
{
    if (other.row_ptr_ != row_ptr_ || other.cols_ != cols_) {
        throw std::invalid_argument("CsrMatrix::add_scaled: pattern mismatch");
    }
    for (std::size_t k = 0; k < vals_.size(); ++k) {
        vals_[k] += s * other.vals_[k];
    }
}

void CsrMatrix::write_coordinate(std::ostream& os) const
{
    const auto old = os.precision(17);
    for (int i = 0; i < n_; ++i) {
        for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            os << i << ' ' << cols_[k] << ' ' << vals_[k] << '\n';
        }
    }
    os.precision(old);
}

} // namespace mifem
