#include "pecoh/matrix.hpp"

#include "pecoh/errors.hpp"

#include <algorithm>

namespace pecoh {

namespace {

using Row = IntegerMatrix::Row;

// result = x + f*y, merged on sorted column index.
Row axpy(const Row& x, const Row& y, const Integer& f)
{
    Row out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            out.emplace_back(y[j].first, f * y[j].second);
            ++j;
        } else {
            Integer v = x[i].second + f * y[j].second;
            if (v != 0)
                out.emplace_back(x[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

Row linear2(const Row& x, const Row& y, const Integer& a, const Integer& b)
{
    Row out;
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        std::size_t col;
        Integer v;
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            col = x[i].first;
            v = a * x[i++].second;
        } else if (i == x.size() || y[j].first < x[i].first) {
            col = y[j].first;
            v = b * y[j++].second;
        } else {
            col = x[i].first;
            v = a * x[i++].second + b * y[j++].second;
        }
        if (v != 0)
            out.emplace_back(col, std::move(v));
    }
    return out;
}

} // namespace

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

IntegerMatrix IntegerMatrix::identity(std::size_t n)
{
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.data_[i].emplace_back(i, 1);
    return m;
}

IntegerMatrix IntegerMatrix::from_dense(const std::vector<std::vector<Integer>>& dense)
{
    std::size_t cols = dense.empty() ? 0 : dense.front().size();
    IntegerMatrix m(dense.size(), cols);
    for (std::size_t r = 0; r < dense.size(); ++r) {
        if (dense[r].size() != cols)
            throw InputError("ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c)
            if (dense[r][c] != 0)
                m.data_[r].emplace_back(c, dense[r][c]);
    }
    return m;
}

IntegerMatrix IntegerMatrix::from_rows(std::initializer_list<std::initializer_list<long long>> rows)
{
    std::vector<std::vector<Integer>> dense;
    for (const auto& r : rows)
        dense.emplace_back(r.begin(), r.end());
    return from_dense(dense);
}

IntegerMatrix IntegerMatrix::diagonal(const std::vector<Integer>& diag, std::size_t rows, std::size_t cols)
{
    IntegerMatrix m(rows, cols);
    for (std::size_t i = 0; i < diag.size() && i < rows && i < cols; ++i)
        if (diag[i] != 0)
            m.data_[i].emplace_back(i, diag[i]);
    return m;
}

std::size_t IntegerMatrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& r : data_)
        n += r.size();
    return n;
}

bool IntegerMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Row& r) { return r.empty(); });
}

Integer IntegerMatrix::at(std::size_t r, std::size_t c) const
{
    const Row& row = data_.at(r);
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const Entry& e, std::size_t col) { return e.first < col; });
    if (it != row.end() && it->first == c)
        return it->second;
    return 0;
}

void IntegerMatrix::set(std::size_t r, std::size_t c, const Integer& value)
{
    if (r >= rows_ || c >= cols_)
        throw InternalError("IntegerMatrix::set out of range");
    Row& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const Entry& e, std::size_t col) { return e.first < col; });
    if (it != row.end() && it->first == c) {
        if (value == 0)
            row.erase(it);
        else
            it->second = value;
    } else if (value != 0) {
        row.insert(it, Entry{c, value});
    }
}

void IntegerMatrix::add_to(std::size_t r, std::size_t c, const Integer& value)
{
    if (value == 0)
        return;
    set(r, c, at(r, c) + value);
}

void IntegerMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor)
{
    if (factor == 0)
        return;
    data_[dst] = axpy(data_[dst], data_[src], factor);
}

void IntegerMatrix::swap_rows(std::size_t a, std::size_t b)
{
    std::swap(data_[a], data_[b]);
}

void IntegerMatrix::negate_row(std::size_t r)
{
    for (auto& e : data_[r])
        e.second = -e.second;
}

void IntegerMatrix::combine_rows(std::size_t i, std::size_t j, const Integer& a, const Integer& b,
                                 const Integer& c, const Integer& d)
{
    Row ri = linear2(data_[i], data_[j], a, b);
    Row rj = linear2(data_[i], data_[j], c, d);
    data_[i] = std::move(ri);
    data_[j] = std::move(rj);
}

void IntegerMatrix::permute_rows(const std::vector<std::size_t>& new_to_old)
{
    std::vector<Row> next(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        next[i] = std::move(data_[new_to_old[i]]);
    data_ = std::move(next);
}

IntegerMatrix IntegerMatrix::transpose() const
{
    IntegerMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [c, v] : data_[r])
            t.data_[c].emplace_back(r, v);
    return t;
}

IntegerMatrix IntegerMatrix::column_range(std::size_t begin, std::size_t end) const
{
    IntegerMatrix m(rows_, end - begin);
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [c, v] : data_[r])
            if (c >= begin && c < end)
                m.data_[r].emplace_back(c - begin, v);
    return m;
}

IntegerMatrix IntegerMatrix::row_range(std::size_t begin, std::size_t end) const
{
    IntegerMatrix m(end - begin, cols_);
    for (std::size_t r = begin; r < end; ++r)
        m.data_[r - begin] = data_[r];
    return m;
}

IntegerMatrix IntegerMatrix::select_columns(const std::vector<std::size_t>& columns) const
{
    std::vector<std::size_t> where(cols_, columns.size());
    for (std::size_t k = 0; k < columns.size(); ++k)
        where[columns[k]] = k;
    IntegerMatrix m(rows_, columns.size());
    for (std::size_t r = 0; r < rows_; ++r) {
        for (const auto& [c, v] : data_[r])
            if (where[c] < columns.size())
                m.data_[r].emplace_back(where[c], v);
        std::sort(m.data_[r].begin(), m.data_[r].end(),
                  [](const Entry& a, const Entry& b) { return a.first < b.first; });
    }
    return m;
}

IntegerMatrix IntegerMatrix::select_rows(const std::vector<std::size_t>& rows) const
{
    IntegerMatrix m(rows.size(), cols_);
    for (std::size_t k = 0; k < rows.size(); ++k)
        m.data_[k] = data_.at(rows[k]);
    return m;
}

IntegerMatrix IntegerMatrix::hstack(const IntegerMatrix& left, const IntegerMatrix& right)
{
    if (left.rows_ != right.rows_)
        throw InternalError("hstack: row mismatch");
    IntegerMatrix m(left.rows_, left.cols_ + right.cols_);
    for (std::size_t r = 0; r < left.rows_; ++r) {
        m.data_[r] = left.data_[r];
        for (const auto& [c, v] : right.data_[r])
            m.data_[r].emplace_back(c + left.cols_, v);
    }
    return m;
}

IntegerMatrix IntegerMatrix::vstack(const IntegerMatrix& top, const IntegerMatrix& bottom)
{
    if (top.cols_ != bottom.cols_)
        throw InternalError("vstack: column mismatch");
    IntegerMatrix m(top.rows_ + bottom.rows_, top.cols_);
    for (std::size_t r = 0; r < top.rows_; ++r)
        m.data_[r] = top.data_[r];
    for (std::size_t r = 0; r < bottom.rows_; ++r)
        m.data_[top.rows_ + r] = bottom.data_[r];
    return m;
}

std::vector<Integer> IntegerMatrix::apply(const std::vector<Integer>& x) const
{
    if (x.size() != cols_)
        throw InternalError("apply: dimension mismatch");
    std::vector<Integer> y(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [c, v] : data_[r])
            y[r] += v * x[c];
    return y;
}

std::vector<Integer> IntegerMatrix::column(std::size_t c) const
{
    std::vector<Integer> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        out[r] = at(r, c);
    return out;
}

std::vector<std::vector<Integer>> IntegerMatrix::to_dense() const
{
    std::vector<std::vector<Integer>> d(rows_, std::vector<Integer>(cols_));
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [c, v] : data_[r])
            d[r][c] = v;
    return d;
}

IntegerMatrix IntegerMatrix::reduced_mod(const Integer& m) const
{
    IntegerMatrix out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [c, v] : data_[r]) {
            Integer x = mod_positive(v, m);
            if (x != 0)
                out.data_[r].emplace_back(c, std::move(x));
        }
    return out;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw InternalError("matrix product: dimension mismatch");
    IntegerMatrix out(a.rows_, b.cols_);
    std::vector<Integer> acc(b.cols_);
    std::vector<char> touched(b.cols_, 0);
    std::vector<std::size_t> touched_list;
    for (std::size_t r = 0; r < a.rows_; ++r) {
        touched_list.clear();
        for (const auto& [k, av] : a.data_[r])
            for (const auto& [c, bv] : b.data_[k]) {
                if (!touched[c]) {
                    touched[c] = 1;
                    touched_list.push_back(c);
                }
                acc[c] += av * bv;
            }
        std::sort(touched_list.begin(), touched_list.end());
        for (std::size_t c : touched_list) {
            if (acc[c] != 0)
                out.data_[r].emplace_back(c, acc[c]);
            acc[c] = 0;
            touched[c] = 0;
        }
    }
    return out;
}

IntegerMatrix operator+(const IntegerMatrix& a, const IntegerMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw InternalError("matrix sum: dimension mismatch");
    IntegerMatrix out(a.rows_, a.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
        out.data_[r] = axpy(a.data_[r], b.data_[r], 1);
    return out;
}

IntegerMatrix operator-(const IntegerMatrix& a, const IntegerMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw InternalError("matrix difference: dimension mismatch");
    IntegerMatrix out(a.rows_, a.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
        out.data_[r] = axpy(a.data_[r], b.data_[r], -1);
    return out;
}

IntegerMatrix operator*(const Integer& s, const IntegerMatrix& a)
{
    IntegerMatrix out(a.rows_, a.cols_);
    if (s == 0)
        return out;
    for (std::size_t r = 0; r < a.rows_; ++r)
        for (const auto& [c, v] : a.data_[r])
            out.data_[r].emplace_back(c, s * v);
    return out;
}

Integer determinant(const IntegerMatrix& a)
{
    if (a.rows() != a.cols())
        throw InternalError("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0)
        return 1;
    auto m = a.to_dense();
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0)
                ++swap;
            if (swap == n)
                return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

IntegerMatrix column_matrix(const std::vector<Integer>& v)
{
    IntegerMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            m.set(i, 0, v[i]);
    return m;
}

} // namespace pecoh
