#pragma once

#include "pecoh/integer.hpp"

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace pecoh {

/// Integer matrix with arbitrary-precision entries, stored as sorted sparse
/// rows. Semantics are those of a dense rows x cols matrix; absent entries
/// are zero and stored entries are never zero.
class IntegerMatrix {
public:
    using Entry = std::pair<std::size_t, Integer>;
    using Row = std::vector<Entry>;

    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols);

    static IntegerMatrix identity(std::size_t n);
    static IntegerMatrix from_dense(const std::vector<std::vector<Integer>>& dense);
    static IntegerMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows);
    static IntegerMatrix diagonal(const std::vector<Integer>& diag, std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nonzeros() const;
    bool is_zero() const;

    Integer at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Integer& value);
    void add_to(std::size_t r, std::size_t c, const Integer& value);
    const Row& row(std::size_t r) const { return data_[r]; }

    // Elementary row operations.
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
    void swap_rows(std::size_t a, std::size_t b);
    void negate_row(std::size_t r);
    /// Replaces rows (i, j) by (a*ri + b*rj, c*ri + d*rj).
    void combine_rows(std::size_t i, std::size_t j, const Integer& a, const Integer& b,
                      const Integer& c, const Integer& d);
    void permute_rows(const std::vector<std::size_t>& new_to_old);

    IntegerMatrix transpose() const;
    IntegerMatrix column_range(std::size_t begin, std::size_t end) const;
    IntegerMatrix row_range(std::size_t begin, std::size_t end) const;
    IntegerMatrix select_columns(const std::vector<std::size_t>& columns) const;
    IntegerMatrix select_rows(const std::vector<std::size_t>& rows) const;
    static IntegerMatrix hstack(const IntegerMatrix& left, const IntegerMatrix& right);
    static IntegerMatrix vstack(const IntegerMatrix& top, const IntegerMatrix& bottom);

    std::vector<Integer> apply(const std::vector<Integer>& x) const;
    std::vector<Integer> column(std::size_t c) const;
    std::vector<std::vector<Integer>> to_dense() const;

    /// Entries reduced into [0, m).
    IntegerMatrix reduced_mod(const Integer& m) const;

    friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
    friend IntegerMatrix operator+(const IntegerMatrix& a, const IntegerMatrix& b);
    friend IntegerMatrix operator-(const IntegerMatrix& a, const IntegerMatrix& b);
    friend IntegerMatrix operator*(const Integer& s, const IntegerMatrix& a);
    friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Row> data_;
};

/// Exact determinant by fraction-free (Bareiss) elimination. Square only.
Integer determinant(const IntegerMatrix& a);

/// A vector as a one-column matrix.
IntegerMatrix column_matrix(const std::vector<Integer>& v);

} // namespace pecoh
