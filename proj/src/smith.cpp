#include "pecoh/smith.hpp"

#include "pecoh/errors.hpp"

#include <set>
#include <tuple>

namespace pecoh {

namespace {

class SmithEngine {
public:
    SmithEngine(const IntegerMatrix& a, const SmithOptions& options)
        : a_(a), options_(options), col_rows_(a.cols()), row_active_(a.rows(), true), col_active_(a.cols(), true)
    {
        for (std::size_t r = 0; r < a_.rows(); ++r)
            for (const auto& e : a_.row(r))
                col_rows_[e.first].insert(r);
        if (options_.left)
            u_ = IntegerMatrix::identity(a.rows());
        if (options_.left_inverse)
            u_inv_t_ = IntegerMatrix::identity(a.rows());
        if (options_.right)
            v_t_ = IntegerMatrix::identity(a.cols());
        if (options_.right_inverse)
            v_inv_ = IntegerMatrix::identity(a.cols());
    }

    SmithDecomposition run()
    {
        while (auto pivot = choose_pivot()) {
            auto [r, c] = *pivot;
            eliminate(r, c);
        }
        return finish();
    }

private:
    std::optional<std::pair<std::size_t, std::size_t>> choose_pivot() const
    {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        Integer best_abs;
        std::size_t best_cost = 0;
        for (std::size_t r = 0; r < a_.rows(); ++r) {
            if (!row_active_[r])
                continue;
            const auto& row = a_.row(r);
            for (const auto& [c, v] : row) {
                Integer mag = abs(v);
                std::size_t cost = (row.size() - 1) * (col_rows_[c].size() - 1);
                if (!best || mag < best_abs || (mag == best_abs && cost < best_cost)) {
                    best = {r, c};
                    best_abs = mag;
                    best_cost = cost;
                }
            }
        }
        return best;
    }

    // row_i += q * row_r
    void row_axpy(std::size_t i, std::size_t r, const Integer& q)
    {
        if (q == 0)
            return;
        for (const auto& e : a_.row(i))
            col_rows_[e.first].erase(i);
        a_.add_row_multiple(i, r, q);
        for (const auto& e : a_.row(i))
            col_rows_[e.first].insert(i);
        if (options_.left)
            u_.add_row_multiple(i, r, q);
        if (options_.left_inverse)
            u_inv_t_.add_row_multiple(r, i, -q);
    }

    // col_j += q * col_c
    void col_axpy(std::size_t j, std::size_t c, const Integer& q)
    {
        if (q == 0)
            return;
        std::vector<std::size_t> rows(col_rows_[c].begin(), col_rows_[c].end());
        for (std::size_t i : rows) {
            a_.add_to(i, j, q * a_.at(i, c));
            if (a_.at(i, j) == 0)
                col_rows_[j].erase(i);
            else
                col_rows_[j].insert(i);
        }
        if (options_.right)
            v_t_.add_row_multiple(j, c, q);
        if (options_.right_inverse)
            v_inv_.add_row_multiple(c, j, -q);
    }

    void eliminate(std::size_t r, std::size_t c)
    {
        for (;;) {
            const Integer pivot = a_.at(r, c);
            bool residue = false;
            std::vector<std::size_t> rows(col_rows_[c].begin(), col_rows_[c].end());
            for (std::size_t i : rows) {
                if (i == r)
                    continue;
                row_axpy(i, r, -floor_div(a_.at(i, c), pivot));
                residue = residue || a_.at(i, c) != 0;
            }
            std::vector<std::size_t> cols;
            for (const auto& e : a_.row(r))
                if (e.first != c)
                    cols.push_back(e.first);
            for (std::size_t j : cols) {
                col_axpy(j, c, -floor_div(a_.at(r, j), pivot));
                residue = residue || a_.at(r, j) != 0;
            }
            if (!residue)
                break;
            // A nonzero remainder is strictly smaller than the pivot; move there.
            Integer best = abs(pivot);
            std::size_t nr = r, nc = c;
            for (std::size_t i : col_rows_[c])
                if (i != r && abs(a_.at(i, c)) < best) {
                    best = abs(a_.at(i, c));
                    nr = i;
                    nc = c;
                }
            for (const auto& [j, v] : a_.row(r))
                if (j != c && abs(v) < best) {
                    best = abs(v);
                    nr = r;
                    nc = j;
                }
            r = nr;
            c = nc;
        }
        if (a_.at(r, c) < 0) {
            a_.negate_row(r);
            if (options_.left)
                u_.negate_row(r);
            if (options_.left_inverse)
                u_inv_t_.negate_row(r);
        }
        pivots_.emplace_back(r, c);
        row_active_[r] = false;
        col_active_[c] = false;
    }

    SmithDecomposition finish()
    {
        const std::size_t m = a_.rows(), n = a_.cols(), rank = pivots_.size();
        std::vector<std::size_t> row_order, col_order;
        std::vector<Integer> diag;
        for (const auto& [r, c] : pivots_) {
            row_order.push_back(r);
            col_order.push_back(c);
            diag.push_back(a_.at(r, c));
        }
        for (std::size_t r = 0; r < m; ++r)
            if (row_active_[r])
                row_order.push_back(r);
        for (std::size_t c = 0; c < n; ++c)
            if (col_active_[c])
                col_order.push_back(c);
        if (options_.left)
            u_.permute_rows(row_order);
        if (options_.left_inverse)
            u_inv_t_.permute_rows(row_order);
        if (options_.right)
            v_t_.permute_rows(col_order);
        if (options_.right_inverse)
            v_inv_.permute_rows(col_order);

        // Enforce d_i | d_j via diag(a, b) -> diag(gcd, lcm).
        for (std::size_t i = 0; i < rank; ++i) {
            for (std::size_t j = i + 1; j < rank; ++j) {
                if (diag[j] % diag[i] == 0)
                    continue;
                const Integer a = diag[i], b = diag[j];
                const ExtendedGcd eg = extended_gcd(a, b);
                const Integer& g = eg.g;
                if (options_.right)
                    v_t_.add_row_multiple(i, j, 1);
                if (options_.right_inverse)
                    v_inv_.add_row_multiple(j, i, -1);
                if (options_.left)
                    u_.combine_rows(i, j, eg.s, eg.t, -(b / g), a / g);
                if (options_.left_inverse)
                    u_inv_t_.combine_rows(i, j, a / g, b / g, -eg.t, eg.s);
                const Integer shift = eg.t * b / g;
                if (options_.right)
                    v_t_.add_row_multiple(j, i, -shift);
                if (options_.right_inverse)
                    v_inv_.add_row_multiple(i, j, shift);
                diag[i] = g;
                diag[j] = a / g * b;
            }
        }

        SmithDecomposition out;
        out.D = IntegerMatrix::diagonal(diag, m, n);
        out.invariant_factors = diag;
        if (options_.left)
            out.U = std::move(u_);
        if (options_.right)
            out.V = v_t_.transpose();
        if (options_.left_inverse)
            out.U_inverse = u_inv_t_.transpose();
        if (options_.right_inverse)
            out.V_inverse = std::move(v_inv_);
        return out;
    }

    IntegerMatrix a_;
    SmithOptions options_;
    std::vector<std::set<std::size_t>> col_rows_;
    std::vector<bool> row_active_;
    std::vector<bool> col_active_;
    std::vector<std::pair<std::size_t, std::size_t>> pivots_;
    IntegerMatrix u_;       // U
    IntegerMatrix u_inv_t_; // transpose of U^-1
    IntegerMatrix v_t_;     // transpose of V
    IntegerMatrix v_inv_;   // V^-1
};

} // namespace

SmithDecomposition smith_normal_form(const IntegerMatrix& a, const SmithOptions& options)
{
    return SmithEngine(a, options).run();
}

KernelLattice kernel_lattice(const IntegerMatrix& a)
{
    SmithOptions opts;
    opts.left = false;
    opts.right = true;
    opts.right_inverse = true;
    SmithDecomposition snf = smith_normal_form(a, opts);
    const std::size_t r = snf.rank(), n = a.cols();
    KernelLattice k;
    k.basis = snf.V.column_range(r, n);
    k.coordinates = snf.V_inverse->row_range(r, n);
    return k;
}

IntegerMatrix image_lattice_basis(const IntegerMatrix& a)
{
    SmithOptions opts;
    opts.left = false;
    opts.left_inverse = true;
    opts.right = false;
    SmithDecomposition snf = smith_normal_form(a, opts);
    IntegerMatrix basis = snf.U_inverse->column_range(0, snf.rank());
    IntegerMatrix scaled = basis.transpose();
    for (std::size_t i = 0; i < snf.rank(); ++i)
        if (snf.invariant_factors[i] != 1) {
            IntegerMatrix::Row row = scaled.row(i);
            for (auto& e : row)
                scaled.set(i, e.first, e.second * snf.invariant_factors[i]);
        }
    return scaled.transpose();
}

std::optional<std::vector<Integer>> solve_in_lattice(const IntegerMatrix& basis, const std::vector<Integer>& v)
{
    SmithDecomposition snf = smith_normal_form(basis);
    if (snf.rank() != basis.cols())
        throw InternalError("solve_in_lattice: basis is not of full column rank");
    std::vector<Integer> uv = snf.U.apply(v);
    std::vector<Integer> y(basis.cols());
    for (std::size_t i = 0; i < uv.size(); ++i) {
        if (i < snf.rank()) {
            if (uv[i] % snf.invariant_factors[i] != 0)
                return std::nullopt;
            y[i] = uv[i] / snf.invariant_factors[i];
        } else if (uv[i] != 0) {
            return std::nullopt;
        }
    }
    return snf.V.apply(y);
}

} // namespace pecoh
