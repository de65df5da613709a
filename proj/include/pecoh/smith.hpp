#pragma once

#include "pecoh/matrix.hpp"

#include <optional>

namespace pecoh {

/// Which unimodular transforms smith_normal_form should accumulate.
struct SmithOptions {
    bool left = true;
    bool left_inverse = false;
    bool right = true;
    bool right_inverse = false;
};

/// U * A * V == D with U, V unimodular and D = diag(d_1, ..., d_r, 0, ...),
/// d_1 | d_2 | ... | d_r, all d_i > 0.
///
/// Transforms that were not requested are left as 0x0 matrices.
struct SmithDecomposition {
    IntegerMatrix U;
    IntegerMatrix D;
    IntegerMatrix V;
    std::optional<IntegerMatrix> U_inverse;
    std::optional<IntegerMatrix> V_inverse;
    std::vector<Integer> invariant_factors;

    std::size_t rank() const { return invariant_factors.size(); }
};

/// Exact Smith normal form by sparse elimination. The pivot is always an
/// entry of least absolute value (ties broken by Markowitz cost, then by
/// position) so the output is a deterministic function of the input.
SmithDecomposition smith_normal_form(const IntegerMatrix& a, const SmithOptions& options = {});

/// Z-basis of the integer kernel {x : A x = 0}, together with the linear map
/// that recovers basis coordinates of any kernel vector.
struct KernelLattice {
    IntegerMatrix basis;       ///< cols(A) x k
    IntegerMatrix coordinates; ///< k x cols(A); coordinates * (basis * y) == y

    std::size_t dimension() const { return basis.cols(); }
};

KernelLattice kernel_lattice(const IntegerMatrix& a);

/// Z-basis (as columns) of the lattice spanned by the columns of `a`.
IntegerMatrix image_lattice_basis(const IntegerMatrix& a);

/// Solves basis * x == v for a full-column-rank `basis`; nullopt when v is
/// not an integer combination of the columns.
std::optional<std::vector<Integer>> solve_in_lattice(const IntegerMatrix& basis, const std::vector<Integer>& v);

} // namespace pecoh
