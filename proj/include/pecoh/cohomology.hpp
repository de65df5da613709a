#pragma once

#include "pecoh/abelian.hpp"
#include "pecoh/matrix.hpp"

#include <string>
#include <vector>

namespace pecoh {

/// Coefficient ring for cellular cohomology.
struct Coefficients {
    enum class Kind { Integers, Modular, Rationals };
    Kind kind = Kind::Integers;
    Integer modulus = 0; ///< k >= 2 for Kind::Modular

    static Coefficients integers() { return {}; }
    static Coefficients modular(const Integer& k);
    static Coefficients rationals() { return {Kind::Rationals, 0}; }

    /// Parses "int", "rat" or "mod:k".
    static Coefficients parse(const std::string& text);

    friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

std::string to_string(const Coefficients& c);

/// Cochain complex C^0 -> C^1 -> ... -> C^d of free abelian groups given by
/// integer coboundary matrices; coboundary[k] has shape
/// cell_counts[k+1] x cell_counts[k].
struct CochainComplex {
    std::vector<std::size_t> cell_counts;
    std::vector<IntegerMatrix> coboundary;

    /// Builds the cellular cochain complex dual to boundary maps
    /// boundary[k-1] : C_k -> C_{k-1} (k = 1..d).
    static CochainComplex from_boundaries(std::vector<std::size_t> cell_counts,
                                          const std::vector<IntegerMatrix>& boundary);

    std::size_t top_degree() const { return cell_counts.empty() ? 0 : cell_counts.size() - 1; }

    /// Coboundary out of degree k (a zero matrix in the top degree).
    IntegerMatrix coboundary_from(std::size_t k) const;

    /// Throws PreconditionError naming the first degree where
    /// coboundary[k+1] * coboundary[k] != 0, or on shape mismatch.
    void verify() const;
};

/// H^k in one degree, with the cocycle data needed for induced maps.
///
/// `group` is the abstract group; over Q only `free_rank` is meaningful and
/// denotes the vector-space dimension. Generator coordinates follow the
/// AbelianGroup convention (torsion first, then free).
class DegreeCohomology {
public:
    std::size_t degree = 0;
    Coefficients coefficients;
    AbelianGroup group;
    /// Cocycle representatives of the group generators, one per column.
    IntegerMatrix generators;

    /// Canonical coordinates of the class of a cocycle (torsion reduced).
    std::vector<Integer> coordinates(const std::vector<Integer>& cocycle) const;
    /// True when the vector satisfies the cocycle condition for these coefficients.
    bool is_cocycle(const std::vector<Integer>& cochain) const;

private:
    friend class CohomologyBuilder;
    IntegerMatrix coboundary_;      // out of this degree
    IntegerMatrix lattice_coords_;  // cocycle lattice coordinates, cols m (+ q for modular)
    IntegerMatrix snf_left_;        // rows: canonical generator order, incl. trivial ones
    std::vector<std::size_t> kept_; // rows of snf_left_ that survive (order != 1)
};

struct CohomologyResult {
    Coefficients coefficients;
    std::vector<DegreeCohomology> degrees;

    const AbelianGroup& group(std::size_t k) const { return degrees.at(k).group; }
};

/// Cellular cohomology H^k = ker delta_k / im delta_{k-1} for k = 0..d.
CohomologyResult cohomology(const CochainComplex& complex, const Coefficients& coefficients);

/// Renders one degree, e.g. "Z^2", "Q^2", "Z/2".
std::string group_string(const DegreeCohomology& h);

/// Map H^k(Y) -> H^k(X) induced by a cellular map X -> Y whose degree-k chain
/// matrix is `chain_map` (cells of Y x cells of X). The pullback of cochains
/// is the transpose of the chain matrix.
GroupHom induced_map(const IntegerMatrix& chain_map, const DegreeCohomology& target_cohomology,
                           const DegreeCohomology& source_cohomology);

} // namespace pecoh
