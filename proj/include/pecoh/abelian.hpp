#pragma once

#include "pecoh/matrix.hpp"

#include <string>
#include <vector>

namespace pecoh {

/// Finitely generated abelian group Z^free_rank + Z/t_1 + ... + Z/t_s in
/// invariant-factor form: every t_i >= 2 and t_i | t_{i+1}.
///
/// Generator order used by every coordinate vector in this library: the
/// torsion generators first (in invariant-factor order), then the free ones.
struct AbelianGroup {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;

    /// Canonical group for Z^free_rank + sum Z/f over arbitrary f >= 0
    /// (f == 0 contributes a free summand, f == 1 nothing).
    static AbelianGroup from_factors(std::size_t free_rank, const std::vector<Integer>& factors);

    std::size_t generator_count() const { return free_rank + torsion.size(); }
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    bool is_finite() const { return free_rank == 0; }
    /// Order of the torsion subgroup.
    Integer torsion_order() const;
    /// Relation order of generator i (0 for free generators).
    Integer order_of_generator(std::size_t i) const;
    /// Number of invariant factors divisible by p.
    std::size_t torsion_count_divisible_by(const Integer& p) const;

    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

/// Renders e.g. "Z^2", "Z/2 ⊕ Z/4", "Z ⊕ Z/3", "0".
std::string to_string(const AbelianGroup& g);

/// Homomorphism between groups in the generator convention above. Entries of
/// rows belonging to torsion target generators are kept reduced mod t_i.
struct GroupHom {
    AbelianGroup source;
    AbelianGroup target;
    IntegerMatrix matrix; ///< target.generator_count() x source.generator_count()

    /// Each source relation maps into the target relations.
    bool is_well_defined() const;
    bool is_isomorphism() const;
    bool is_endomorphism() const { return source == target; }
    std::vector<Integer> apply(const std::vector<Integer>& coords) const;
};

GroupHom make_group_hom(AbelianGroup source, AbelianGroup target, IntegerMatrix matrix);
GroupHom identity_hom(const AbelianGroup& g);
/// second after first.
GroupHom compose(const GroupHom& second, const GroupHom& first);

/// Reduces coordinates of an element into canonical range (torsion mod t_i).
std::vector<Integer> reduce_coordinates(const AbelianGroup& g, std::vector<Integer> coords);

} // namespace pecoh
