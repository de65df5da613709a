#pragma once

#include "pecoh/abelian.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pecoh {

/// Tower whose last `window` bonding maps were isomorphisms. This is a
/// heuristic certificate: later maps are not examined.
struct StabilizedLimit {
    AbelianGroup group;
    std::size_t level = 0;  ///< first level of the isomorphism window
    std::size_t window = 0;
    std::string caveat;
};

/// Rank-1 summand Z[1/p_1 ... p_s]; an empty prime list is Z itself.
struct LocalizedSummand {
    std::vector<Integer> inverted_primes;
    friend auto operator<=>(const LocalizedSummand&, const LocalizedSummand&) = default;
};

/// Direct limit of Z^r (+ torsion) under a single endomorphism, reduced to the
/// eventual image, where the matrix is invertible over Q.
struct EndoLimit {
    std::size_t rank = 0;
    IntegerMatrix matrix; ///< rank x rank, nonzero determinant
    /// Decomposition into rank-1 summands when one could be established.
    std::optional<std::vector<LocalizedSummand>> simplified;
    AbelianGroup torsion; ///< surviving torsion (a finite group)
};

struct UndeterminedLimit {
    std::string diagnostic;
    std::vector<AbelianGroup> trajectory;
};

struct LimitGroup {
    std::variant<StabilizedLimit, EndoLimit, UndeterminedLimit> value;

    bool is_stabilized() const { return std::holds_alternative<StabilizedLimit>(value); }
    bool is_endo() const { return std::holds_alternative<EndoLimit>(value); }
    bool is_undetermined() const { return std::holds_alternative<UndeterminedLimit>(value); }
    std::string kind_name() const;
};

/// Human-readable rendering: "Z ⊕ Z[1/2]", "Z^2 (stabilized ...)",
/// "limit of Z^2 under M = [[2, 1], [1, 1]]", ...
std::string to_string(const LimitGroup& g);

/// Limit of groups[0] -> groups[1] -> ...; Stabilized when the last `window`
/// maps are isomorphisms, Undetermined otherwise. Levels in the result are
/// reported as first_level + index.
LimitGroup direct_limit_sequence(const std::vector<AbelianGroup>& groups, const std::vector<GroupHom>& maps,
                                 std::size_t window, std::size_t first_level = 0);

/// Exact limit of G -> G -> G -> ... along one endomorphism.
LimitGroup direct_limit_endomorphism(const AbelianGroup& group, const GroupHom& endomorphism);

enum class GroupComparison { Equal, Distinct, Indeterminate };

std::string to_string(GroupComparison c);

/// Sound but incomplete isomorphism test between limit groups.
GroupComparison group_equal(const LimitGroup& a, const LimitGroup& b);

/// dim over F_p of L / pL for the torsion-free part L of the limit; nullopt
/// for undetermined limits.
std::optional<std::size_t> free_part_mod_p_dimension(const LimitGroup& g, std::int64_t p);

/// Rank over Q of the torsion-free part; nullopt for undetermined limits.
std::optional<std::size_t> rational_rank(const LimitGroup& g);

} // namespace pecoh
