#pragma once

#include "pecoh/integer.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace pecoh {

/// Finite group given by its Cayley table; axioms are checked on construction.
class FiniteGroup {
public:
    /// table[a][b] = a * b. Throws InputError when the table is not a group.
    FiniteGroup(std::vector<std::string> names, std::vector<std::vector<std::size_t>> table);

    static FiniteGroup cyclic(std::size_t order);
    /// Symmetries of the regular n-gon, order 2n.
    static FiniteGroup dihedral(std::size_t n);
    /// Permutations of {1..n} in lexicographic one-line order, n <= 5.
    static FiniteGroup symmetric(std::size_t n);
    /// {"elements": [...], "table": [[...], ...]} with names or indices.
    static FiniteGroup from_json(const nlohmann::json& doc);
    /// "cyclic:k", "dihedral:n", "sym:n", or a path to a Cayley-table file.
    static FiniteGroup parse_spec(const std::string& spec);

    std::size_t order() const { return names_.size(); }
    std::size_t identity() const { return identity_; }
    std::size_t multiply(std::size_t a, std::size_t b) const { return table_[a][b]; }
    std::size_t inverse(std::size_t a) const { return inverse_[a]; }
    const std::string& name(std::size_t a) const { return names_[a]; }
    bool is_abelian() const;
    std::size_t element_order(std::size_t a) const;
    /// Invariant factors of an abelian group (empty for the trivial group).
    /// Throws PreconditionError when the group is not abelian.
    std::vector<Integer> abelian_invariants() const;
    const std::string& description() const { return description_; }

private:
    std::vector<std::string> names_;
    std::vector<std::vector<std::size_t>> table_;
    std::vector<std::size_t> inverse_;
    std::size_t identity_ = 0;
    std::string description_;
};

} // namespace pecoh
