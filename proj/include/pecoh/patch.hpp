#pragma once

#include "pecoh/substitution.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pecoh {

/// Integer grid position of a unit tile (lower-left corner). 1D uses y = 0.
struct Position {
    std::int64_t x = 0;
    std::int64_t y = 0;
    friend auto operator<=>(const Position&, const Position&) = default;
};

inline constexpr std::size_t kDefaultPatchBudget = 4'000'000;

/// Finite labeled fragment of a tiling, optionally pointed by a marked cell.
struct Patch {
    int dimension = 1;
    std::map<Position, TileId> cells;
    std::optional<Position> mark;

    /// 1D word placed at positions 0..n-1.
    static Patch word(const std::vector<TileId>& letters);
    /// 2D rows listed top to bottom, placed with the bottom-left tile at the origin.
    static Patch rows(const std::vector<std::vector<TileId>>& top_to_bottom);
    static Patch single(int dimension, TileId label);

    std::optional<TileId> at(Position p) const;
    std::size_t size() const { return cells.size(); }
    bool empty() const { return cells.empty(); }
    /// Connected through shared faces (edge adjacency in 2D).
    bool is_connected() const;
    Patch translated(std::int64_t dx, std::int64_t dy) const;
    /// Translate with the least occupied position at the origin.
    Patch canonical() const;
    /// Labels in position order, for 1D patches.
    std::vector<TileId> letters() const;
    /// 1D: concatenated labels; 2D: rows top to bottom, '/' separated.
    std::string render(const SubstitutionRule& rule) const;
    friend bool operator==(const Patch&, const Patch&) = default;
};

/// Translation-invariant byte string identifying a pointed patch. Throws
/// PreconditionError when the patch has no mark.
std::string canonical_label(const Patch& pointed);

/// Applies the substitution `iterations` times. Throws BudgetError when the
/// result would exceed `budget` tiles.
Patch expand_patch(const SubstitutionRule& rule, const Patch& patch, std::size_t iterations,
                   std::size_t budget = kDefaultPatchBudget);

struct Corona {
    Position center;
    std::size_t level = 0;
    /// Canonical, pointed at the center tile.
    Patch patch;
};

/// Closed-star corona of the given level: the square block of Chebyshev
/// radius `level` around the center (an interval in 1D). Throws
/// PreconditionError "corona undetermined" when the host lacks a tile of it.
Corona corona(const SubstitutionRule& rule, const Patch& host, Position center, std::size_t level);

/// True iff the level-r coronas around the two marks are translates. Throws
/// PreconditionError "context undetermined" if either is incomplete.
bool t_equivalent(const Patch& first, const Patch& second, std::size_t radius);

/// (n + 1) * L with L the tile diameter (1 in 1D, sqrt(2) in 2D), kept exact.
struct RadiusBound {
    std::int64_t multiple = 0;
    int dimension = 1;
    double value() const;
    /// "3" in 1D, "2*sqrt(2)" in 2D.
    std::string to_string() const;
};

RadiusBound pe_radius_bound(const SubstitutionRule& rule, std::size_t collar);

} // namespace pecoh
