#pragma once

#include "pecoh/patch.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace pecoh {

inline constexpr TileId kNoTile = std::numeric_limits<TileId>::max();

/// Dense rectangular window of a tiling with an absolute origin. Cells not
/// known to the window hold kNoTile. 1D grids have height 1 and y0 = 0.
struct Grid {
    std::int64_t x0 = 0;
    std::int64_t y0 = 0;
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<TileId> data; ///< index (x - x0) + width * (y - y0)

    Grid() = default;
    Grid(std::int64_t x0, std::int64_t y0, std::size_t width, std::size_t height);
    static Grid from_patch(const Patch& patch);

    TileId at(std::int64_t x, std::int64_t y) const;
    void set(std::int64_t x, std::int64_t y, TileId label);
    /// Sub-window in absolute coordinates; positions outside read kNoTile.
    Grid window(std::int64_t x, std::int64_t y, std::size_t w, std::size_t h) const;
    bool complete() const;
    Grid moved_to(std::int64_t x, std::int64_t y) const;
    Patch to_patch(int dimension) const;

    friend auto operator<=>(const Grid&, const Grid&) = default;
};

/// One application of the substitution. 2D: tile (x, y) becomes the block at
/// (Bx, By). 1D: the image of the tile at x = 0 starts at 0 (the grid must be
/// complete).
Grid substitute(const SubstitutionRule& rule, const Grid& grid);

struct LanguageOptions {
    std::size_t max_rounds = 200;
    std::size_t block_budget = 2'000'000;
};

/// Every legal window of side `window` (w x w in 2D, length w in 1D),
/// origin at zero, sorted.
struct LegalPatterns {
    std::size_t window = 0;
    std::vector<Grid> blocks;
    std::size_t rounds = 0;
};

/// Closure of the windows of long iterates of every letter under "substitute
/// and take every sub-window", stopped once two consecutive rounds add
/// nothing. Requires window >= 2. Throws BudgetError naming the round count.
LegalPatterns legal_patterns(const SubstitutionRule& rule, std::size_t window, const LanguageOptions& options = {});

} // namespace pecoh
