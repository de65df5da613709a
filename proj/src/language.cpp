#include "pecoh/language.hpp"

#include "pecoh/errors.hpp"

#include <set>

namespace pecoh {

Grid::Grid(std::int64_t x0_, std::int64_t y0_, std::size_t width_, std::size_t height_)
    : x0(x0_), y0(y0_), width(width_), height(height_), data(width_ * height_, kNoTile)
{
}

Grid Grid::from_patch(const Patch& patch)
{
    if (patch.empty())
        return {};
    std::int64_t xa = patch.cells.begin()->first.x, xb = xa, ya = patch.cells.begin()->first.y, yb = ya;
    for (const auto& [pos, label] : patch.cells) {
        xa = std::min(xa, pos.x);
        xb = std::max(xb, pos.x);
        ya = std::min(ya, pos.y);
        yb = std::max(yb, pos.y);
    }
    Grid g(xa, ya, static_cast<std::size_t>(xb - xa + 1), static_cast<std::size_t>(yb - ya + 1));
    for (const auto& [pos, label] : patch.cells)
        g.set(pos.x, pos.y, label);
    return g;
}

TileId Grid::at(std::int64_t x, std::int64_t y) const
{
    if (x < x0 || y < y0 || x >= x0 + static_cast<std::int64_t>(width) || y >= y0 + static_cast<std::int64_t>(height))
        return kNoTile;
    return data[static_cast<std::size_t>(x - x0) + width * static_cast<std::size_t>(y - y0)];
}

void Grid::set(std::int64_t x, std::int64_t y, TileId label)
{
    data[static_cast<std::size_t>(x - x0) + width * static_cast<std::size_t>(y - y0)] = label;
}

Grid Grid::window(std::int64_t x, std::int64_t y, std::size_t w, std::size_t h) const
{
    Grid out(x, y, w, h);
    for (std::size_t j = 0; j < h; ++j)
        for (std::size_t i = 0; i < w; ++i)
            out.data[i + w * j] = at(x + static_cast<std::int64_t>(i), y + static_cast<std::int64_t>(j));
    return out;
}

bool Grid::complete() const
{
    for (TileId t : data)
        if (t == kNoTile)
            return false;
    return true;
}

Grid Grid::moved_to(std::int64_t x, std::int64_t y) const
{
    Grid out = *this;
    out.x0 = x;
    out.y0 = y;
    return out;
}

Patch Grid::to_patch(int dimension) const
{
    Patch p;
    p.dimension = dimension;
    for (std::size_t j = 0; j < height; ++j)
        for (std::size_t i = 0; i < width; ++i)
            if (TileId t = data[i + width * j]; t != kNoTile)
                p.cells[{x0 + static_cast<std::int64_t>(i), y0 + static_cast<std::int64_t>(j)}] = t;
    return p;
}

Grid substitute(const SubstitutionRule& rule, const Grid& grid)
{
    if (rule.dimension == 2) {
        const std::size_t b = rule.expansion;
        const auto sb = static_cast<std::int64_t>(b);
        Grid out(grid.x0 * sb, grid.y0 * sb, grid.width * b, grid.height * b);
        for (std::size_t j = 0; j < grid.height; ++j)
            for (std::size_t i = 0; i < grid.width; ++i) {
                const TileId t = grid.data[i + grid.width * j];
                for (std::size_t v = 0; v < b; ++v)
                    for (std::size_t u = 0; u < b; ++u)
                        out.data[(i * b + u) + out.width * (j * b + v)] =
                            t == kNoTile ? kNoTile : rule.block_at(t, u, v);
            }
        return out;
    }
    if (!grid.complete())
        throw PreconditionError("substitute: 1D window has gaps");
    std::int64_t start = 0;
    for (std::int64_t x = grid.x0; x < 0 && x < grid.x0 + static_cast<std::int64_t>(grid.width); ++x)
        start -= static_cast<std::int64_t>(rule.words[grid.at(x, 0)].size());
    std::vector<TileId> letters;
    for (TileId t : grid.data)
        letters.insert(letters.end(), rule.words[t].begin(), rule.words[t].end());
    Grid out(start, 0, letters.size(), 1);
    out.data = std::move(letters);
    return out;
}

namespace {

template <typename Visit>
void for_each_window(const Grid& g, std::size_t w, std::size_t h, Visit&& visit)
{
    if (g.width < w || g.height < h)
        return;
    for (std::size_t y = 0; y + h <= g.height; ++y)
        for (std::size_t x = 0; x + w <= g.width; ++x)
            visit(g.window(g.x0 + static_cast<std::int64_t>(x), g.y0 + static_cast<std::int64_t>(y), w, h).moved_to(0, 0));
}

} // namespace

LegalPatterns legal_patterns(const SubstitutionRule& rule, std::size_t window, const LanguageOptions& options)
{
    if (window < 2)
        throw PreconditionError("legal_patterns: window must be at least 2");
    const std::size_t w = window;
    const std::size_t h = rule.dimension == 2 ? window : 1;

    std::set<Grid> known;
    std::vector<Grid> frontier;
    auto admit = [&](Grid&& block) {
        if (block.complete() && known.insert(block).second)
            frontier.push_back(std::move(block));
    };

    for (TileId t = 0; t < rule.size(); ++t) {
        Grid seed(0, 0, 1, 1);
        seed.data[0] = t;
        std::size_t stalled = 0;
        while (seed.width < w || seed.height < h) {
            const std::size_t before = seed.data.size();
            seed = substitute(rule, seed);
            stalled = seed.data.size() == before ? stalled + 1 : 0;
            if (stalled > rule.size()) {
                // Length-preserving 1D rule: the only primitive case is a
                // single letter fixed by the substitution.
                if (rule.size() != 1)
                    throw PreconditionError("legal_patterns: substitution does not expand; rule is not primitive");
                seed = Grid(0, 0, w, 1);
                std::fill(seed.data.begin(), seed.data.end(), t);
            }
            if (seed.data.size() > options.block_budget)
                throw BudgetError("legal_patterns: seed iterate exceeds the budget");
        }
        for_each_window(seed, w, h, [&](Grid&& g) { admit(std::move(g)); });
    }

    std::size_t rounds = 0;
    bool confirming = false;
    while (true) {
        ++rounds;
        if (rounds > options.max_rounds)
            throw BudgetError("legal_patterns: no stabilization after " + std::to_string(options.max_rounds) +
                              " rounds");
        std::vector<Grid> sources;
        if (frontier.empty()) {
            // Second quiet round: re-substitute everything as a cross-check.
            sources.assign(known.begin(), known.end());
            confirming = true;
        } else {
            sources = std::move(frontier);
            confirming = false;
        }
        frontier.clear();
        for (const Grid& p : sources)
            for_each_window(substitute(rule, p), w, h, [&](Grid&& g) { admit(std::move(g)); });
        if (known.size() > options.block_budget)
            throw BudgetError("legal_patterns: " + std::to_string(known.size()) + " windows after " +
                              std::to_string(rounds) + " rounds exceed the budget");
        if (confirming && frontier.empty())
            break;
    }
    return {window, std::vector<Grid>(known.begin(), known.end()), rounds};
}

} // namespace pecoh
