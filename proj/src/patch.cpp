#include "pecoh/patch.hpp"

#include "pecoh/errors.hpp"

#include <cmath>
#include <queue>
#include <set>

namespace pecoh {

Patch Patch::word(const std::vector<TileId>& letters)
{
    Patch p;
    for (std::size_t i = 0; i < letters.size(); ++i)
        p.cells[{static_cast<std::int64_t>(i), 0}] = letters[i];
    return p;
}

Patch Patch::rows(const std::vector<std::vector<TileId>>& top_to_bottom)
{
    Patch p;
    p.dimension = 2;
    const auto height = static_cast<std::int64_t>(top_to_bottom.size());
    for (std::int64_t r = 0; r < height; ++r)
        for (std::size_t c = 0; c < top_to_bottom[r].size(); ++c)
            p.cells[{static_cast<std::int64_t>(c), height - 1 - r}] = top_to_bottom[r][c];
    return p;
}

Patch Patch::single(int dimension, TileId label)
{
    Patch p;
    p.dimension = dimension;
    p.cells[{0, 0}] = label;
    return p;
}

std::optional<TileId> Patch::at(Position p) const
{
    auto it = cells.find(p);
    if (it == cells.end())
        return std::nullopt;
    return it->second;
}

bool Patch::is_connected() const
{
    if (cells.empty())
        return true;
    std::set<Position> seen{cells.begin()->first};
    std::queue<Position> todo;
    todo.push(cells.begin()->first);
    while (!todo.empty()) {
        const Position p = todo.front();
        todo.pop();
        const Position steps[] = {{p.x + 1, p.y}, {p.x - 1, p.y}, {p.x, p.y + 1}, {p.x, p.y - 1}};
        for (const auto& q : steps)
            if (cells.contains(q) && seen.insert(q).second)
                todo.push(q);
    }
    return seen.size() == cells.size();
}

Patch Patch::translated(std::int64_t dx, std::int64_t dy) const
{
    Patch out;
    out.dimension = dimension;
    for (const auto& [pos, label] : cells)
        out.cells.emplace_hint(out.cells.end(), Position{pos.x + dx, pos.y + dy}, label);
    if (mark)
        out.mark = Position{mark->x + dx, mark->y + dy};
    return out;
}

Patch Patch::canonical() const
{
    if (cells.empty())
        return *this;
    const Position least = cells.begin()->first;
    return translated(-least.x, -least.y);
}

std::vector<TileId> Patch::letters() const
{
    std::vector<TileId> out;
    for (const auto& [pos, label] : cells)
        out.push_back(label);
    return out;
}

std::string Patch::render(const SubstitutionRule& rule) const
{
    std::string out;
    if (dimension == 1) {
        for (const auto& [pos, label] : cells)
            out += rule.alphabet[label];
        return out;
    }
    if (cells.empty())
        return out;
    std::int64_t x0 = cells.begin()->first.x, x1 = x0, y0 = cells.begin()->first.y, y1 = y0;
    for (const auto& [pos, label] : cells) {
        x0 = std::min(x0, pos.x);
        x1 = std::max(x1, pos.x);
        y0 = std::min(y0, pos.y);
        y1 = std::max(y1, pos.y);
    }
    for (std::int64_t y = y1; y >= y0; --y) {
        if (y != y1)
            out += '/';
        for (std::int64_t x = x0; x <= x1; ++x) {
            auto label = at({x, y});
            out += label ? rule.alphabet[*label] : std::string(".");
        }
    }
    return out;
}

std::string canonical_label(const Patch& pointed)
{
    if (!pointed.mark)
        throw PreconditionError("canonical_label: patch has no marked cell");
    const Patch c = pointed.canonical();
    const auto mark_label = c.at(*c.mark);
    if (!mark_label)
        throw PreconditionError("canonical_label: marked cell is not occupied");
    std::string out = std::to_string(*mark_label) + "@" + std::to_string(c.mark->x);
    if (c.dimension == 2)
        out += "," + std::to_string(c.mark->y);
    out += "|";
    bool first = true;
    for (const auto& [pos, label] : c.cells) {
        if (!first)
            out += ' ';
        first = false;
        out += std::to_string(pos.x);
        if (c.dimension == 2)
            out += "," + std::to_string(pos.y);
        out += ":" + std::to_string(label);
    }
    return out;
}

Patch expand_patch(const SubstitutionRule& rule, const Patch& patch, std::size_t iterations, std::size_t budget)
{
    if (patch.dimension != rule.dimension)
        throw PreconditionError("expand_patch: patch and rule dimensions differ");
    Patch current = patch.canonical();
    for (std::size_t step = 0; step < iterations; ++step) {
        std::size_t next_size = 0;
        for (const auto& [pos, label] : current.cells)
            next_size += rule.image_size(label);
        if (next_size > budget)
            throw BudgetError("expand_patch: " + std::to_string(next_size) + " tiles after iteration " +
                              std::to_string(step + 1) + " exceed the budget of " + std::to_string(budget));
        Patch next;
        next.dimension = rule.dimension;
        if (rule.dimension == 1) {
            if (!current.is_connected())
                throw PreconditionError("expand_patch: 1D patch must be a contiguous word");
            std::int64_t x = 0;
            for (const auto& [pos, label] : current.cells) {
                if (current.mark && *current.mark == pos)
                    next.mark = Position{x, 0};
                for (TileId t : rule.words[label])
                    next.cells[{x++, 0}] = t;
            }
        } else {
            const auto b = static_cast<std::int64_t>(rule.expansion);
            for (const auto& [pos, label] : current.cells)
                for (std::int64_t j = 0; j < b; ++j)
                    for (std::int64_t i = 0; i < b; ++i)
                        next.cells[{b * pos.x + i, b * pos.y + j}] = rule.block_at(label, i, j);
            if (current.mark)
                next.mark = Position{b * current.mark->x, b * current.mark->y};
        }
        current = next.canonical();
    }
    return current;
}

Corona corona(const SubstitutionRule& rule, const Patch& host, Position center, std::size_t level)
{
    const auto n = static_cast<std::int64_t>(level);
    const std::int64_t reach_y = rule.dimension == 2 ? n : 0;
    Patch out;
    out.dimension = rule.dimension;
    for (std::int64_t y = center.y - reach_y; y <= center.y + reach_y; ++y)
        for (std::int64_t x = center.x - n; x <= center.x + n; ++x) {
            auto label = host.at({x, y});
            if (!label)
                throw PreconditionError("corona undetermined: level " + std::to_string(level) +
                                        " corona needs a tile at (" + std::to_string(x) + "," + std::to_string(y) +
                                        ")");
            out.cells[{x, y}] = *label;
        }
    out.mark = center;
    return {center, level, out.canonical()};
}

bool t_equivalent(const Patch& first, const Patch& second, std::size_t radius)
{
    auto neighbourhood = [radius](const Patch& p) {
        if (!p.mark)
            throw PreconditionError("context undetermined: patch has no marked cell");
        SubstitutionRule shape;
        shape.dimension = p.dimension;
        try {
            return corona(shape, p, *p.mark, radius).patch;
        } catch (const PreconditionError&) {
            throw PreconditionError("context undetermined: patch does not contain the radius " +
                                    std::to_string(radius) + " corona of its mark");
        }
    };
    if (first.dimension != second.dimension)
        return false;
    return canonical_label(neighbourhood(first)) == canonical_label(neighbourhood(second));
}

double RadiusBound::value() const
{
    return static_cast<double>(multiple) * (dimension == 1 ? 1.0 : std::sqrt(2.0));
}

std::string RadiusBound::to_string() const
{
    if (dimension == 1)
        return std::to_string(multiple);
    return std::to_string(multiple) + "*sqrt(2)";
}

RadiusBound pe_radius_bound(const SubstitutionRule& rule, std::size_t collar)
{
    return {static_cast<std::int64_t>(collar) + 1, rule.dimension};
}

} // namespace pecoh
