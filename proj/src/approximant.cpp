#include "pecoh/approximant.hpp"

#include "pecoh/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace pecoh {

namespace {

struct Rect {
    std::int64_t x0, y0, x1, y1;
    std::size_t width() const { return static_cast<std::size_t>(x1 - x0 + 1); }
    std::size_t height() const { return static_cast<std::size_t>(y1 - y0 + 1); }
};

// Context of a cell relative to its owner tile: every tile meeting the
// closed cell, each with its (n-1)-corona. Nested: face >= edge >= vertex.
Rect context_rect(CellKind kind, int dimension, std::int64_t n)
{
    if (dimension == 1)
        return kind == CellKind::Vertex ? Rect{-n, 0, n - 1, 0} : Rect{-n, 0, n, 0};
    switch (kind) {
    case CellKind::Vertex: return {-n, -n, n - 1, n - 1};
    case CellKind::EdgeX: return {-n, -n, n, n - 1};
    case CellKind::EdgeY: return {-n, -n, n - 1, n};
    case CellKind::Face: return {-n, -n, n, n};
    }
    throw InternalError("context_rect: bad kind");
}

struct Face {
    CellKind kind;
    std::int64_t dx, dy;
    int sign;
};

// Oriented boundary in path order; edges point along +x / +y.
const std::vector<Face>& boundary_faces(CellKind kind)
{
    static const std::vector<Face> none;
    static const std::vector<Face> edge_x{{CellKind::Vertex, 0, 0, -1}, {CellKind::Vertex, 1, 0, +1}};
    static const std::vector<Face> edge_y{{CellKind::Vertex, 0, 0, -1}, {CellKind::Vertex, 0, 1, +1}};
    static const std::vector<Face> face{{CellKind::EdgeX, 0, 0, +1},
                                        {CellKind::EdgeY, 1, 0, +1},
                                        {CellKind::EdgeX, 0, 1, -1},
                                        {CellKind::EdgeY, 0, 0, -1}};
    switch (kind) {
    case CellKind::Vertex: return none;
    case CellKind::EdgeX: return edge_x;
    case CellKind::EdgeY: return edge_y;
    case CellKind::Face: return face;
    }
    return none;
}

CellKind top_kind(int dimension) { return dimension == 1 ? CellKind::EdgeX : CellKind::Face; }

std::string kind_tag(CellKind kind, int dimension)
{
    switch (kind) {
    case CellKind::Vertex: return "v";
    case CellKind::EdgeX: return dimension == 1 ? "e" : "x";
    case CellKind::EdgeY: return "y";
    case CellKind::Face: return "f";
    }
    return "?";
}

// Same string as canonical_label on the pointed patch, for complete windows.
std::string window_label(const Grid& w, Position mark, int dimension)
{
    std::string out = std::to_string(w.at(mark.x, mark.y)) + "@" + std::to_string(mark.x - w.x0);
    if (dimension == 2)
        out += "," + std::to_string(mark.y - w.y0);
    out += "|";
    for (std::size_t i = 0; i < w.width; ++i)
        for (std::size_t j = 0; j < w.height; ++j) {
            if (i != 0 || j != 0)
                out += ' ';
            out += std::to_string(i);
            if (dimension == 2)
                out += "," + std::to_string(j);
            out += ":" + std::to_string(w.data[i + w.width * j]);
        }
    return out;
}

// Context window of a placement, re-origined so the anchor sits at (0, 0).
std::optional<Grid> context_of(const Grid& tiling, const CellPlacement& p, int dimension, std::size_t level)
{
    const Rect r = context_rect(p.kind, dimension, static_cast<std::int64_t>(level));
    Grid w = tiling.window(p.anchor.x + r.x0, p.anchor.y + r.y0, r.width(), r.height());
    if (!w.complete())
        return std::nullopt;
    return w.moved_to(r.x0, r.y0);
}

void require_primitive(const SubstitutionRule& rule)
{
    if (!validate_rule(rule).primitive)
        throw PreconditionError("unsupported: rule is not primitive");
}

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t a)
    {
        while (parent[a] != a)
            a = parent[a] = parent[parent[a]];
        return a;
    }
    void join(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

// Slots of one uncollared tile. 2D: corners, sides, face. 1D: ends, tile.
namespace slot2 {
constexpr std::size_t lower_left = 0, lower_right = 1, upper_left = 2, upper_right = 3, bottom = 4, top = 5,
                      left = 6, right = 7, face = 8, count = 9;
}
namespace slot1 {
constexpr std::size_t left = 0, right = 1, tile = 2, count = 3;
}

constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

} // namespace

int cell_dimension(CellKind kind)
{
    switch (kind) {
    case CellKind::Vertex: return 0;
    case CellKind::EdgeX:
    case CellKind::EdgeY: return 1;
    case CellKind::Face: return 2;
    }
    return 0;
}

std::optional<std::string> cell_label(const Grid& tiling, const CellPlacement& placement, int dimension,
                                      std::size_t level)
{
    auto ctx = context_of(tiling, placement, dimension, level);
    if (!ctx)
        return std::nullopt;
    return kind_tag(placement.kind, dimension) + "|" + window_label(*ctx, {0, 0}, dimension);
}

void ApproximantComplex::index_labels()
{
    index_.assign(cells.size(), {});
    for (std::size_t k = 0; k < cells.size(); ++k)
        for (const Cell& c : cells[k])
            if (!index_[k].emplace(c.label, c.id).second)
                throw InputError("complex: duplicate label '" + c.label + "' in dimension " + std::to_string(k));
}

ApproximantComplex ApproximantComplex::from_cells(int dimension, std::vector<std::vector<Cell>> cells)
{
    if (dimension < 0 || cells.size() != static_cast<std::size_t>(dimension) + 1)
        throw InputError("complex: expected cell lists for dimensions 0.." + std::to_string(dimension));
    for (std::size_t k = 0; k < cells.size(); ++k)
        for (std::size_t i = 0; i < cells[k].size(); ++i) {
            Cell& c = cells[k][i];
            c.id = i;
            c.dimension = static_cast<int>(k);
            c.kind = k == 0 ? CellKind::Vertex : k == 1 ? CellKind::EdgeX : CellKind::Face;
            if (c.label.empty())
                c.label = "c" + std::to_string(k) + ":" + std::to_string(i);
            const std::string where = "complex: cell " + std::to_string(i) + " of dimension " + std::to_string(k);
            if (k == 0 && !c.boundary.empty())
                throw InputError(where + ": vertices have no boundary");
            for (const auto& inc : c.boundary) {
                if (inc.cell >= cells[k - 1].size())
                    throw InputError(where + ": boundary refers to missing cell " + std::to_string(inc.cell));
                if (inc.coefficient != 1 && inc.coefficient != -1)
                    throw InputError(where + ": boundary coefficients must be +1 or -1 (repeat entries instead)");
            }
            if (k == 1) {
                const bool ok = c.boundary.size() == 2 && c.boundary[0].coefficient + c.boundary[1].coefficient == 0;
                if (!ok)
                    throw InputError(where + ": an edge needs one tail (-1) and one head (+1)");
                if (c.boundary[0].coefficient == 1)
                    std::swap(c.boundary[0], c.boundary[1]);
            }
        }
    ApproximantComplex out;
    out.dimension = dimension;
    out.cells = std::move(cells);
    out.index_labels();
    return out;
}

std::optional<std::size_t> ApproximantComplex::find(int k, const std::string& label) const
{
    const auto& index = index_.at(static_cast<std::size_t>(k));
    auto it = index.find(label);
    if (it == index.end())
        return std::nullopt;
    return it->second;
}

IntegerMatrix ApproximantComplex::boundary_matrix(int k) const
{
    if (k < 1 || k > dimension)
        throw PreconditionError("boundary_matrix: degree out of range");
    IntegerMatrix m(count(k - 1), count(k));
    for (const Cell& c : cells[static_cast<std::size_t>(k)])
        for (const auto& inc : c.boundary)
            m.add_to(inc.cell, c.id, inc.coefficient);
    return m;
}

CochainComplex ApproximantComplex::cochain_complex() const
{
    std::vector<std::size_t> counts;
    std::vector<IntegerMatrix> boundaries;
    for (int k = 0; k <= dimension; ++k)
        counts.push_back(count(k));
    for (int k = 1; k <= dimension; ++k)
        boundaries.push_back(boundary_matrix(k));
    return CochainComplex::from_boundaries(std::move(counts), boundaries);
}

std::pair<std::size_t, std::size_t> ApproximantComplex::endpoints(std::size_t edge) const
{
    const Cell& e = cell(1, edge);
    std::size_t tail = kAbsent, head = kAbsent;
    for (const auto& inc : e.boundary)
        (inc.coefficient < 0 ? tail : head) = inc.cell;
    if (tail == kAbsent || head == kAbsent)
        throw InternalError("edge without two endpoints");
    return {tail, head};
}

bool ApproximantComplex::is_connected() const
{
    if (count(0) == 0)
        return false;
    DisjointSets sets(count(0));
    if (dimension >= 1)
        for (std::size_t e = 0; e < count(1); ++e) {
            auto [tail, head] = endpoints(e);
            sets.join(tail, head);
        }
    for (std::size_t v = 0; v < count(0); ++v)
        if (sets.find(v) != 0)
            return false;
    return true;
}

std::optional<std::size_t> ApproximantComplex::locate(const Grid& tiling, const CellPlacement& placement) const
{
    if (!level)
        throw PreconditionError("locate: complex was not built from a substitution rule");
    const int k = cell_dimension(placement.kind);
    if (*level == 0) {
        const TileId t = tiling.at(placement.anchor.x, placement.anchor.y);
        if (t == kNoTile || t >= slot_cells_.size())
            return std::nullopt;
        std::size_t slot = 0;
        if (dimension == 1)
            slot = placement.kind == CellKind::Vertex ? slot1::left : slot1::tile;
        else
            switch (placement.kind) {
            case CellKind::Vertex: slot = slot2::lower_left; break;
            case CellKind::EdgeX: slot = slot2::bottom; break;
            case CellKind::EdgeY: slot = slot2::left; break;
            case CellKind::Face: slot = slot2::face; break;
            }
        const std::size_t id = slot_cells_[t][slot];
        if (id == kAbsent)
            return std::nullopt;
        return id;
    }
    auto label = cell_label(tiling, placement, dimension, *level);
    if (!label)
        return std::nullopt;
    return find(k, *label);
}

namespace {

ApproximantComplex build_uncollared(const SubstitutionRule& rule, std::vector<std::vector<std::size_t>>& slot_cells)
{
    const int dim = rule.dimension;
    const std::size_t slots = dim == 1 ? slot1::count : slot2::count;
    const auto patterns = legal_patterns(rule, 2);
    std::vector<bool> present(rule.size(), false);
    DisjointSets sets(rule.size() * slots);
    auto node = [slots](TileId t, std::size_t slot) { return t * slots + slot; };
    for (const Grid& g : patterns.blocks) {
        for (TileId t : g.data)
            present[t] = true;
        if (dim == 1) {
            sets.join(node(g.at(0, 0), slot1::right), node(g.at(1, 0), slot1::left));
            continue;
        }
        auto horizontal = [&](TileId l, TileId r) {
            sets.join(node(l, slot2::lower_right), node(r, slot2::lower_left));
            sets.join(node(l, slot2::upper_right), node(r, slot2::upper_left));
            sets.join(node(l, slot2::right), node(r, slot2::left));
        };
        auto vertical = [&](TileId d, TileId u) {
            sets.join(node(d, slot2::upper_left), node(u, slot2::lower_left));
            sets.join(node(d, slot2::upper_right), node(u, slot2::lower_right));
            sets.join(node(d, slot2::top), node(u, slot2::bottom));
        };
        horizontal(g.at(0, 0), g.at(1, 0));
        horizontal(g.at(0, 1), g.at(1, 1));
        vertical(g.at(0, 0), g.at(0, 1));
        vertical(g.at(1, 0), g.at(1, 1));
    }

    auto slot_kind = [dim](std::size_t slot) {
        if (dim == 1)
            return slot == slot1::tile ? CellKind::EdgeX : CellKind::Vertex;
        if (slot <= slot2::upper_right)
            return CellKind::Vertex;
        if (slot == slot2::bottom || slot == slot2::top)
            return CellKind::EdgeX;
        if (slot == slot2::left || slot == slot2::right)
            return CellKind::EdgeY;
        return CellKind::Face;
    };
    static const char* names2[] = {"ll", "lr", "ul", "ur", "bottom", "top", "left", "right", "tile"};
    static const char* names1[] = {"left", "right", "tile"};

    // Class label: least member label.
    std::map<std::size_t, std::string> class_label;
    for (TileId t = 0; t < rule.size(); ++t) {
        if (!present[t])
            continue;
        for (std::size_t s = 0; s < slots; ++s) {
            const std::string member = kind_tag(slot_kind(s), dim) + "|" +
                                       canonical_label([&] {
                                           Patch p = Patch::single(dim, t);
                                           p.mark = Position{0, 0};
                                           return p;
                                       }()) +
                                       "#" + (dim == 1 ? names1[s] : names2[s]);
            auto [it, fresh] = class_label.emplace(sets.find(node(t, s)), member);
            if (!fresh && member < it->second)
                it->second = member;
        }
    }
    std::vector<std::map<std::string, std::size_t>> by_label(static_cast<std::size_t>(dim) + 1);
    for (const auto& [root, label] : class_label)
        by_label[static_cast<std::size_t>(cell_dimension(slot_kind(root % slots)))].emplace(label, 0);
    std::vector<std::vector<Cell>> cells(static_cast<std::size_t>(dim) + 1);
    for (std::size_t k = 0; k < by_label.size(); ++k) {
        std::size_t id = 0;
        for (auto& [label, slot_id] : by_label[k]) {
            slot_id = id;
            Cell c;
            c.id = id++;
            c.dimension = static_cast<int>(k);
            c.label = label;
            cells[k].push_back(std::move(c));
        }
    }
    auto id_of = [&](TileId t, std::size_t s) {
        const std::size_t root = sets.find(node(t, s));
        return by_label[static_cast<std::size_t>(cell_dimension(slot_kind(s)))].at(class_label.at(root));
    };

    slot_cells.assign(rule.size(), std::vector<std::size_t>(slots, kAbsent));
    std::vector<std::vector<bool>> filled(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k)
        filled[k].assign(cells[k].size(), false);
    for (TileId t = 0; t < rule.size(); ++t) {
        if (!present[t])
            continue;
        for (std::size_t s = 0; s < slots; ++s) {
            const std::size_t id = id_of(t, s);
            slot_cells[t][s] = id;
            const CellKind kind = slot_kind(s);
            const auto k = static_cast<std::size_t>(cell_dimension(kind));
            std::vector<Incidence> boundary;
            if (dim == 1 && kind == CellKind::EdgeX)
                boundary = {{id_of(t, slot1::left), -1}, {id_of(t, slot1::right), +1}};
            else if (dim == 2)
                switch (s) {
                case slot2::bottom: boundary = {{id_of(t, slot2::lower_left), -1}, {id_of(t, slot2::lower_right), +1}}; break;
                case slot2::top: boundary = {{id_of(t, slot2::upper_left), -1}, {id_of(t, slot2::upper_right), +1}}; break;
                case slot2::left: boundary = {{id_of(t, slot2::lower_left), -1}, {id_of(t, slot2::upper_left), +1}}; break;
                case slot2::right: boundary = {{id_of(t, slot2::lower_right), -1}, {id_of(t, slot2::upper_right), +1}}; break;
                case slot2::face:
                    boundary = {{id_of(t, slot2::bottom), +1},
                                {id_of(t, slot2::right), +1},
                                {id_of(t, slot2::top), -1},
                                {id_of(t, slot2::left), -1}};
                    break;
                default: break;
                }
            Cell& c = cells[k][id];
            if (filled[k][id] && c.boundary != boundary)
                throw InternalError("uncollared complex: inconsistent identification of " + c.label);
            if (!filled[k][id]) {
                c.kind = kind;
                c.boundary = std::move(boundary);
                c.context = Grid(0, 0, 1, 1);
                c.context.data[0] = t;
                filled[k][id] = true;
            }
        }
    }
    ApproximantComplex out;
    out.dimension = dim;
    out.cells = std::move(cells);
    out.caveats.push_back("uncollared approximant (level 0): identifications come from legal two-tile "
                          "adjacencies only; its cohomology need not agree with the hull");
    return out;
}

} // namespace

ApproximantComplex build_approximant(const std::shared_ptr<const SubstitutionRule>& rule_ptr, std::size_t level)
{
    if (!rule_ptr)
        throw PreconditionError("build_approximant: no rule");
    const SubstitutionRule& rule = *rule_ptr;
    require_primitive(rule);
    const int dim = rule.dimension;

    ApproximantComplex out;
    if (level == 0) {
        std::vector<std::vector<std::size_t>> slots;
        out = build_uncollared(rule, slots);
        out.slot_cells_ = std::move(slots);
    } else {
        const auto n = static_cast<std::int64_t>(level);
        const auto patterns = legal_patterns(rule, 2 * level + 1);
        struct Pending {
            CellKind kind;
            Grid context;
        };
        std::vector<std::map<std::string, Pending>> found(static_cast<std::size_t>(dim) + 1);

        // Registers a cell by its context and recursively its boundary.
        std::function<void(const Grid&, CellKind)> visit = [&](const Grid& ctx, CellKind kind) {
            const std::string label = *cell_label(ctx, {kind, {0, 0}}, dim, level);
            auto& bucket = found[static_cast<std::size_t>(cell_dimension(kind))];
            if (!bucket.emplace(label, Pending{kind, ctx}).second)
                return;
            for (const Face& f : boundary_faces(kind)) {
                auto sub = context_of(ctx, {f.kind, {f.dx, f.dy}}, dim, level);
                if (!sub)
                    throw InternalError("context of a boundary cell is not contained in its coface context");
                visit(*sub, f.kind);
            }
        };
        for (const Grid& block : patterns.blocks)
            visit(block.moved_to(-n, dim == 2 ? -n : 0), top_kind(dim));

        out.dimension = dim;
        out.cells.resize(found.size());
        for (std::size_t k = 0; k < found.size(); ++k)
            for (auto& [label, pending] : found[k]) {
                Cell c;
                c.id = out.cells[k].size();
                c.dimension = static_cast<int>(k);
                c.kind = pending.kind;
                c.label = label;
                c.context = std::move(pending.context);
                out.cells[k].push_back(std::move(c));
            }
        out.index_labels();
        for (std::size_t k = 1; k < out.cells.size(); ++k)
            for (Cell& c : out.cells[k])
                for (const Face& f : boundary_faces(c.kind)) {
                    auto label = cell_label(c.context, {f.kind, {f.dx, f.dy}}, dim, level);
                    auto id = label ? out.find(static_cast<int>(k) - 1, *label) : std::nullopt;
                    if (!id)
                        throw InternalError("boundary cell missing from the complex: " + c.label);
                    c.boundary.push_back({*id, f.sign});
                }
    }
    out.level = level;
    out.rule = rule_ptr;
    if (level == 0)
        out.index_labels();
    return out;
}

ComplexPtr make_approximant(const SubstitutionRule& rule, std::size_t level)
{
    return std::make_shared<const ApproximantComplex>(
        build_approximant(std::make_shared<const SubstitutionRule>(rule), level));
}

std::vector<CollaredTile> collared_tiles(const SubstitutionRule& rule, std::size_t level)
{
    const ComplexPtr complex = make_approximant(rule, level);
    std::vector<CollaredTile> out;
    for (const Cell& c : complex->cells.back()) {
        Patch p = c.context.to_patch(rule.dimension);
        p.mark = Position{0, 0};
        out.push_back({c.id, c.context.at(0, 0), level, Corona{{0, 0}, level, p.canonical()}});
    }
    return out;
}

bool CellularMap::commutes_with_boundary() const
{
    for (int k = 1; k <= source->dimension; ++k) {
        const auto sk = static_cast<std::size_t>(k);
        if (target->boundary_matrix(k) * chain[sk] != chain[sk - 1] * source->boundary_matrix(k))
            return false;
    }
    return true;
}

namespace {

CellularMap empty_map(const ComplexPtr& source, const ComplexPtr& target)
{
    if (source->dimension != target->dimension)
        throw PreconditionError("cellular map: complexes of different dimension");
    CellularMap f;
    f.source = source;
    f.target = target;
    for (int k = 0; k <= source->dimension; ++k)
        f.chain.emplace_back(target->count(k), source->count(k));
    f.vertex_images.assign(source->count(0), 0);
    if (source->dimension >= 1)
        f.edge_paths.assign(source->count(1), {});
    return f;
}

std::vector<Incidence> reversed_path(const std::vector<Incidence>& path)
{
    std::vector<Incidence> out;
    for (auto it = path.rbegin(); it != path.rend(); ++it)
        out.push_back({it->cell, -it->coefficient});
    return out;
}

} // namespace

CellularMap identity_map(const ComplexPtr& complex)
{
    CellularMap f = empty_map(complex, complex);
    for (int k = 0; k <= complex->dimension; ++k)
        f.chain[static_cast<std::size_t>(k)] = IntegerMatrix::identity(complex->count(k));
    std::iota(f.vertex_images.begin(), f.vertex_images.end(), 0);
    for (std::size_t e = 0; e < f.edge_paths.size(); ++e)
        f.edge_paths[e] = {{e, 1}};
    return f;
}

CellularMap compose(const CellularMap& second, const CellularMap& first)
{
    if (first.target != second.source)
        throw PreconditionError("compose: maps are not composable");
    CellularMap f = empty_map(first.source, second.target);
    for (std::size_t k = 0; k < f.chain.size(); ++k)
        f.chain[k] = second.chain[k] * first.chain[k];
    for (std::size_t v = 0; v < f.vertex_images.size(); ++v)
        f.vertex_images[v] = second.vertex_images[first.vertex_images[v]];
    for (std::size_t e = 0; e < f.edge_paths.size(); ++e)
        for (const auto& step : first.edge_paths[e]) {
            const auto& image = second.edge_paths[step.cell];
            const auto piece = step.coefficient > 0 ? image : reversed_path(image);
            f.edge_paths[e].insert(f.edge_paths[e].end(), piece.begin(), piece.end());
        }
    return f;
}

CellularMap forgetful_map(const ComplexPtr& from, const ComplexPtr& to)
{
    if (!from->level || !to->level || !from->rule || !to->rule)
        throw PreconditionError("forgetful_map: both complexes must be approximants of a rule");
    if (*from->level <= *to->level)
        throw PreconditionError("forgetful_map: source level must exceed target level");
    if (from->rule->alphabet != to->rule->alphabet)
        throw PreconditionError("forgetful_map: complexes come from different rules");
    CellularMap f = empty_map(from, to);
    for (int k = 0; k <= from->dimension; ++k)
        for (const Cell& c : from->cells[static_cast<std::size_t>(k)]) {
            auto image = to->locate(c.context, {c.kind, {0, 0}});
            if (!image)
                throw InternalError("forgetful_map: no image for " + c.label);
            f.chain[static_cast<std::size_t>(k)].set(*image, c.id, 1);
            if (k == 0)
                f.vertex_images[c.id] = *image;
            if (k == 1)
                f.edge_paths[c.id] = {{*image, 1}};
        }
    return f;
}

CellularMap forgetful_map(const SubstitutionRule& rule, std::size_t from, std::size_t to)
{
    if (from <= to)
        throw PreconditionError("forgetful_map: source level must exceed target level");
    return forgetful_map(make_approximant(rule, from), make_approximant(rule, to));
}

namespace {

void require_substitutable(const SubstitutionRule& rule, std::size_t level)
{
    if (!rule.aperiodic())
        throw PreconditionError("substitution route refused: the rule is not declared aperiodic; for a periodic "
                                "hull the inverse limit under substitution is a solenoid, not the hull. Use the "
                                "gahler route.");
    if (level == 0)
        throw PreconditionError("substitution route refused: it needs collared tiles (collar >= 1)");
}

} // namespace

CellularMap substitution_map(const ComplexPtr& complex)
{
    if (!complex->rule || !complex->level)
        throw PreconditionError("substitution_map: complex is not an approximant of a rule");
    const SubstitutionRule& rule = *complex->rule;
    require_substitutable(rule, *complex->level);
    const int dim = complex->dimension;
    CellularMap f = empty_map(complex, complex);
    for (int k = 0; k <= dim; ++k)
        for (const Cell& c : complex->cells[static_cast<std::size_t>(k)]) {
            const Grid image = substitute(rule, c.context);
            std::vector<CellPlacement> pieces;
            const auto span = static_cast<std::int64_t>(rule.image_size(c.context.at(0, 0)));
            const auto b = static_cast<std::int64_t>(rule.expansion);
            switch (c.kind) {
            case CellKind::Vertex: pieces.push_back({CellKind::Vertex, {0, 0}}); break;
            case CellKind::EdgeX:
                for (std::int64_t i = 0; i < (dim == 1 ? span : b); ++i)
                    pieces.push_back({CellKind::EdgeX, {i, 0}});
                break;
            case CellKind::EdgeY:
                for (std::int64_t j = 0; j < b; ++j)
                    pieces.push_back({CellKind::EdgeY, {0, j}});
                break;
            case CellKind::Face:
                for (std::int64_t j = 0; j < b; ++j)
                    for (std::int64_t i = 0; i < b; ++i)
                        pieces.push_back({CellKind::Face, {i, j}});
                break;
            }
            for (const auto& piece : pieces) {
                auto id = complex->locate(image, piece);
                if (!id)
                    throw InternalError("substitution_map: substituted context does not determine a sub-cell of " +
                                        c.label);
                f.chain[static_cast<std::size_t>(k)].add_to(*id, c.id, 1);
                if (k == 0)
                    f.vertex_images[c.id] = *id;
                if (k == 1)
                    f.edge_paths[c.id].push_back({*id, 1});
            }
        }
    return f;
}

CellularMap substitution_map(const SubstitutionRule& rule, std::size_t level)
{
    require_substitutable(rule, level);
    return substitution_map(make_approximant(rule, level));
}

Cochain descend_cochain(const ComplexPtr& complex, int degree, const std::map<std::string, Integer>& assignment)
{
    if (degree < 0 || degree > complex->dimension)
        throw PreconditionError("descend_cochain: degree out of range");
    Cochain out{complex, degree, {}};
    std::vector<std::string> missing;
    std::size_t used = 0;
    for (const Cell& c : complex->cells[static_cast<std::size_t>(degree)]) {
        auto it = assignment.find(c.label);
        if (it == assignment.end()) {
            missing.push_back(c.label);
            out.values.emplace_back(0);
        } else {
            ++used;
            out.values.push_back(it->second);
        }
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& m : missing)
            list += "\n  " + m;
        throw PreconditionError("descend_cochain: assignment misses " + std::to_string(missing.size()) +
                                " cell(s) of degree " + std::to_string(degree) + ":" + list);
    }
    if (used != assignment.size())
        throw PreconditionError("descend_cochain: assignment names " + std::to_string(assignment.size() - used) +
                                " label(s) that are not cells of degree " + std::to_string(degree));
    return out;
}

Cochain descend_cochain(const ComplexPtr& complex, int degree, const std::function<Integer(const Cell&)>& value)
{
    std::map<std::string, Integer> assignment;
    for (const Cell& c : complex->cells.at(static_cast<std::size_t>(degree)))
        assignment.emplace(c.label, value(c));
    return descend_cochain(complex, degree, assignment);
}

Cochain coboundary(const Cochain& cochain)
{
    if (cochain.degree >= cochain.complex->dimension)
        throw PreconditionError("coboundary: no cells above the top degree");
    const IntegerMatrix delta = cochain.complex->boundary_matrix(cochain.degree + 1).transpose();
    return {cochain.complex, cochain.degree + 1, delta.apply(cochain.values)};
}

std::vector<CellPlacement> patch_cells(const Patch& host, int degree)
{
    std::set<CellPlacement> out;
    for (const auto& [p, label] : host.cells) {
        std::vector<CellPlacement> closure;
        if (host.dimension == 1)
            closure = {{CellKind::EdgeX, p}, {CellKind::Vertex, p}, {CellKind::Vertex, {p.x + 1, p.y}}};
        else
            closure = {{CellKind::Face, p},
                       {CellKind::EdgeX, p},
                       {CellKind::EdgeX, {p.x, p.y + 1}},
                       {CellKind::EdgeY, p},
                       {CellKind::EdgeY, {p.x + 1, p.y}},
                       {CellKind::Vertex, p},
                       {CellKind::Vertex, {p.x + 1, p.y}},
                       {CellKind::Vertex, {p.x, p.y + 1}},
                       {CellKind::Vertex, {p.x + 1, p.y + 1}}};
        for (const auto& c : closure)
            if (cell_dimension(c.kind) == degree)
                out.insert(c);
    }
    return {out.begin(), out.end()};
}

PatchCochain pullback_cochain(const Cochain& cochain, const Patch& host)
{
    if (host.dimension != cochain.complex->dimension)
        throw PreconditionError("pullback_cochain: patch and complex dimensions differ");
    const Grid tiling = Grid::from_patch(host);
    PatchCochain out;
    out.degree = cochain.degree;
    for (const auto& placement : patch_cells(host, cochain.degree)) {
        auto id = cochain.complex->locate(tiling, placement);
        if (id)
            out.values.emplace(placement, cochain.values[*id]);
        else
            out.undetermined.push_back(placement);
    }
    return out;
}

PatchCochain patch_coboundary(const PatchCochain& cochain, const Patch& host)
{
    PatchCochain out;
    out.degree = cochain.degree + 1;
    for (const auto& placement : patch_cells(host, out.degree)) {
        Integer sum = 0;
        bool determined = true;
        for (const Face& f : boundary_faces(placement.kind)) {
            auto it = cochain.values.find({f.kind, {placement.anchor.x + f.dx, placement.anchor.y + f.dy}});
            if (it == cochain.values.end()) {
                determined = false;
                break;
            }
            sum += f.sign * it->second;
        }
        if (determined)
            out.values.emplace(placement, sum);
        else
            out.undetermined.push_back(placement);
    }
    return out;
}

} // namespace pecoh
