#pragma once

#include "pecoh/cohomology.hpp"
#include "pecoh/language.hpp"
#include "pecoh/patch.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace pecoh {

/// Cells of the unit-grid decomposition, named by their owner tile (x, y):
/// Vertex is its lower-left corner, EdgeX its bottom edge (+x), EdgeY its
/// left edge (+y), Face the tile itself. In 1D the tile is an EdgeX.
enum class CellKind : std::uint8_t { Vertex, EdgeX, EdgeY, Face };

int cell_dimension(CellKind kind);

struct CellPlacement {
    CellKind kind = CellKind::Vertex;
    Position anchor;
    friend auto operator<=>(const CellPlacement&, const CellPlacement&) = default;
};

struct Incidence {
    std::size_t cell = 0;
    int coefficient = 0;
    friend bool operator==(const Incidence&, const Incidence&) = default;
};

struct Cell {
    std::size_t id = 0;
    int dimension = 0;
    CellKind kind = CellKind::Vertex;
    std::string label;
    /// Ordered: edges list tail (-1) then head (+1); faces list the closed
    /// boundary path counterclockwise from the bottom edge.
    std::vector<Incidence> boundary;
    /// Identifying pattern with the owner tile at (0, 0); empty for complexes
    /// not built from a rule.
    Grid context;
};

struct CollaredTile {
    std::size_t id = 0;
    TileId center_label = 0;
    std::size_t level = 0;
    Corona collar;
};

/// CW complex with cells grouped by dimension, ids sorted by label.
class ApproximantComplex {
public:
    int dimension = 1;
    /// Collar level; absent for complexes loaded from a file.
    std::optional<std::size_t> level;
    std::shared_ptr<const SubstitutionRule> rule;
    std::vector<std::vector<Cell>> cells;
    std::vector<std::string> caveats;

    /// Validates incidences and indexes labels. Throws InputError.
    static ApproximantComplex from_cells(int dimension, std::vector<std::vector<Cell>> cells);

    std::size_t count(int k) const { return cells.at(static_cast<std::size_t>(k)).size(); }
    const Cell& cell(int k, std::size_t id) const { return cells.at(static_cast<std::size_t>(k)).at(id); }
    std::optional<std::size_t> find(int k, const std::string& label) const;
    /// Boundary map C_k -> C_{k-1}, rows indexed by (k-1)-cells; k = 1..d.
    IntegerMatrix boundary_matrix(int k) const;
    CochainComplex cochain_complex() const;
    bool is_connected() const;
    /// Tail and head vertex of an edge.
    std::pair<std::size_t, std::size_t> endpoints(std::size_t edge) const;

    /// Cell of this complex onto which a cell of a tiling window projects;
    /// nullopt when the window does not determine it.
    std::optional<std::size_t> locate(const Grid& tiling, const CellPlacement& placement) const;

private:
    friend ApproximantComplex build_approximant(const std::shared_ptr<const SubstitutionRule>&, std::size_t);
    void index_labels();
    std::vector<std::unordered_map<std::string, std::size_t>> index_;
    /// Level 0 only: [tile][slot] -> cell id (see approximant.cpp for slots).
    std::vector<std::vector<std::size_t>> slot_cells_;
};

using ComplexPtr = std::shared_ptr<const ApproximantComplex>;

/// Label of the cell at `placement` in a tiling window at collar `level`
/// (level >= 1); nullopt when the window lacks part of the context.
std::optional<std::string> cell_label(const Grid& tiling, const CellPlacement& placement, int dimension,
                                      std::size_t level);

std::vector<CollaredTile> collared_tiles(const SubstitutionRule& rule, std::size_t level);

ApproximantComplex build_approximant(const std::shared_ptr<const SubstitutionRule>& rule, std::size_t level);
ComplexPtr make_approximant(const SubstitutionRule& rule, std::size_t level);

/// Cellular map with exact chain matrices. chain[k] has shape
/// (target k-cells) x (source k-cells). Edge images are also kept as ordered
/// oriented paths, which the fundamental group needs.
struct CellularMap {
    ComplexPtr source;
    ComplexPtr target;
    std::vector<IntegerMatrix> chain;
    std::vector<std::size_t> vertex_images;
    std::vector<std::vector<Incidence>> edge_paths;

    /// Every chain matrix commutes with the boundary maps.
    bool commutes_with_boundary() const;
};

CellularMap identity_map(const ComplexPtr& complex);
/// second after first.
CellularMap compose(const CellularMap& second, const CellularMap& first);

/// Truncation of collars from level `from` down to level `to` (from > to).
CellularMap forgetful_map(const ComplexPtr& from, const ComplexPtr& to);
CellularMap forgetful_map(const SubstitutionRule& rule, std::size_t from, std::size_t to);

/// Self-map of a collared approximant induced by the substitution. Refused
/// (PreconditionError) unless the rule is declared aperiodic and level >= 1.
CellularMap substitution_map(const ComplexPtr& complex);
CellularMap substitution_map(const SubstitutionRule& rule, std::size_t level);

struct Cochain {
    ComplexPtr complex;
    int degree = 0;
    std::vector<Integer> values;
};

/// Cochain from values on cell labels. Every k-cell label must be assigned;
/// otherwise PreconditionError lists the uncovered cells.
Cochain descend_cochain(const ComplexPtr& complex, int degree, const std::map<std::string, Integer>& assignment);
Cochain descend_cochain(const ComplexPtr& complex, int degree, const std::function<Integer(const Cell&)>& value);
Cochain coboundary(const Cochain& cochain);

/// Cochain evaluated on the cells of a finite patch.
struct PatchCochain {
    int degree = 0;
    std::map<CellPlacement, Integer> values;
    std::vector<CellPlacement> undetermined;
};

/// k-cells in the closure of the tiles of `host`, sorted.
std::vector<CellPlacement> patch_cells(const Patch& host, int degree);
PatchCochain pullback_cochain(const Cochain& cochain, const Patch& host);
/// Coboundary computed on the patch; cells whose boundary is not fully
/// determined are reported undetermined.
PatchCochain patch_coboundary(const PatchCochain& cochain, const Patch& host);

} // namespace pecoh
