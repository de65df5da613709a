#pragma once

#include "pecoh/approximant.hpp"
#include "pecoh/finite_group.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pecoh {

struct Letter {
    std::size_t generator = 0;
    int exponent = 1; ///< +1 or -1
    friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

/// Cancels adjacent inverse letters.
Word freely_reduced(const Word& word);
std::string to_string(const Word& word);

struct PresentationOptions {
    /// Scan edges in decreasing id order when growing the spanning tree.
    bool reverse_edge_order = false;
};

/// pi_1 of a connected 2-complex: generators are the edges outside a
/// breadth-first spanning tree grown from vertex 0, relators the face
/// boundary words with tree edges dropped.
struct Presentation {
    std::size_t base_vertex = 0;
    std::vector<std::size_t> generator_edges;
    std::vector<Word> relators;
    /// Generator index of each edge; absent for tree edges.
    std::vector<std::optional<std::size_t>> edge_generator;
    /// Tree path from the base vertex to each vertex.
    std::vector<std::vector<Incidence>> tree_path;

    std::size_t generator_count() const { return generator_edges.size(); }
    /// Word of an edge path; tree edges contribute nothing.
    Word path_word(const std::vector<Incidence>& path) const;
    /// Closed loop at the base vertex through generator edge `g`.
    std::vector<Incidence> generator_loop(const ApproximantComplex& complex, std::size_t g) const;
};

/// Throws PreconditionError for disconnected complexes or face boundaries
/// that are not closed edge paths.
Presentation fundamental_presentation(const ApproximantComplex& complex, const PresentationOptions& options = {});

/// Image of each generator.
using Representation = std::vector<std::size_t>;

std::size_t evaluate(const Word& word, const Representation& rep, const FiniteGroup& group);
bool satisfies_relators(const Presentation& presentation, const Representation& rep, const FiniteGroup& group);

inline constexpr std::uint64_t kDefaultHomBudget = 10'000'000;

/// All homomorphisms in lexicographic order of generator images. Throws
/// BudgetError when |G|^generators exceeds the budget.
std::vector<Representation> enumerate_homs(const Presentation& presentation, const FiniteGroup& group,
                                           std::uint64_t budget = kDefaultHomBudget);

Representation conjugate(const Representation& rep, std::size_t by, const FiniteGroup& group);
/// Lexicographically least member of the conjugation orbit.
Representation orbit_representative(const Representation& rep, const FiniteGroup& group);

struct RepVariety {
    std::vector<Representation> representatives; ///< sorted
    std::vector<std::size_t> orbit_sizes;
    std::size_t hom_count = 0;

    std::size_t size() const { return representatives.size(); }
    std::optional<std::size_t> index_of(const Representation& representative) const;
};

RepVariety conj_quotient(const std::vector<Representation>& homs, const FiniteGroup& group);

/// Images of the source generators as words in the target generators.
std::vector<Word> induced_pi1(const CellularMap& map, const Presentation& source, const Presentation& target);

/// Map of varieties by precomposition: for f : X -> Y it sends orbits of
/// Hom(pi_1 Y, G) to orbits of Hom(pi_1 X, G).
struct VarietyMap {
    std::vector<std::size_t> image;
    std::size_t target_size = 0;
    bool is_bijection() const;
};

VarietyMap induced_repvar_map(const CellularMap& map, const FiniteGroup& group, const Presentation& source,
                              const Presentation& target, const RepVariety& source_variety,
                              const RepVariety& target_variety);

struct RepVarietyLimit {
    bool stabilized = false;
    RepVariety variety;
    std::size_t level = 0;
    std::size_t window = 0;
    std::string caveat;
    std::vector<std::size_t> trajectory; ///< orbit counts per level
};

/// varieties[i] -> varieties[i + 1] along maps[i]; stabilized when the last
/// `window` maps are bijections.
RepVarietyLimit repvar_limit(const std::vector<RepVariety>& varieties, const std::vector<VarietyMap>& maps,
                             std::size_t window, std::size_t first_level = 0);

struct CrosscheckResult {
    bool passed = false;
    std::size_t variety_size = 0;
    Integer cohomology_size = 0;
};

/// Compares |Hom(pi_1 X, G)/G| with |H^1(X; G)| for abelian G, computing the
/// latter factor by factor over the invariant factors of G.
CrosscheckResult abelian_crosscheck(const ApproximantComplex& complex, const FiniteGroup& group,
                                    std::uint64_t budget = kDefaultHomBudget);

} // namespace pecoh
