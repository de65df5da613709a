#pragma once

#include "pecoh/approximant.hpp"
#include "pecoh/limits.hpp"

#include <string>
#include <vector>

namespace pecoh {

struct LevelData {
    std::size_t level = 0;
    ComplexPtr complex;
    CohomologyResult cohomology;
};

/// Approximants first..last with forgetful maps and per-degree limits.
struct GahlerTower {
    Coefficients coefficients;
    std::vector<LevelData> levels;
    /// forgetful[i] : levels[i + 1] -> levels[i]
    std::vector<CellularMap> forgetful;
    /// induced[k][i] : H^k(levels[i]) -> H^k(levels[i + 1])
    std::vector<std::vector<GroupHom>> induced;
    std::vector<LimitGroup> limits;
};

GahlerTower gahler_tower(const SubstitutionRule& rule, std::size_t first, std::size_t last,
                         const Coefficients& coefficients, std::size_t window);

struct SubstitutionRoute {
    Coefficients coefficients;
    LevelData level;
    CellularMap self_map;
    std::vector<GroupHom> induced;
    std::vector<LimitGroup> limits;
};

SubstitutionRoute substitution_route(const SubstitutionRule& rule, std::size_t collar,
                                     const Coefficients& coefficients);

/// Over Q a map of lattices counts as an isomorphism when it is invertible
/// over Q; otherwise GroupHom::is_isomorphism.
bool is_isomorphism_over(const GroupHom& map, const Coefficients& coefficients);

/// Renders a limit; over Q only the dimension is meaningful ("Q^2").
std::string limit_string(const LimitGroup& limit, const Coefficients& coefficients);
std::string group_string(const AbelianGroup& group, const Coefficients& coefficients);

} // namespace pecoh
