#include "pecoh/tower.hpp"

#include "pecoh/errors.hpp"

namespace pecoh {

bool is_isomorphism_over(const GroupHom& map, const Coefficients& coefficients)
{
    if (coefficients.kind != Coefficients::Kind::Rationals)
        return map.is_isomorphism();
    return map.source.free_rank == map.target.free_rank && determinant(map.matrix) != 0;
}

std::string group_string(const AbelianGroup& group, const Coefficients& coefficients)
{
    if (coefficients.kind != Coefficients::Kind::Rationals)
        return to_string(group);
    if (group.free_rank == 0)
        return "0";
    return group.free_rank == 1 ? "Q" : "Q^" + std::to_string(group.free_rank);
}

std::string limit_string(const LimitGroup& limit, const Coefficients& coefficients)
{
    if (coefficients.kind != Coefficients::Kind::Rationals || limit.is_undetermined())
        return to_string(limit);
    return group_string(AbelianGroup{*rational_rank(limit), {}}, coefficients);
}

namespace {

LimitGroup rational_sequence_limit(const std::vector<AbelianGroup>& groups, const std::vector<GroupHom>& maps,
                                   std::size_t window, std::size_t first_level)
{
    const bool enough = maps.size() >= window;
    bool stable = enough;
    for (std::size_t i = enough ? maps.size() - window : 0; stable && i < maps.size(); ++i)
        stable = is_isomorphism_over(maps[i], Coefficients::rationals());
    if (!stable)
        return {UndeterminedLimit{"no window of " + std::to_string(window) + " isomorphisms over Q", groups}};
    const std::size_t level = first_level + maps.size() - window;
    return {StabilizedLimit{groups.back(), level, window,
                            "heuristic stabilization at level " + std::to_string(level) + ", window " +
                                std::to_string(window)}};
}

} // namespace

GahlerTower gahler_tower(const SubstitutionRule& rule, std::size_t first, std::size_t last,
                         const Coefficients& coefficients, std::size_t window)
{
    if (last < first)
        throw PreconditionError("gahler tower: --max-collar must be at least --collar");
    if (window == 0)
        throw PreconditionError("gahler tower: window must be at least 1");
    GahlerTower tower;
    tower.coefficients = coefficients;
    const auto shared = std::make_shared<const SubstitutionRule>(rule);
    for (std::size_t n = first; n <= last; ++n) {
        auto complex = std::make_shared<const ApproximantComplex>(build_approximant(shared, n));
        tower.levels.push_back({n, complex, cohomology(complex->cochain_complex(), coefficients)});
    }
    for (std::size_t i = 0; i + 1 < tower.levels.size(); ++i)
        tower.forgetful.push_back(forgetful_map(tower.levels[i + 1].complex, tower.levels[i].complex));
    const auto degrees = static_cast<std::size_t>(rule.dimension) + 1;
    tower.induced.assign(degrees, {});
    for (std::size_t k = 0; k < degrees; ++k) {
        std::vector<AbelianGroup> groups;
        for (const auto& level : tower.levels)
            groups.push_back(level.cohomology.group(k));
        for (std::size_t i = 0; i < tower.forgetful.size(); ++i)
            tower.induced[k].push_back(induced_map(tower.forgetful[i].chain[k], tower.levels[i].cohomology.degrees[k],
                                                   tower.levels[i + 1].cohomology.degrees[k]));
        tower.limits.push_back(coefficients.kind == Coefficients::Kind::Rationals
                                   ? rational_sequence_limit(groups, tower.induced[k], window, first)
                                   : direct_limit_sequence(groups, tower.induced[k], window, first));
    }
    return tower;
}

SubstitutionRoute substitution_route(const SubstitutionRule& rule, std::size_t collar,
                                     const Coefficients& coefficients)
{
    SubstitutionRoute route;
    route.coefficients = coefficients;
    // Refusal happens before any construction work.
    if (!rule.aperiodic() || collar == 0)
        (void)substitution_map(rule, collar);
    auto complex = make_approximant(rule, collar);
    route.level = {collar, complex, cohomology(complex->cochain_complex(), coefficients)};
    route.self_map = substitution_map(complex);
    for (std::size_t k = 0; k < route.level.cohomology.degrees.size(); ++k) {
        const auto& h = route.level.cohomology.degrees[k];
        route.induced.push_back(induced_map(route.self_map.chain[k], h, h));
        route.limits.push_back(direct_limit_endomorphism(h.group, route.induced.back()));
    }
    return route;
}

} // namespace pecoh
