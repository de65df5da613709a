#include "pecoh/repvariety.hpp"

#include "pecoh/errors.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace pecoh {

Word freely_reduced(const Word& word)
{
    Word out;
    for (const Letter& l : word) {
        if (!out.empty() && out.back().generator == l.generator && out.back().exponent == -l.exponent)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

std::string to_string(const Word& word)
{
    if (word.empty())
        return "1";
    std::string out;
    for (const Letter& l : word) {
        if (!out.empty())
            out += ' ';
        out += "g" + std::to_string(l.generator);
        if (l.exponent < 0)
            out += "^-1";
    }
    return out;
}

namespace {

// Start and end vertex of one oriented step.
std::pair<std::size_t, std::size_t> step_ends(const ApproximantComplex& complex, const Incidence& step)
{
    auto [tail, head] = complex.endpoints(step.cell);
    return step.coefficient > 0 ? std::pair{tail, head} : std::pair{head, tail};
}

bool is_closed_path(const ApproximantComplex& complex, const std::vector<Incidence>& path)
{
    for (std::size_t i = 0; i < path.size(); ++i) {
        const auto here = step_ends(complex, path[i]);
        const auto next = step_ends(complex, path[(i + 1) % path.size()]);
        if (here.second != next.first)
            return false;
    }
    return true;
}

std::vector<Incidence> reversed(const std::vector<Incidence>& path)
{
    std::vector<Incidence> out;
    for (auto it = path.rbegin(); it != path.rend(); ++it)
        out.push_back({it->cell, -it->coefficient});
    return out;
}

} // namespace

Word Presentation::path_word(const std::vector<Incidence>& path) const
{
    Word w;
    for (const auto& step : path)
        if (auto g = edge_generator.at(step.cell))
            w.push_back({*g, step.coefficient > 0 ? 1 : -1});
    return freely_reduced(w);
}

std::vector<Incidence> Presentation::generator_loop(const ApproximantComplex& complex, std::size_t g) const
{
    const std::size_t edge = generator_edges.at(g);
    auto [tail, head] = complex.endpoints(edge);
    std::vector<Incidence> loop = tree_path[tail];
    loop.push_back({edge, 1});
    const auto back = reversed(tree_path[head]);
    loop.insert(loop.end(), back.begin(), back.end());
    return loop;
}

Presentation fundamental_presentation(const ApproximantComplex& complex, const PresentationOptions& options)
{
    const std::size_t vertices = complex.count(0);
    const std::size_t edges = complex.dimension >= 1 ? complex.count(1) : 0;
    if (vertices == 0)
        throw PreconditionError("fundamental_presentation: empty complex");

    std::vector<std::vector<std::size_t>> incident(vertices);
    for (std::size_t i = 0; i < edges; ++i) {
        const std::size_t e = options.reverse_edge_order ? edges - 1 - i : i;
        auto [tail, head] = complex.endpoints(e);
        incident[tail].push_back(e);
        if (head != tail)
            incident[head].push_back(e);
    }

    Presentation p;
    p.base_vertex = 0;
    p.edge_generator.assign(edges, std::nullopt);
    p.tree_path.assign(vertices, {});
    std::vector<bool> reached(vertices, false);
    std::vector<bool> tree(edges, false);
    std::queue<std::size_t> todo;
    reached[0] = true;
    todo.push(0);
    while (!todo.empty()) {
        const std::size_t u = todo.front();
        todo.pop();
        for (std::size_t e : incident[u]) {
            auto [tail, head] = complex.endpoints(e);
            const std::size_t other = tail == u ? head : tail;
            if (reached[other])
                continue;
            reached[other] = true;
            tree[e] = true;
            p.tree_path[other] = p.tree_path[u];
            p.tree_path[other].push_back({e, tail == u ? 1 : -1});
            todo.push(other);
        }
    }
    if (std::find(reached.begin(), reached.end(), false) != reached.end())
        throw PreconditionError("fundamental_presentation: complex is disconnected");

    for (std::size_t e = 0; e < edges; ++e)
        if (!tree[e]) {
            p.edge_generator[e] = p.generator_edges.size();
            p.generator_edges.push_back(e);
        }
    if (complex.dimension >= 2)
        for (const Cell& face : complex.cells[2]) {
            if (!is_closed_path(complex, face.boundary))
                throw PreconditionError("fundamental_presentation: boundary of face " + face.label +
                                        " is not a closed edge path");
            p.relators.push_back(p.path_word(face.boundary));
        }
    return p;
}

std::size_t evaluate(const Word& word, const Representation& rep, const FiniteGroup& group)
{
    std::size_t acc = group.identity();
    for (const Letter& l : word) {
        const std::size_t x = rep.at(l.generator);
        acc = group.multiply(acc, l.exponent > 0 ? x : group.inverse(x));
    }
    return acc;
}

bool satisfies_relators(const Presentation& presentation, const Representation& rep, const FiniteGroup& group)
{
    for (const Word& r : presentation.relators)
        if (evaluate(r, rep, group) != group.identity())
            return false;
    return true;
}

std::vector<Representation> enumerate_homs(const Presentation& presentation, const FiniteGroup& group,
                                           std::uint64_t budget)
{
    const std::size_t g = presentation.generator_count();
    const std::uint64_t n = group.order();
    std::uint64_t total = 1;
    bool over = false;
    for (std::size_t i = 0; i < g && !over; ++i) {
        if (total > budget / n)
            over = true;
        else
            total *= n;
    }
    if (over || total > budget) {
        Integer exact = 1;
        for (std::size_t i = 0; i < g; ++i)
            exact *= n;
        throw BudgetError("enumerate_homs: |G|^g = " + std::to_string(n) + "^" + std::to_string(g) + " = " +
                          to_string(exact) + " exceeds the budget of " + std::to_string(budget));
    }
    std::vector<Representation> out;
    Representation rep(g, 0);
    for (;;) {
        if (satisfies_relators(presentation, rep, group))
            out.push_back(rep);
        std::size_t i = g;
        while (i > 0 && ++rep[i - 1] == n) {
            rep[i - 1] = 0;
            --i;
        }
        if (i == 0)
            break;
    }
    return out;
}

Representation conjugate(const Representation& rep, std::size_t by, const FiniteGroup& group)
{
    Representation out(rep.size());
    const std::size_t inv = group.inverse(by);
    for (std::size_t i = 0; i < rep.size(); ++i)
        out[i] = group.multiply(group.multiply(by, rep[i]), inv);
    return out;
}

Representation orbit_representative(const Representation& rep, const FiniteGroup& group)
{
    Representation best = rep;
    for (std::size_t g = 0; g < group.order(); ++g)
        best = std::min(best, conjugate(rep, g, group));
    return best;
}

std::optional<std::size_t> RepVariety::index_of(const Representation& representative) const
{
    auto it = std::lower_bound(representatives.begin(), representatives.end(), representative);
    if (it == representatives.end() || *it != representative)
        return std::nullopt;
    return static_cast<std::size_t>(it - representatives.begin());
}

RepVariety conj_quotient(const std::vector<Representation>& homs, const FiniteGroup& group)
{
    std::map<Representation, std::size_t> counts;
    for (const auto& h : homs)
        ++counts[orbit_representative(h, group)];
    RepVariety v;
    v.hom_count = homs.size();
    for (const auto& [rep, count] : counts) {
        std::set<Representation> orbit;
        for (std::size_t g = 0; g < group.order(); ++g)
            orbit.insert(conjugate(rep, g, group));
        if (orbit.size() != count)
            throw PreconditionError("conj_quotient: homomorphisms are not closed under conjugation");
        v.representatives.push_back(rep);
        v.orbit_sizes.push_back(count);
    }
    return v;
}

std::vector<Word> induced_pi1(const CellularMap& map, const Presentation& source, const Presentation& target)
{
    std::vector<Word> images;
    for (std::size_t g = 0; g < source.generator_count(); ++g) {
        std::vector<Incidence> image;
        for (const auto& step : source.generator_loop(*map.source, g)) {
            const auto& piece = map.edge_paths.at(step.cell);
            const auto oriented = step.coefficient > 0 ? piece : reversed(piece);
            image.insert(image.end(), oriented.begin(), oriented.end());
        }
        if (!image.empty() && !is_closed_path(*map.target, image))
            throw InternalError("induced_pi1: image of generator loop " + std::to_string(g) + " is not a closed path");
        if (image.empty() && map.vertex_images.at(source.base_vertex) >= map.target->count(0))
            throw InternalError("induced_pi1: base point has no image");
        images.push_back(target.path_word(image));
    }
    return images;
}

bool VarietyMap::is_bijection() const
{
    if (image.size() != target_size)
        return false;
    std::vector<bool> hit(target_size, false);
    for (std::size_t i : image) {
        if (hit[i])
            return false;
        hit[i] = true;
    }
    return true;
}

VarietyMap induced_repvar_map(const CellularMap& map, const FiniteGroup& group, const Presentation& source,
                              const Presentation& target, const RepVariety& source_variety,
                              const RepVariety& target_variety)
{
    const auto words = induced_pi1(map, source, target);
    auto pull = [&](const Representation& rho) {
        Representation out;
        for (const Word& w : words)
            out.push_back(evaluate(w, rho, group));
        return out;
    };
    VarietyMap out;
    out.target_size = source_variety.size();
    for (const auto& rho : target_variety.representatives) {
        const Representation pulled = pull(rho);
        if (!satisfies_relators(source, pulled, group))
            throw InternalError("induced_repvar_map: pulled-back representation violates a relator");
        const Representation canonical = orbit_representative(pulled, group);
        for (std::size_t g = 0; g < group.order(); ++g)
            if (orbit_representative(pull(conjugate(rho, g, group)), group) != canonical)
                throw InternalError("induced_repvar_map: not well defined on conjugation orbits");
        auto index = source_variety.index_of(canonical);
        if (!index)
            throw InternalError("induced_repvar_map: image orbit missing from the source variety");
        out.image.push_back(*index);
    }
    return out;
}

RepVarietyLimit repvar_limit(const std::vector<RepVariety>& varieties, const std::vector<VarietyMap>& maps,
                             std::size_t window, std::size_t first_level)
{
    if (varieties.empty() || maps.size() + 1 != varieties.size())
        throw PreconditionError("repvar_limit: need one map between each consecutive pair of varieties");
    if (window == 0)
        throw PreconditionError("repvar_limit: window must be at least 1");
    RepVarietyLimit out;
    out.window = window;
    for (const auto& v : varieties)
        out.trajectory.push_back(v.size());
    if (maps.size() < window)
        return out;
    for (std::size_t i = maps.size() - window; i < maps.size(); ++i)
        if (!maps[i].is_bijection())
            return out;
    out.stabilized = true;
    out.variety = varieties.back();
    out.level = first_level + maps.size() - window;
    out.caveat = "heuristic stabilization at level " + std::to_string(out.level) + ", window " + std::to_string(window);
    return out;
}

CrosscheckResult abelian_crosscheck(const ApproximantComplex& complex, const FiniteGroup& group, std::uint64_t budget)
{
    if (!group.is_abelian())
        throw PreconditionError("abelian_crosscheck: group " + group.description() + " is not abelian");
    const Presentation p = fundamental_presentation(complex);
    CrosscheckResult out;
    out.variety_size = conj_quotient(enumerate_homs(p, group, budget), group).size();
    out.cohomology_size = 1;
    const CochainComplex cochains = complex.cochain_complex();
    if (complex.dimension >= 1)
        for (const Integer& k : group.abelian_invariants())
            out.cohomology_size *= cohomology(cochains, Coefficients::modular(k)).group(1).torsion_order();
    out.passed = Integer(out.variety_size) == out.cohomology_size;
    return out;
}

} // namespace pecoh
