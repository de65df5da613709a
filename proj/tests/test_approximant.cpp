#include "pecoh/approximant.hpp"
#include "pecoh/cohomology.hpp"
#include "pecoh/complex_io.hpp"
#include "pecoh/errors.hpp"
#include "pecoh/smith.hpp"

#include <catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

using namespace pecoh;
using Catch::Matchers::ContainsSubstring;

namespace {

SubstitutionRule bundled(const std::string& name)
{
    return load_rule(std::string(PECOH_DATA_DIR) + "/rules/" + name + ".json");
}

std::string iterate_word(const std::map<char, std::string>& rule, std::string word, int times)
{
    for (int i = 0; i < times; ++i) {
        std::string next;
        for (char ch : word)
            next += rule.at(ch);
        word = next;
    }
    return word;
}

std::set<std::string> factors(const std::string& word, std::size_t length)
{
    std::set<std::string> out;
    for (std::size_t i = 0; i + length <= word.size(); ++i)
        out.insert(word.substr(i, length));
    return out;
}

const std::vector<std::string> kRules{"fibonacci", "thue-morse", "period-doubling", "periodic",
                                      "periodic-2d", "dyadic", "chair-block"};

std::size_t top_level(const SubstitutionRule& rule) { return rule.dimension == 1 ? 3 : 2; }

std::string render_context(const SubstitutionRule& rule, const Cell& c)
{
    return c.context.to_patch(rule.dimension).render(rule);
}

} // namespace

TEST_CASE("collared tiles of Fibonacci and Thue-Morse match factor enumeration")
{
    const SubstitutionRule fib = bundled("fibonacci");
    const std::string fib_word = iterate_word({{'a', "ab"}, {'b', "a"}}, "a", 10);
    const auto tiles = collared_tiles(fib, 1);
    REQUIRE(tiles.size() == 4);
    std::set<std::string> seen;
    for (const auto& t : tiles) {
        seen.insert(t.collar.patch.render(fib));
        CHECK(t.collar.patch.at(*t.collar.patch.mark) == t.center_label);
        CHECK(t.level == 1);
    }
    CHECK(seen == factors(fib_word, 3));
    CHECK(seen == std::set<std::string>{"aab", "baa", "bab", "aba"});
    CHECK(collared_tiles(fib, 0).size() == 2);

    const SubstitutionRule tm = bundled("thue-morse");
    const std::string tm_word = iterate_word({{'a', "ab"}, {'b', "ba"}}, "a", 12);
    CHECK(collared_tiles(tm, 1).size() == 6);
    CHECK(factors(tm_word, 3).size() == 6);
}

TEST_CASE("1D approximant cell counts equal factor counts")
{
    struct Case {
        const char* name;
        std::map<char, std::string> images;
    };
    for (const Case& c : {Case{"fibonacci", {{'a', "ab"}, {'b', "a"}}},
                          Case{"thue-morse", {{'a', "ab"}, {'b', "ba"}}},
                          Case{"period-doubling", {{'a', "ab"}, {'b', "aa"}}}}) {
        const SubstitutionRule rule = bundled(c.name);
        const std::string word = iterate_word(c.images, "a", 14);
        for (std::size_t n = 1; n <= 3; ++n) {
            const ComplexPtr complex = make_approximant(rule, n);
            INFO(c.name << " level " << n);
            CHECK(complex->count(1) == factors(word, 2 * n + 1).size());
            CHECK(complex->count(0) == factors(word, 2 * n).size());
            std::set<std::string> vertices, edges;
            for (const Cell& v : complex->cells[0])
                vertices.insert(render_context(rule, v));
            for (const Cell& e : complex->cells[1])
                edges.insert(render_context(rule, e));
            CHECK(vertices == factors(word, 2 * n));
            CHECK(edges == factors(word, 2 * n + 1));
        }
    }
}

TEST_CASE("Fibonacci approximants")
{
    const SubstitutionRule fib = bundled("fibonacci");
    const ComplexPtr g1 = make_approximant(fib, 1);
    CHECK(g1->count(1) == 4);
    CHECK(g1->count(0) == 3);
    CHECK(g1->is_connected());
    std::set<std::string> vertex_words;
    for (const Cell& v : g1->cells[0])
        vertex_words.insert(render_context(fib, v));
    CHECK(vertex_words == std::set<std::string>{"aa", "ab", "ba"});

    // Hand SNF of the 3x4 incidence matrix: rank 2, all invariant factors 1.
    const auto snf = smith_normal_form(g1->boundary_matrix(1));
    CHECK(snf.invariant_factors == std::vector<Integer>{1, 1});

    const ComplexPtr g2 = make_approximant(fib, 2);
    CHECK(g2->count(1) == 6);
    CHECK(g2->count(0) == 5);
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto h = cohomology(make_approximant(fib, n)->cochain_complex(), Coefficients::integers());
        CHECK(to_string(h.group(0)) == "Z");
        CHECK(to_string(h.group(1)) == "Z^2");
    }
    CHECK(make_approximant(fib, 0)->caveats.size() == 1);
    CHECK(g1->caveats.empty());
}

TEST_CASE("single-tile periodic rules give the torus at every level")
{
    for (const char* name : {"periodic-2d", "dyadic"}) {
        const SubstitutionRule rule = bundled(name);
        for (std::size_t n = 0; n <= 3; ++n) {
            const ComplexPtr c = make_approximant(rule, n);
            CHECK(c->count(0) == 1);
            CHECK(c->count(1) == 2);
            CHECK(c->count(2) == 1);
            const auto h = cohomology(c->cochain_complex(), Coefficients::integers());
            CHECK(to_string(h.group(0)) == "Z");
            CHECK(to_string(h.group(1)) == "Z^2");
            CHECK(to_string(h.group(2)) == "Z");
        }
        const CellularMap f = forgetful_map(rule, 2, 1);
        for (int k = 0; k <= 2; ++k)
            CHECK(f.chain[static_cast<std::size_t>(k)] == IntegerMatrix::identity(f.source->count(k)));
    }
    const ComplexPtr circle = make_approximant(bundled("periodic"), 2);
    CHECK(circle->count(0) == 1);
    CHECK(circle->count(1) == 1);
}

TEST_CASE("boundary of a boundary vanishes and cells are well formed")
{
    for (const auto& name : kRules) {
        const SubstitutionRule rule = bundled(name);
        for (std::size_t n = 0; n <= top_level(rule); ++n) {
            const ComplexPtr c = make_approximant(rule, n);
            INFO(name << " level " << n);
            CHECK_NOTHROW(c->cochain_complex().verify());
            if (rule.dimension == 2)
                CHECK((c->boundary_matrix(1) * c->boundary_matrix(2)).is_zero());
            CHECK(c->is_connected());
            for (const Cell& e : c->cells[1]) {
                REQUIRE(e.boundary.size() == 2);
                CHECK(e.boundary[0].coefficient == -1);
                CHECK(e.boundary[1].coefficient == 1);
            }
            if (rule.dimension == 2)
                for (const Cell& f : c->cells[2])
                    CHECK(f.boundary.size() == 4);
            for (std::size_t k = 0; k < c->cells.size(); ++k)
                for (std::size_t i = 0; i < c->cells[k].size(); ++i) {
                    CHECK(c->cells[k][i].id == i);
                    if (i > 0)
                        CHECK(c->cells[k][i - 1].label < c->cells[k][i].label);
                }
        }
    }
}

TEST_CASE("cell labels agree with canonical labels of their contexts")
{
    for (const auto& name : kRules) {
        const SubstitutionRule rule = bundled(name);
        for (std::size_t n = 1; n <= top_level(rule); ++n) {
            const ComplexPtr c = make_approximant(rule, n);
            for (const auto& cells : c->cells)
                for (const Cell& cell : cells) {
                    Patch p = cell.context.to_patch(rule.dimension);
                    p.mark = Position{0, 0};
                    const std::string tag = cell.label.substr(0, cell.label.find('|'));
                    CHECK(cell.label == tag + "|" + canonical_label(p));
                    CHECK(c->find(cell.dimension, cell.label) == std::optional<std::size_t>(cell.id));
                }
        }
    }
}

TEST_CASE("every top cell is one collared tile")
{
    for (const auto& name : kRules) {
        const SubstitutionRule rule = bundled(name);
        for (std::size_t n = 1; n <= 2; ++n) {
            const auto tiles = collared_tiles(rule, n);
            const ComplexPtr c = make_approximant(rule, n);
            REQUIRE(tiles.size() == c->cells.back().size());
            std::set<std::string> labels;
            for (const auto& t : tiles) {
                CHECK(t.collar.patch.size() == (rule.dimension == 1 ? 2 * n + 1 : (2 * n + 1) * (2 * n + 1)));
                labels.insert(canonical_label(t.collar.patch));
            }
            CHECK(labels.size() == tiles.size());
        }
    }
}

TEST_CASE("forgetful maps")
{
    const SubstitutionRule fib = bundled("fibonacci");
    const CellularMap f = forgetful_map(fib, 2, 1);
    CHECK(f.source->count(1) == 6);
    CHECK(f.target->count(1) == 4);
    CHECK(f.commutes_with_boundary());
    for (int k = 0; k <= 1; ++k) {
        const auto& m = f.chain[static_cast<std::size_t>(k)];
        std::set<std::size_t> hit;
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (const auto& [col, v] : m.row(r)) {
                CHECK(v == 1);
                hit.insert(r);
            }
        CHECK(m.nonzeros() == m.cols());
        CHECK(hit.size() == m.rows());
    }
    const auto h1 = cohomology(f.target->cochain_complex(), Coefficients::integers());
    const auto h2 = cohomology(f.source->cochain_complex(), Coefficients::integers());
    const GroupHom induced = induced_map(f.chain[1], h1.degrees[1], h2.degrees[1]);
    CHECK(induced.matrix.rows() == 2);
    CHECK(abs(determinant(induced.matrix)) == 1);
    CHECK(induced.is_isomorphism());

    CHECK_THROWS_AS(forgetful_map(fib, 1, 1), PreconditionError);
    CHECK_THROWS_AS(forgetful_map(fib, 1, 2), PreconditionError);
}

TEST_CASE("forgetful maps compose and commute with boundaries")
{
    for (const auto& name : kRules) {
        const SubstitutionRule rule = bundled(name);
        std::vector<ComplexPtr> levels;
        for (std::size_t n = 0; n <= 3; ++n)
            levels.push_back(make_approximant(rule, n));
        for (std::size_t a = 0; a <= 3; ++a)
            for (std::size_t b = a + 1; b <= 3; ++b) {
                const CellularMap ba = forgetful_map(levels[b], levels[a]);
                INFO(name << " " << b << "->" << a);
                CHECK(ba.commutes_with_boundary());
                for (std::size_t c = b + 1; c <= 3; ++c) {
                    const CellularMap direct = forgetful_map(levels[c], levels[a]);
                    const CellularMap composed = compose(ba, forgetful_map(levels[c], levels[b]));
                    CHECK(composed.chain == direct.chain);
                    CHECK(composed.vertex_images == direct.vertex_images);
                }
            }
        const CellularMap id = identity_map(levels[1]);
        CHECK(id.commutes_with_boundary());
        CHECK(compose(id, forgetful_map(levels[2], levels[1])).chain == forgetful_map(levels[2], levels[1]).chain);
    }
}

TEST_CASE("substitution self-maps")
{
    const SubstitutionRule fib = bundled("fibonacci");
    const CellularMap s = substitution_map(fib, 1);
    CHECK(s.commutes_with_boundary());
    for (const Cell& e : s.source->cells[1]) {
        Integer length = 0;
        for (std::size_t r = 0; r < s.chain[1].rows(); ++r)
            length += s.chain[1].at(r, e.id);
        CHECK(length == (e.context.at(0, 0) == 0 ? 2 : 1));
        CHECK(s.edge_paths[e.id].size() == (e.context.at(0, 0) == 0 ? 2u : 1u));
    }
    const auto h = cohomology(s.source->cochain_complex(), Coefficients::integers());
    const GroupHom induced = induced_map(s.chain[1], h.degrees[1], h.degrees[1]);
    CHECK(abs(determinant(induced.matrix)) == 1);

    for (const char* name : {"thue-morse", "period-doubling", "chair-block"})
        for (std::size_t n = 1; n <= 2; ++n) {
            const CellularMap m = substitution_map(bundled(name), n);
            CHECK(m.commutes_with_boundary());
            const std::size_t top = m.chain.size() - 1;
            for (std::size_t col = 0; col < m.chain[top].cols(); ++col) {
                Integer count = 0;
                for (std::size_t r = 0; r < m.chain[top].rows(); ++r)
                    count += m.chain[top].at(r, col);
                CHECK(count == (top == 2 ? 4 : 2));
            }
        }
}

TEST_CASE("substitution route is refused for periodic rules and bare tiles")
{
    CHECK_THROWS_WITH(substitution_map(bundled("dyadic"), 1), ContainsSubstring("not declared aperiodic"));
    CHECK_THROWS_WITH(substitution_map(bundled("dyadic"), 1), ContainsSubstring("gahler route"));
    CHECK_THROWS_AS(substitution_map(bundled("periodic"), 1), PreconditionError);
    CHECK_THROWS_WITH(substitution_map(bundled("fibonacci"), 0), ContainsSubstring("collar"));
}

TEST_CASE("non-primitive rules are unsupported")
{
    const SubstitutionRule reducible = parse_rule(R"({"dimension":1,"tiles":["a","b"],"rule":{"a":"ab","b":"b"}})");
    CHECK_THROWS_WITH(make_approximant(reducible, 1), ContainsSubstring("not primitive"));
}

TEST_CASE("descending pattern-equivariant cochains")
{
    const SubstitutionRule fib = bundled("fibonacci");
    const ComplexPtr g1 = make_approximant(fib, 1);
    std::vector<std::string> order;
    for (const Cell& e : g1->cells[1])
        order.push_back(render_context(fib, e));
    CHECK(order == std::vector<std::string>{"aab", "baa", "bab", "aba"});

    const Cochain a = descend_cochain(g1, 1, [](const Cell& c) { return Integer(c.context.at(0, 0) == 0 ? 1 : 0); });
    CHECK(a.values == std::vector<Integer>{1, 1, 1, 0});

    const Cochain one = descend_cochain(g1, 0, [](const Cell&) { return Integer(1); });
    for (const auto& v : coboundary(one).values)
        CHECK(v == 0);

    std::map<std::string, Integer> partial;
    for (std::size_t i = 1; i < g1->count(1); ++i)
        partial[g1->cell(1, i).label] = 1;
    CHECK_THROWS_WITH(descend_cochain(g1, 1, partial), ContainsSubstring(g1->cell(1, 0).label));
    partial[g1->cell(1, 0).label] = 1;
    partial["e|bogus"] = 1;
    CHECK_THROWS_AS(descend_cochain(g1, 1, partial), PreconditionError);
}

TEST_CASE("pullback of cochains to patches")
{
    const SubstitutionRule fib = bundled("fibonacci");
    const ComplexPtr g1 = make_approximant(fib, 1);
    const Patch host = expand_patch(fib, Patch::single(1, 0), 5);
    const std::string text = host.render(fib);
    const Cochain a = descend_cochain(g1, 1, [](const Cell& c) { return Integer(c.context.at(0, 0) == 0 ? 1 : 0); });
    const PatchCochain pulled = pullback_cochain(a, host);
    CHECK(pulled.values.size() + pulled.undetermined.size() == text.size());
    CHECK(pulled.undetermined.size() == 2);
    for (const auto& [placement, value] : pulled.values)
        CHECK(value == (text[static_cast<std::size_t>(placement.anchor.x)] == 'a' ? 1 : 0));

    const PatchCochain small = pullback_cochain(a, Patch::single(1, 0));
    CHECK(small.values.empty());
    CHECK(small.undetermined.size() == 1);
}

TEST_CASE("pullback commutes with coboundary")
{
    std::mt19937 gen(11);
    std::uniform_int_distribution<int> value(-3, 3);
    for (const char* name : {"fibonacci", "thue-morse", "chair-block"}) {
        const SubstitutionRule rule = bundled(name);
        const Patch host = expand_patch(rule, Patch::single(rule.dimension, 0), rule.dimension == 1 ? 6 : 3);
        for (std::size_t n = 1; n <= 2; ++n) {
            const ComplexPtr c = make_approximant(rule, n);
            for (int k = 0; k < rule.dimension; ++k) {
                const Cochain beta = descend_cochain(c, k, [&](const Cell&) { return Integer(value(gen)); });
                const PatchCochain lhs = pullback_cochain(coboundary(beta), host);
                const PatchCochain rhs = patch_coboundary(pullback_cochain(beta, host), host);
                std::size_t compared = 0;
                for (const auto& [placement, v] : rhs.values) {
                    auto it = lhs.values.find(placement);
                    if (it == lhs.values.end())
                        continue;
                    CHECK(it->second == v);
                    ++compared;
                }
                CHECK(compared > 0);
            }
        }
    }
}

TEST_CASE("complex files round trip")
{
    for (const char* name : {"fibonacci", "chair-block"}) {
        const ComplexPtr c = make_approximant(bundled(name), 1);
        const ApproximantComplex back = complex_from_json(complex_to_json(*c));
        for (int k = 1; k <= c->dimension; ++k)
            CHECK(back.boundary_matrix(k) == c->boundary_matrix(k));
        // Loaded complexes carry no rule, hence no collar level.
        CHECK_FALSE(back.level.has_value());
    }
    CHECK_THROWS_AS(complex_from_json(nlohmann::json::parse(R"({"format":"pecoh-complex"})")), InputError);
}
