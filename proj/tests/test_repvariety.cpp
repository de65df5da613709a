#include "pecoh/approximant.hpp"
#include "pecoh/cohomology.hpp"
#include "pecoh/complex_io.hpp"
#include "pecoh/errors.hpp"
#include "pecoh/finite_group.hpp"
#include "pecoh/repvariety.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <array>
#include <numeric>

using namespace pecoh;

namespace {

SubstitutionRule bundled(const std::string& name)
{
    return load_rule(std::string(PECOH_DATA_DIR) + "/rules/" + name + ".json");
}

ApproximantComplex data_complex(const std::string& name)
{
    return load_complex(std::string(PECOH_DATA_DIR) + "/complexes/" + name);
}

// Oracle: S3 as explicit permutations, independent of FiniteGroup.
std::vector<std::array<int, 3>> s3_elements()
{
    std::array<int, 3> p{0, 1, 2};
    std::vector<std::array<int, 3>> out;
    do
        out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::array<int, 3> compose3(const std::array<int, 3>& a, const std::array<int, 3>& b)
{
    return {a[b[0]], a[b[1]], a[b[2]]};
}

std::size_t centralizer_size(const std::array<int, 3>& g)
{
    std::size_t n = 0;
    for (const auto& h : s3_elements())
        n += compose3(g, h) == compose3(h, g);
    return n;
}

std::vector<ApproximantComplex> crosscheck_complexes()
{
    std::vector<ApproximantComplex> out;
    for (const char* name : {"torus.cw", "klein.cw", "projective-plane.cw", "wedge.cw"})
        out.push_back(data_complex(name));
    for (const char* rule : {"fibonacci", "thue-morse", "period-doubling", "periodic"})
        for (std::size_t n = 1; n <= 2; ++n)
            out.push_back(*make_approximant(bundled(rule), n));
    for (const char* rule : {"periodic-2d", "dyadic"})
        out.push_back(*make_approximant(bundled(rule), 1));
    return out;
}

RepVariety variety(const ApproximantComplex& c, const FiniteGroup& g, const PresentationOptions& options = {})
{
    const Presentation p = fundamental_presentation(c, options);
    return conj_quotient(enumerate_homs(p, g), g);
}

} // namespace

TEST_CASE("finite groups")
{
    const FiniteGroup s3 = FiniteGroup::symmetric(3);
    CHECK(s3.order() == 6);
    CHECK_FALSE(s3.is_abelian());
    CHECK(FiniteGroup::dihedral(4).order() == 8);
    CHECK(FiniteGroup::cyclic(6).abelian_invariants() == std::vector<Integer>{6});
    CHECK(FiniteGroup::parse_spec(std::string(PECOH_DATA_DIR) + "/groups/klein-four.json").abelian_invariants() ==
          std::vector<Integer>{2, 2});
    CHECK(FiniteGroup::cyclic(1).abelian_invariants().empty());
    CHECK_THROWS_AS(s3.abelian_invariants(), PreconditionError);
    CHECK_THROWS_AS(FiniteGroup({"e", "a"}, {{0, 1}, {1, 1}}), InputError);
    CHECK_THROWS_AS(FiniteGroup::parse_spec("cyclic:x"), InputError);
    for (std::size_t a = 0; a < s3.order(); ++a) {
        CHECK(s3.multiply(a, s3.inverse(a)) == s3.identity());
        CHECK(6 % s3.element_order(a) == 0);
    }
}

TEST_CASE("words reduce freely")
{
    const Word w{{0, 1}, {1, 1}, {1, -1}, {0, -1}, {2, 1}};
    CHECK(freely_reduced(w) == Word{{2, 1}});
    CHECK(freely_reduced(Word{{0, 1}, {0, -1}}).empty());
}

TEST_CASE("homomorphisms from the free group of rank two into S3")
{
    const ApproximantComplex wedge = data_complex("wedge.cw");
    const Presentation p = fundamental_presentation(wedge);
    CHECK(p.generator_count() == 2);
    CHECK(p.relators.empty());
    const FiniteGroup s3 = FiniteGroup::symmetric(3);
    const auto homs = enumerate_homs(p, s3);
    CHECK(homs.size() == 36);
    CHECK(std::is_sorted(homs.begin(), homs.end()));

    // Burnside: orbits = (1/|G|) sum_g |Fix(g)| = (1/6) sum_g |C(g)|^2.
    std::size_t fixed = 0;
    for (const auto& g : s3_elements())
        fixed += centralizer_size(g) * centralizer_size(g);
    const RepVariety v = conj_quotient(homs, s3);
    CHECK(v.size() == fixed / 6);
    CHECK(v.size() == 11);
    CHECK(v.hom_count == 36);
}

TEST_CASE("commuting pairs in S3 via the torus")
{
    const ApproximantComplex torus = data_complex("torus.cw");
    const Presentation p = fundamental_presentation(torus);
    CHECK(p.generator_count() == 2);
    CHECK(p.relators.size() == 1);
    std::size_t oracle = 0;
    for (const auto& g : s3_elements())
        oracle += centralizer_size(g);
    const FiniteGroup s3 = FiniteGroup::symmetric(3);
    CHECK(enumerate_homs(p, s3).size() == oracle);
    CHECK(oracle == 18);
    CHECK(variety(torus, FiniteGroup::cyclic(1)).size() == 1);
}

TEST_CASE("orbit sizes divide the group order")
{
    const FiniteGroup d4 = FiniteGroup::dihedral(4);
    for (const auto& c : {data_complex("wedge.cw"), data_complex("torus.cw"), data_complex("klein.cw")}) {
        const RepVariety v = variety(c, d4);
        std::size_t total = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            CHECK(d4.order() % v.orbit_sizes[i] == 0);
            CHECK(orbit_representative(v.representatives[i], d4) == v.representatives[i]);
            total += v.orbit_sizes[i];
        }
        CHECK(total == v.hom_count);
        CHECK(std::is_sorted(v.representatives.begin(), v.representatives.end()));
    }
}

TEST_CASE("conjugation acts on representations")
{
    const FiniteGroup s3 = FiniteGroup::symmetric(3);
    const Representation rep{1, 3};
    for (std::size_t g = 0; g < s3.order(); ++g) {
        const Representation c = conjugate(rep, g, s3);
        CHECK(orbit_representative(c, s3) == orbit_representative(rep, s3));
        CHECK(conjugate(c, s3.inverse(g), s3) == rep);
    }
}

TEST_CASE("abelian crosscheck on bundled complexes")
{
    for (const auto& c : crosscheck_complexes())
        for (std::size_t k = 1; k <= 6; ++k) {
            const CrosscheckResult r = abelian_crosscheck(c, FiniteGroup::cyclic(k));
            INFO("order " << k << ": " << r.variety_size << " vs " << r.cohomology_size);
            CHECK(r.passed);
        }
    const CrosscheckResult klein = abelian_crosscheck(data_complex("klein.cw"), FiniteGroup::cyclic(3));
    CHECK(klein.variety_size == 3);
    CHECK(klein.cohomology_size == 3);
    const CrosscheckResult fib = abelian_crosscheck(*make_approximant(bundled("fibonacci"), 1), FiniteGroup::cyclic(5));
    CHECK(fib.variety_size == 25);
    CHECK(fib.cohomology_size == 25);
    const CrosscheckResult v4 = abelian_crosscheck(
        data_complex("klein.cw"), FiniteGroup::parse_spec(std::string(PECOH_DATA_DIR) + "/groups/klein-four.json"));
    CHECK(v4.passed);
    CHECK_THROWS_AS(abelian_crosscheck(data_complex("torus.cw"), FiniteGroup::symmetric(3)), PreconditionError);
}

TEST_CASE("Fibonacci presentation and tower with Z/2")
{
    const SubstitutionRule fib = bundled("fibonacci");
    const FiniteGroup z2 = FiniteGroup::cyclic(2);
    std::vector<ComplexPtr> levels;
    std::vector<Presentation> pres;
    std::vector<RepVariety> vars;
    for (std::size_t n = 1; n <= 3; ++n) {
        levels.push_back(make_approximant(fib, n));
        pres.push_back(fundamental_presentation(*levels.back()));
        vars.push_back(conj_quotient(enumerate_homs(pres.back(), z2), z2));
        CHECK(pres.back().generator_count() == 2);
        CHECK(pres.back().relators.empty());
        CHECK(vars.back().size() == 4);
    }
    std::vector<VarietyMap> maps;
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
        const CellularMap f = forgetful_map(levels[i + 1], levels[i]);
        maps.push_back(induced_repvar_map(f, z2, pres[i + 1], pres[i], vars[i + 1], vars[i]));
        CHECK(maps.back().is_bijection());
    }
    const RepVarietyLimit limit = repvar_limit(vars, maps, 2, 1);
    CHECK(limit.stabilized);
    CHECK(limit.variety.size() == 4);
    CHECK(limit.trajectory == std::vector<std::size_t>{4, 4, 4});
    CHECK_FALSE(limit.caveat.empty());
}

TEST_CASE("varieties do not depend on the spanning tree")
{
    const FiniteGroup s3 = FiniteGroup::symmetric(3);
    for (const char* name : {"fibonacci", "thue-morse"}) {
        const ComplexPtr c = make_approximant(bundled(name), 1);
        const Presentation forward = fundamental_presentation(*c);
        const Presentation backward = fundamental_presentation(*c, PresentationOptions{true});
        const RepVariety a = conj_quotient(enumerate_homs(forward, s3), s3);
        const RepVariety b = conj_quotient(enumerate_homs(backward, s3), s3);
        CHECK(a.size() == b.size());
        CHECK(induced_repvar_map(identity_map(c), s3, forward, backward, a, b).is_bijection());
    }
    const ApproximantComplex klein = data_complex("klein.cw");
    CHECK(variety(klein, s3).size() == variety(klein, s3, PresentationOptions{true}).size());
}

TEST_CASE("induced pi1 words are loops")
{
    const ComplexPtr c2 = make_approximant(bundled("thue-morse"), 2);
    const ComplexPtr c1 = make_approximant(bundled("thue-morse"), 1);
    const Presentation p2 = fundamental_presentation(*c2), p1 = fundamental_presentation(*c1);
    const auto words = induced_pi1(forgetful_map(c2, c1), p2, p1);
    CHECK(words.size() == p2.generator_count());
    for (const auto& w : words)
        for (const auto& letter : w)
            CHECK(letter.generator < p1.generator_count());
}

TEST_CASE("presentation errors and budgets")
{
    std::vector<std::vector<Cell>> cells(1);
    for (std::size_t i = 0; i < 2; ++i) {
        Cell v;
        v.id = i;
        v.label = "v" + std::to_string(i);
        cells[0].push_back(v);
    }
    const ApproximantComplex two_points = ApproximantComplex::from_cells(0, cells);
    CHECK_THROWS_AS(fundamental_presentation(two_points), PreconditionError);

    const ComplexPtr chair = make_approximant(bundled("chair-block"), 1);
    CHECK_THROWS_WITH(enumerate_homs(fundamental_presentation(*chair), FiniteGroup::symmetric(3)),
                      Catch::Matchers::ContainsSubstring("exceeds the budget"));
    CHECK_THROWS_AS(enumerate_homs(fundamental_presentation(data_complex("wedge.cw")), FiniteGroup::symmetric(3), 35),
                    BudgetError);
}
