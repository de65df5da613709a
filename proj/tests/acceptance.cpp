// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "pecoh/approximant.hpp"
#include "pecoh/cohomology.hpp"
#include "pecoh/complex_io.hpp"
#include "pecoh/errors.hpp"
#include "pecoh/finite_group.hpp"
#include "pecoh/limits.hpp"
#include "pecoh/repvariety.hpp"
#include "pecoh/smith.hpp"
#include "pecoh/tower.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <sys/wait.h>

using namespace pecoh;

namespace {

// Runtime limits in seconds; all checks are exact, so there is no numeric tolerance.
constexpr double kLimitFibonacci = 1.0;
constexpr double kLimitPeriodic = 1.0;
constexpr double kLimitDyadic = 10.0; // no stated limit; generous bound for one CLI call
constexpr double kLimitThueMorse = 5.0;
constexpr double kLimitHomalg = 10.0;
constexpr double kLimitRepvar = 10.0;
constexpr double kLimitFunctoriality = 10.0;
constexpr double kLimitChair = 120.0;

struct Outcome {
    bool ok = true;
    std::vector<std::string> failures;
    void require(bool condition, const std::string& what)
    {
        if (!condition) {
            ok = false;
            failures.push_back(what);
        }
    }
};

SubstitutionRule bundled(const std::string& name)
{
    return load_rule(std::string(PECOH_DATA_DIR) + "/rules/" + name + ".json");
}

ApproximantComplex data_complex(const std::string& name)
{
    return load_complex(std::string(PECOH_DATA_DIR) + "/complexes/" + name);
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

std::size_t factor_count(const std::string& word, std::size_t length)
{
    std::set<std::string> out;
    for (std::size_t i = 0; i + length <= word.size(); ++i)
        out.insert(word.substr(i, length));
    return out.size();
}

bool is_limit(const LimitGroup& g, const std::string& text) { return to_string(g) == text; }

AbelianGroup free_group(std::size_t rank) { return AbelianGroup{rank, {}}; }

// 1. Fibonacci.
Outcome fibonacci()
{
    Outcome out;
    const SubstitutionRule fib = bundled("fibonacci");
    const std::string word = iterate_word({{'a', "ab"}, {'b', "a"}}, "a", 10);
    const ComplexPtr g1 = make_approximant(fib, 1);
    out.require(g1->count(1) == 4 && factor_count(word, 3) == 4, "Gamma_1 has 4 edges");
    out.require(g1->count(0) == 3 && factor_count(word, 2) == 3, "Gamma_1 has 3 vertices");
    out.require(smith_normal_form(g1->boundary_matrix(1)).invariant_factors == std::vector<Integer>{1, 1},
                "incidence SNF is diag(1,1)");
    const GahlerTower tower = gahler_tower(fib, 1, 3, Coefficients::integers(), 2);
    for (const auto& level : tower.levels) {
        out.require(level.cohomology.group(0) == free_group(1), "H^0 = Z at collar " + std::to_string(level.level));
        out.require(level.cohomology.group(1) == free_group(2), "H^1 = Z^2 at collar " + std::to_string(level.level));
    }
    out.require(tower.limits[1].is_stabilized() &&
                    std::get<StabilizedLimit>(tower.limits[1].value).group == free_group(2),
                "Gahler tower stabilizes to Z^2");
    const SubstitutionRoute route = substitution_route(fib, 1, Coefficients::integers());
    out.require(route.limits[1].is_endo(), "substitution route yields an endomorphism limit");
    out.require(group_equal(route.limits[1], tower.limits[1]) == GroupComparison::Equal, "routes agree on H^1");
    return out;
}

// 2. Single-tile periodic 2D rule.
Outcome periodic_2d()
{
    Outcome out;
    const SubstitutionRule rule = bundled("periodic-2d");
    std::vector<ComplexPtr> levels;
    for (std::size_t n = 0; n <= 3; ++n) {
        levels.push_back(make_approximant(rule, n));
        const auto& c = *levels.back();
        out.require(c.count(0) == 1 && c.count(1) == 2 && c.count(2) == 1,
                    "torus cell structure at level " + std::to_string(n));
        out.require(c.boundary_matrix(1).is_zero() && c.boundary_matrix(2).is_zero(), "torus boundary maps vanish");
        const auto h = cohomology(c.cochain_complex(), Coefficients::integers());
        out.require(h.group(0) == free_group(1) && h.group(1) == free_group(2) && h.group(2) == free_group(1),
                    "cohomology Z, Z^2, Z at level " + std::to_string(n));
    }
    for (std::size_t a = 0; a <= 3; ++a)
        for (std::size_t b = a + 1; b <= 3; ++b) {
            const CellularMap f = forgetful_map(levels[b], levels[a]);
            for (int k = 0; k <= 2; ++k)
                out.require(f.chain[static_cast<std::size_t>(k)] == IntegerMatrix::identity(levels[a]->count(k)),
                            "forgetful map is the identity");
        }
    return out;
}

// Runs the CLI, returning (exit status, combined output).
std::pair<int, std::string> run_cli(const std::string& args)
{
    const std::string command = std::string(PECOH_CLI) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe)
        return {-1, "popen failed"};
    std::string output;
    std::array<char, 256> buffer{};
    while (fgets(buffer.data(), static_cast<int>(buffer.size()), pipe))
        output += buffer.data();
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

// 3. Dyadic single tile, declared periodic.
Outcome dyadic()
{
    Outcome out;
    const SubstitutionRule rule = bundled("dyadic");
    const GahlerTower tower = gahler_tower(rule, 1, 3, Coefficients::integers(), 2);
    const std::vector<std::size_t> ranks{1, 2, 1};
    for (std::size_t k = 0; k < 3; ++k)
        out.require(tower.limits[k].is_stabilized() &&
                        std::get<StabilizedLimit>(tower.limits[k].value).group == free_group(ranks[k]),
                    "Gahler route gives the torus in degree " + std::to_string(k));
    const auto [status, text] =
        run_cli("cohomology " + std::string(PECOH_DATA_DIR) + "/rules/dyadic.json --route substitution");
    out.require(status == 3, "substitution route exits with code 3 (got " + std::to_string(status) + ")");
    out.require(text.find("not declared aperiodic") != std::string::npos &&
                    text.find("Use the gahler route") != std::string::npos,
                "refusal message names the reason and the alternative");
    return out;
}

// 4. Thue-Morse.
Outcome thue_morse()
{
    Outcome out;
    const SubstitutionRule tm = bundled("thue-morse");
    const ComplexPtr g1 = make_approximant(tm, 1);
    out.require(g1->count(1) == 6, "Gamma_1 has 6 edges");
    out.require(g1->count(0) == 4, "Gamma_1 has 4 vertices");
    out.require(cohomology(g1->cochain_complex(), Coefficients::integers()).group(1) == free_group(3),
                "H^1(Gamma_1) = Z^3");

    const SubstitutionRoute route = substitution_route(tm, 1, Coefficients::integers());
    const LimitGroup& endo = route.limits[1];
    out.require(is_limit(endo, "Z ⊕ Z[1/2]"), "substitution route renders Z ⊕ Z[1/2] (got " + to_string(endo) + ")");
    out.require(rational_rank(endo) == std::optional<std::size_t>(2), "substitution route has rational rank 2");
    out.require(free_part_mod_p_dimension(endo, 2) == std::optional<std::size_t>(1),
                "substitution route has one 2-divisible summand");

    const GahlerTower tower = gahler_tower(tm, 1, 3, Coefficients::integers(), 2);
    const LimitGroup& gahler = tower.limits[1];
    out.require(group_equal(gahler, endo) == GroupComparison::Equal,
                "Gahler and substitution routes agree in degree 1 (Gahler: " + to_string(gahler) + ")");
    return out;
}

// Oracle: rank over Q by Gaussian elimination on rationals.
std::size_t rational_rank_oracle(std::vector<std::vector<Integer>> dense)
{
    using Rational = boost::multiprecision::cpp_rational;
    std::vector<std::vector<Rational>> m;
    for (const auto& row : dense)
        m.emplace_back(row.begin(), row.end());
    std::size_t rank = 0;
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && m[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(m[p], m[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            const Rational f = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k)
                m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

std::vector<CochainComplex> bundled_cochain_complexes()
{
    std::vector<CochainComplex> out;
    for (const char* name : {"torus.cw", "klein.cw", "projective-plane.cw", "wedge.cw"})
        out.push_back(data_complex(name).cochain_complex());
    for (const char* rule : {"fibonacci", "thue-morse", "period-doubling", "periodic", "periodic-2d", "dyadic",
                             "chair-block"}) {
        const SubstitutionRule r = bundled(rule);
        for (std::size_t n = 0; n <= 2; ++n)
            out.push_back(make_approximant(r, n)->cochain_complex());
    }
    return out;
}

// 5. Homological algebra.
Outcome homalg()
{
    Outcome out;
    std::mt19937 gen(20240611);
    std::uniform_int_distribution<std::size_t> dim(1, 8);
    std::uniform_int_distribution<int> entry(-9, 9);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::vector<Integer>> dense(dim(gen));
        const std::size_t cols = dim(gen);
        for (auto& row : dense) {
            row.resize(cols);
            for (auto& v : row)
                v = entry(gen);
        }
        const IntegerMatrix a = IntegerMatrix::from_dense(dense);
        const SmithDecomposition s = smith_normal_form(a);
        bool divides = true;
        for (std::size_t i = 0; i + 1 < s.rank(); ++i)
            divides = divides && s.invariant_factors[i + 1] % s.invariant_factors[i] == 0;
        out.require(s.U * a * s.V == s.D, "U A V = D on trial " + std::to_string(trial));
        out.require(divides, "divisibility chain on trial " + std::to_string(trial));
        out.require(s.rank() == rational_rank_oracle(dense), "rank agreement on trial " + std::to_string(trial));
    }

    const auto z = Coefficients::integers();
    auto groups = [&](const char* name) {
        const auto h = cohomology(data_complex(name).cochain_complex(), z);
        return to_string(h.group(0)) + "," + to_string(h.group(1)) + "," + to_string(h.group(2));
    };
    out.require(groups("torus.cw") == "Z,Z^2,Z", "torus cohomology");
    out.require(groups("klein.cw") == "Z,Z,Z/2", "Klein bottle cohomology");
    out.require(groups("projective-plane.cw") == "Z,0,Z/2", "projective plane cohomology");

    for (const auto& complex : bundled_cochain_complexes()) {
        const auto hz = cohomology(complex, z);
        for (long long p : {2, 3, 5}) {
            const auto hp = cohomology(complex, Coefficients::modular(p));
            for (std::size_t k = 0; k < hz.degrees.size(); ++k) {
                std::size_t exponent = hz.group(k).free_rank + hz.group(k).torsion_count_divisible_by(p);
                if (k + 1 < hz.degrees.size())
                    exponent += hz.group(k + 1).torsion_count_divisible_by(p);
                Integer expected = 1;
                for (std::size_t i = 0; i < exponent; ++i)
                    expected *= p;
                out.require(hp.group(k).torsion_order() == expected,
                            "universal coefficients mod " + std::to_string(p) + " in degree " + std::to_string(k));
            }
        }
    }
    return out;
}

// 6. Representation varieties.
Outcome repvariety()
{
    Outcome out;
    const FiniteGroup s3 = FiniteGroup::symmetric(3);
    const Presentation wedge = fundamental_presentation(data_complex("wedge.cw"));
    const auto free_homs = enumerate_homs(wedge, s3);
    // Burnside oracle over the Cayley table: orbits = sum_g |C(g)|^2 / |G|.
    std::size_t burnside = 0, commuting = 0;
    for (std::size_t g = 0; g < s3.order(); ++g) {
        std::size_t centralizer = 0;
        for (std::size_t h = 0; h < s3.order(); ++h)
            centralizer += s3.multiply(g, h) == s3.multiply(h, g);
        burnside += centralizer * centralizer;
        commuting += centralizer;
    }
    out.require(free_homs.size() == 36, "|Hom(F_2, S_3)| = 36");
    out.require(conj_quotient(free_homs, s3).size() == 11 && burnside / s3.order() == 11, "11 conjugation orbits");
    const Presentation torus = fundamental_presentation(data_complex("torus.cw"));
    out.require(enumerate_homs(torus, s3).size() == 18 && commuting == 18, "torus into S_3 gives 18 homs");

    std::vector<ApproximantComplex> complexes;
    for (const char* name : {"torus.cw", "klein.cw", "projective-plane.cw", "wedge.cw"})
        complexes.push_back(data_complex(name));
    for (const char* rule : {"fibonacci", "thue-morse", "period-doubling", "periodic"})
        for (std::size_t n = 1; n <= 2; ++n)
            complexes.push_back(*make_approximant(bundled(rule), n));
    for (const char* rule : {"periodic-2d", "dyadic"})
        complexes.push_back(*make_approximant(bundled(rule), 1));
    for (const auto& c : complexes)
        for (std::size_t k = 1; k <= 6; ++k)
            out.require(abelian_crosscheck(c, FiniteGroup::cyclic(k)).passed,
                        "crosscheck with Z/" + std::to_string(k));

    const SubstitutionRule fib = bundled("fibonacci");
    const FiniteGroup z2 = FiniteGroup::cyclic(2);
    std::vector<ComplexPtr> levels;
    std::vector<Presentation> pres;
    std::vector<RepVariety> vars;
    for (std::size_t n = 1; n <= 3; ++n) {
        levels.push_back(make_approximant(fib, n));
        pres.push_back(fundamental_presentation(*levels.back()));
        vars.push_back(conj_quotient(enumerate_homs(pres.back(), z2), z2));
    }
    std::vector<VarietyMap> maps;
    for (std::size_t i = 0; i + 1 < levels.size(); ++i)
        maps.push_back(induced_repvar_map(forgetful_map(levels[i + 1], levels[i]), z2, pres[i + 1], pres[i],
                                          vars[i + 1], vars[i]));
    const RepVarietyLimit limit = repvar_limit(vars, maps, 2, 1);
    const auto h1 = cohomology(levels.back()->cochain_complex(), Coefficients::modular(2)).group(1);
    out.require(limit.stabilized && limit.variety.size() == 4, "Fibonacci tower with Z/2 stabilizes to 4 points");
    out.require(Integer(limit.variety.size()) == h1.torsion_order(), "variety size matches |H^1(.; Z/2)|");
    return out;
}

// 7. Functoriality and limit properties.
Outcome functoriality()
{
    Outcome out;
    for (const char* name : {"fibonacci", "thue-morse", "period-doubling", "periodic", "periodic-2d", "dyadic",
                             "chair-block"}) {
        const SubstitutionRule rule = bundled(name);
        std::vector<ComplexPtr> levels;
        for (std::size_t n = 0; n <= 3; ++n) {
            levels.push_back(make_approximant(rule, n));
            bool ok = true;
            try {
                levels.back()->cochain_complex().verify();
            } catch (const PreconditionError&) {
                ok = false;
            }
            out.require(ok, std::string(name) + ": boundary of boundary vanishes at level " + std::to_string(n));
        }
        for (std::size_t a = 0; a <= 3; ++a)
            for (std::size_t b = a + 1; b <= 3; ++b) {
                const CellularMap ba = forgetful_map(levels[b], levels[a]);
                out.require(ba.commutes_with_boundary(), std::string(name) + ": forgetful map is a chain map");
                for (std::size_t c = b + 1; c <= 3; ++c)
                    out.require(compose(ba, forgetful_map(levels[c], levels[b])).chain ==
                                    forgetful_map(levels[c], levels[a]).chain,
                                std::string(name) + ": forgetful maps compose");
            }
        if (rule.aperiodic())
            for (std::size_t n = 1; n <= 3; ++n)
                out.require(substitution_map(levels[n]).commutes_with_boundary(),
                            std::string(name) + ": substitution map is a chain map");
    }

    std::mt19937 gen(99);
    std::uniform_int_distribution<int> pick(0, 1), factor(-2, 2);
    for (const IntegerMatrix& m :
         {IntegerMatrix::from_rows({{2, 0}, {0, 3}}), IntegerMatrix::from_rows({{1, 1}, {1, 0}})}) {
        const AbelianGroup z2 = free_group(2);
        const LimitGroup base = direct_limit_endomorphism(z2, make_group_hom(z2, z2, m));
        for (int trial = 0; trial < 100; ++trial) {
            IntegerMatrix u = IntegerMatrix::identity(2), u_inv = IntegerMatrix::identity(2);
            for (int step = 0; step < 6; ++step) {
                const std::size_t i = static_cast<std::size_t>(pick(gen)), j = 1 - i;
                const int f = factor(gen);
                u.add_row_multiple(i, j, f);
                // Inverse of an elementary operation, applied on the other side.
                IntegerMatrix e = IntegerMatrix::identity(2);
                e.set(i, j, -f);
                u_inv = u_inv * e;
            }
            out.require(u * u_inv == IntegerMatrix::identity(2), "unimodular inverse");
            const LimitGroup conj = direct_limit_endomorphism(z2, make_group_hom(z2, z2, u * m * u_inv));
            out.require(group_equal(base, conj) == GroupComparison::Equal,
                        "conjugation invariance on trial " + std::to_string(trial));
        }
    }
    return out;
}

// 8. Chair block encoding: internal consistency of the two routes.
Outcome chair()
{
    Outcome out;
    const SubstitutionRule rule = bundled("chair-block");
    const GahlerTower tower = gahler_tower(rule, 1, 3, Coefficients::integers(), 2);
    out.require(tower.levels.size() == 3, "Gahler levels 1..3 reported");
    const SubstitutionRoute route = substitution_route(rule, 1, Coefficients::integers());
    for (std::size_t k = 0; k < 3; ++k) {
        out.require(route.limits[k].is_endo(), "substitution route limit in degree " + std::to_string(k));
        out.require(group_equal(tower.limits[k], route.limits[k]) != GroupComparison::Distinct,
                    "routes are not distinct in degree " + std::to_string(k));
    }
    return out;
}

struct Criterion {
    int number;
    const char* title;
    double limit_seconds;
    std::function<Outcome()> run;
};

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "Fibonacci approximants, tower and routes", kLimitFibonacci, fibonacci},
        {2, "periodic 2D rule gives the torus", kLimitPeriodic, periodic_2d},
        {3, "dyadic rule: torus via Gahler, substitution route refused", kLimitDyadic, dyadic},
        {4, "Thue-Morse routes agree on Z ⊕ Z[1/2]", kLimitThueMorse, thue_morse},
        {5, "homological algebra suite", kLimitHomalg, homalg},
        {6, "representation varieties", kLimitRepvar, repvariety},
        {7, "functoriality and limit invariance", kLimitFunctoriality, functoriality},
        {8, "chair routes never distinct", kLimitChair, chair},
    };
    bool all = true;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome.require(false, std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream time;
        time.precision(3);
        time << std::fixed << seconds;
        outcome.require(seconds < c.limit_seconds, "runtime " + time.str() + " s exceeds the limit");
        all = all && outcome.ok;
        std::cout << (outcome.ok ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title << " ("
                  << time.str() << " s)";
        if (!outcome.ok) {
            std::cout << " --";
            for (std::size_t i = 0; i < outcome.failures.size() && i < 3; ++i)
                std::cout << (i ? "; " : " ") << outcome.failures[i];
            if (outcome.failures.size() > 3)
                std::cout << "; +" << outcome.failures.size() - 3 << " more";
        }
        std::cout << std::endl;
    }
    return all ? 0 : 1;
}
