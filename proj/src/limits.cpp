#include "pecoh/limits.hpp"

#include "pecoh/errors.hpp"
#include "pecoh/smith.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace pecoh {

namespace {

constexpr std::int64_t kLargestComparedPrime = 97;

std::size_t rank_mod_p(const IntegerMatrix& a, std::int64_t p)
{
    std::vector<std::vector<std::int64_t>> m(a.rows(), std::vector<std::int64_t>(a.cols(), 0));
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (const auto& [c, v] : a.row(r))
            m[r][c] = static_cast<std::int64_t>(mod_positive(v, p));
    std::size_t rank = 0;
    for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
        std::size_t piv = rank;
        while (piv < a.rows() && m[piv][c] == 0)
            ++piv;
        if (piv == a.rows())
            continue;
        std::swap(m[piv], m[rank]);
        // Fermat inverse; p is prime.
        std::int64_t inv = 1, base = m[rank][c], e = p - 2;
        while (e > 0) {
            if (e & 1)
                inv = inv * base % p;
            base = base * base % p;
            e >>= 1;
        }
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == rank || m[r][c] == 0)
                continue;
            std::int64_t f = m[r][c] * inv % p;
            for (std::size_t k = c; k < a.cols(); ++k)
                m[r][k] = ((m[r][k] - f * m[rank][k]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

IntegerMatrix power(const IntegerMatrix& m, std::size_t e)
{
    IntegerMatrix result = IntegerMatrix::identity(m.rows());
    IntegerMatrix base = m;
    while (e > 0) {
        if (e & 1)
            result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

// Distinct primes of n, or nullopt when a large cofactor cannot be resolved
// by bounded trial division.
std::optional<std::vector<Integer>> bounded_prime_factors(Integer n)
{
    constexpr long long kTrialBound = 1000000;
    if (n < 0)
        n = -n;
    std::vector<Integer> out;
    for (long long p = 2; p <= kTrialBound && Integer(p) * p <= n; ++p) {
        if (n % p == 0) {
            out.emplace_back(p);
            while (n % p == 0)
                n /= p;
        }
    }
    if (n > 1) {
        if (n > Integer(kTrialBound) * kTrialBound)
            return std::nullopt;
        out.push_back(n);
    }
    return out;
}

// Structure of the subgroup of (+) Z/orders[i] generated by the columns of gens.
AbelianGroup generated_subgroup(const IntegerMatrix& gens, const std::vector<Integer>& orders)
{
    const std::size_t t = orders.size(), s = gens.cols();
    if (s == 0)
        return {};
    IntegerMatrix neg_orders(t, t);
    for (std::size_t i = 0; i < t; ++i)
        neg_orders.set(i, i, -orders[i]);
    KernelLattice rel = kernel_lattice(IntegerMatrix::hstack(gens, neg_orders));
    IntegerMatrix relations = rel.basis.row_range(0, s);
    SmithOptions opts;
    opts.left = opts.right = false;
    auto snf = smith_normal_form(relations, opts);
    return AbelianGroup::from_factors(s - snf.rank(), snf.invariant_factors);
}

std::optional<std::vector<LocalizedSummand>> integer_eigenbasis_summands(const IntegerMatrix& m)
{
    constexpr long long kEigenvalueBound = 100000;
    const std::size_t r = m.rows();
    const Integer det = determinant(m);
    Integer bound = 0;
    for (std::size_t i = 0; i < r; ++i) {
        Integer row_sum = 0;
        for (const auto& e : m.row(i))
            row_sum += abs(e.second);
        bound = std::max(bound, row_sum);
    }
    if (bound > kEigenvalueBound)
        return std::nullopt;
    IntegerMatrix basis(r, 0);
    std::vector<LocalizedSummand> summands;
    const long long b = static_cast<long long>(bound);
    for (long long lambda = -b; lambda <= b; ++lambda) {
        if (lambda == 0 || det % lambda != 0)
            continue;
        IntegerMatrix shifted = m - Integer(lambda) * IntegerMatrix::identity(r);
        KernelLattice eig = kernel_lattice(shifted);
        if (eig.dimension() == 0)
            continue;
        basis = IntegerMatrix::hstack(basis, eig.basis);
        auto primes = *bounded_prime_factors(Integer(lambda));
        for (std::size_t k = 0; k < eig.dimension(); ++k)
            summands.push_back({primes});
    }
    if (basis.cols() != r || abs(determinant(basis)) != 1)
        return std::nullopt;
    std::sort(summands.begin(), summands.end());
    return summands;
}

// L = lim(Z^r, M) equals Z[1/S]^r when M is nilpotent mod every prime of det M.
std::optional<std::vector<LocalizedSummand>> uniform_localization(const IntegerMatrix& m)
{
    const std::size_t r = m.rows();
    auto primes = bounded_prime_factors(determinant(m));
    if (!primes)
        return std::nullopt;
    const IntegerMatrix top = power(m, r);
    for (const Integer& p : *primes)
        if (!top.reduced_mod(p).is_zero())
            return std::nullopt;
    return std::vector<LocalizedSummand>(r, LocalizedSummand{*primes});
}

// Coefficients of det(xI - M), constant term first (Faddeev-LeVerrier; every
// division is exact over Z).
std::vector<Integer> characteristic_polynomial(const IntegerMatrix& m)
{
    const std::size_t r = m.rows();
    std::vector<Integer> coeff(r + 1, 0);
    coeff[r] = 1;
    IntegerMatrix acc(r, r);
    for (std::size_t k = 1; k <= r; ++k) {
        acc = m * acc + coeff[r - k + 1] * IntegerMatrix::identity(r);
        const IntegerMatrix prod = m * acc;
        Integer trace = 0;
        for (std::size_t i = 0; i < r; ++i)
            trace += prod.at(i, i);
        coeff[r - k] = -trace / static_cast<long long>(k);
    }
    return coeff;
}

// Divides by (x - root) when it is a factor.
bool divide_linear(std::vector<Integer>& poly, const Integer& root)
{
    if (poly.size() < 2)
        return false;
    std::vector<Integer> quotient(poly.size() - 1, 0);
    Integer carry = 0;
    for (std::size_t i = poly.size(); i-- > 1;) {
        carry = poly[i] + carry * root;
        quotient[i - 1] = carry;
    }
    if (poly[0] + carry * root != 0)
        return false;
    poly = std::move(quotient);
    return true;
}

IntegerMatrix evaluate(const std::vector<Integer>& poly, const IntegerMatrix& m)
{
    IntegerMatrix acc(m.rows(), m.cols());
    for (std::size_t i = poly.size(); i-- > 0;)
        acc = m * acc + poly[i] * IntegerMatrix::identity(m.rows());
    return acc;
}

// Matrix of m restricted to the invariant lattice spanned by `basis`.
IntegerMatrix restrict_to(const IntegerMatrix& m, const IntegerMatrix& basis)
{
    const IntegerMatrix moved = m * basis;
    IntegerMatrix out(basis.cols(), basis.cols());
    for (std::size_t j = 0; j < basis.cols(); ++j) {
        auto coords = solve_in_lattice(basis, moved.column(j));
        if (!coords)
            throw InternalError("sublattice is not invariant under the endomorphism");
        for (std::size_t i = 0; i < basis.cols(); ++i)
            out.set(i, j, (*coords)[i]);
    }
    return out;
}

std::optional<std::vector<LocalizedSummand>> simplify_free_limit(const IntegerMatrix& m);

// Eigenvalues +-1 split off: with chi = f * (x-1)^a (x+1)^b, K = ker f(M) is
// saturated and invariant, and M is unimodular on Z^r / K, so the limit is
// lim(K) + Z^(a+b).
std::optional<std::vector<LocalizedSummand>> unit_root_split(const IntegerMatrix& m)
{
    std::vector<Integer> rest = characteristic_polynomial(m);
    std::size_t unit_roots = 0;
    for (const Integer root : {Integer(1), Integer(-1)})
        while (divide_linear(rest, root))
            ++unit_roots;
    if (unit_roots == 0 || unit_roots == m.rows())
        return std::nullopt;
    const KernelLattice kernel = kernel_lattice(evaluate(rest, m));
    if (kernel.dimension() + unit_roots != m.rows())
        throw InternalError("unit-root splitting: kernel has the wrong dimension");
    auto inner = simplify_free_limit(restrict_to(m, kernel.basis));
    if (!inner)
        return std::nullopt;
    inner->insert(inner->end(), unit_roots, LocalizedSummand{});
    std::sort(inner->begin(), inner->end());
    return inner;
}

std::optional<std::vector<LocalizedSummand>> simplify_free_limit(const IntegerMatrix& m)
{
    if (m.rows() == 0)
        return std::vector<LocalizedSummand>{};
    if (abs(determinant(m)) == 1)
        return std::vector<LocalizedSummand>(m.rows(), LocalizedSummand{});
    if (auto eig = integer_eigenbasis_summands(m))
        return eig;
    if (auto uni = uniform_localization(m))
        return uni;
    return unit_root_split(m);
}

std::string summand_string(const LocalizedSummand& s)
{
    if (s.inverted_primes.empty())
        return "Z";
    Integer product = 1;
    for (const Integer& p : s.inverted_primes)
        product *= p;
    return "Z[1/" + to_string(product) + "]";
}

std::string matrix_string(const IntegerMatrix& m)
{
    std::ostringstream out;
    out << "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out << (r ? ", [" : "[");
        for (std::size_t c = 0; c < m.cols(); ++c)
            out << (c ? ", " : "") << m.at(r, c);
        out << "]";
    }
    out << "]";
    return out.str();
}

struct CanonicalForm {
    std::size_t rank = 0;
    std::optional<std::vector<LocalizedSummand>> summands;
    AbelianGroup torsion;
};

std::optional<CanonicalForm> canonical_form(const LimitGroup& g)
{
    if (const auto* s = std::get_if<StabilizedLimit>(&g.value)) {
        CanonicalForm c;
        c.rank = s->group.free_rank;
        c.summands = std::vector<LocalizedSummand>(c.rank);
        c.torsion.torsion = s->group.torsion;
        return c;
    }
    if (const auto* e = std::get_if<EndoLimit>(&g.value)) {
        CanonicalForm c;
        c.rank = e->rank;
        c.summands = e->simplified;
        c.torsion = e->torsion;
        return c;
    }
    return std::nullopt;
}

} // namespace

std::string LimitGroup::kind_name() const
{
    if (is_stabilized())
        return "Stabilized";
    if (is_endo())
        return "EndoLimit";
    return "Undetermined";
}

std::string to_string(const LimitGroup& g)
{
    if (const auto* s = std::get_if<StabilizedLimit>(&g.value))
        return to_string(s->group) + " (" + s->caveat + ")";
    if (const auto* u = std::get_if<UndeterminedLimit>(&g.value))
        return "undetermined: " + u->diagnostic;
    const auto& e = std::get<EndoLimit>(g.value);
    std::vector<std::string> parts;
    if (e.simplified) {
        std::map<LocalizedSummand, std::size_t> counts;
        for (const auto& s : *e.simplified)
            ++counts[s];
        for (const auto& [s, n] : counts)
            parts.push_back(summand_string(s) + (n > 1 ? "^" + std::to_string(n) : ""));
    } else if (e.rank > 0) {
        parts.push_back("limit of Z" + (e.rank > 1 ? "^" + std::to_string(e.rank) : std::string()) +
                        " under M = " + matrix_string(e.matrix));
    }
    if (!e.torsion.is_trivial())
        parts.push_back(to_string(e.torsion));
    if (parts.empty())
        return "0";
    std::string out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i)
        out += " ⊕ " + parts[i];
    return out;
}

LimitGroup direct_limit_sequence(const std::vector<AbelianGroup>& groups, const std::vector<GroupHom>& maps,
                                 std::size_t window, std::size_t first_level)
{
    if (groups.empty() || maps.size() + 1 != groups.size())
        throw PreconditionError("direct_limit_sequence: need exactly one map between consecutive groups");
    if (window == 0)
        throw PreconditionError("direct_limit_sequence: window must be at least 1");
    for (std::size_t i = 0; i < maps.size(); ++i)
        if (!(maps[i].source == groups[i]) || !(maps[i].target == groups[i + 1]))
            throw PreconditionError("direct_limit_sequence: map " + std::to_string(i) +
                                    " does not connect consecutive groups");
    bool stable = maps.size() >= window;
    for (std::size_t i = maps.size() - std::min(window, maps.size()); stable && i < maps.size(); ++i)
        stable = maps[i].is_isomorphism();
    if (stable) {
        StabilizedLimit s;
        s.group = groups.back();
        s.level = first_level + groups.size() - 1 - window;
        s.window = window;
        s.caveat = "heuristic stabilization at level " + std::to_string(s.level) + ", window " +
                   std::to_string(window);
        return {s};
    }
    UndeterminedLimit u;
    u.trajectory = groups;
    std::ostringstream diag;
    diag << "no window of " << window << " isomorphisms; groups";
    for (std::size_t i = 0; i < groups.size(); ++i)
        diag << (i ? " -> " : " ") << to_string(groups[i]);
    u.diagnostic = diag.str();
    return {u};
}

LimitGroup direct_limit_endomorphism(const AbelianGroup& group, const GroupHom& endomorphism)
{
    if (!(endomorphism.source == group) || !(endomorphism.target == group))
        throw PreconditionError("direct_limit_endomorphism: map is not an endomorphism of the group");
    const std::size_t t = group.torsion.size(), r = group.free_rank;
    EndoLimit out;

    // Free quotient: the free-by-free block. Its eventual image over Q is
    // reached after r steps.
    if (r > 0) {
        std::vector<std::size_t> free_idx;
        for (std::size_t i = t; i < t + r; ++i)
            free_idx.push_back(i);
        const IntegerMatrix m = endomorphism.matrix.select_rows(free_idx).select_columns(free_idx);
        const IntegerMatrix eventual = image_lattice_basis(power(m, r));
        out.rank = eventual.cols();
        out.matrix = restrict_to(m, eventual);
    }
    out.simplified = simplify_free_limit(out.matrix);

    // Torsion: iterate the image chain until its order stops dropping.
    if (t > 0) {
        std::vector<std::size_t> tors_idx;
        for (std::size_t i = 0; i < t; ++i)
            tors_idx.push_back(i);
        const IntegerMatrix et = endomorphism.matrix.select_rows(tors_idx).select_columns(tors_idx);
        IntegerMatrix gens = IntegerMatrix::identity(t);
        AbelianGroup current = generated_subgroup(gens, group.torsion);
        for (;;) {
            IntegerMatrix next = et * gens;
            IntegerMatrix reduced(t, next.cols());
            for (std::size_t i = 0; i < t; ++i)
                for (const auto& [c, v] : next.row(i))
                    reduced.set(i, c, mod_positive(v, group.torsion[i]));
            AbelianGroup image = generated_subgroup(reduced, group.torsion);
            if (image.torsion_order() == current.torsion_order())
                break;
            current = image;
            gens = reduced;
        }
        out.torsion = current;
    }
    return {out};
}

std::string to_string(GroupComparison c)
{
    switch (c) {
    case GroupComparison::Equal:
        return "equal";
    case GroupComparison::Distinct:
        return "distinct";
    case GroupComparison::Indeterminate:
        return "indeterminate";
    }
    return "?";
}

std::optional<std::size_t> rational_rank(const LimitGroup& g)
{
    auto c = canonical_form(g);
    if (!c)
        return std::nullopt;
    return c->rank;
}

std::optional<std::size_t> free_part_mod_p_dimension(const LimitGroup& g, std::int64_t p)
{
    if (const auto* s = std::get_if<StabilizedLimit>(&g.value))
        return s->group.free_rank;
    if (const auto* e = std::get_if<EndoLimit>(&g.value)) {
        if (e->rank == 0)
            return 0;
        return rank_mod_p(power(e->matrix.reduced_mod(p), e->rank).reduced_mod(p), p);
    }
    return std::nullopt;
}

GroupComparison group_equal(const LimitGroup& a, const LimitGroup& b)
{
    auto ca = canonical_form(a);
    auto cb = canonical_form(b);
    if (!ca || !cb)
        return GroupComparison::Indeterminate;
    if (ca->summands && cb->summands && ca->torsion == cb->torsion) {
        auto sa = *ca->summands, sb = *cb->summands;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa == sb)
            return GroupComparison::Equal;
    }
    if (ca->rank != cb->rank || !(ca->torsion == cb->torsion))
        return GroupComparison::Distinct;
    for (std::int64_t p : primes_up_to(kLargestComparedPrime))
        if (free_part_mod_p_dimension(a, p) != free_part_mod_p_dimension(b, p))
            return GroupComparison::Distinct;
    return GroupComparison::Indeterminate;
}

} // namespace pecoh
