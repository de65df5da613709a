#include "pecoh/finite_group.hpp"

#include "pecoh/abelian.hpp"
#include "pecoh/errors.hpp"
#include "pecoh/smith.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>

namespace pecoh {

FiniteGroup::FiniteGroup(std::vector<std::string> names, std::vector<std::vector<std::size_t>> table)
    : names_(std::move(names)), table_(std::move(table))
{
    const std::size_t n = names_.size();
    if (n == 0)
        throw InputError("group: no elements");
    if (table_.size() != n)
        throw InputError("group: table must have one row per element");
    for (const auto& row : table_) {
        if (row.size() != n)
            throw InputError("group: table rows must have one entry per element");
        for (std::size_t v : row)
            if (v >= n)
                throw InputError("group: table entry out of range");
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                    throw InputError("group: multiplication is not associative at (" + names_[a] + ", " + names_[b] +
                                     ", " + names_[c] + ")");
    bool found = false;
    for (std::size_t e = 0; e < n && !found; ++e) {
        bool neutral = true;
        for (std::size_t a = 0; a < n && neutral; ++a)
            neutral = table_[e][a] == a && table_[a][e] == a;
        if (neutral) {
            identity_ = e;
            found = true;
        }
    }
    if (!found)
        throw InputError("group: no identity element");
    inverse_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (table_[a][b] == identity_ && table_[b][a] == identity_)
                inverse_[a] = b;
    for (std::size_t a = 0; a < n; ++a)
        if (inverse_[a] == n)
            throw InputError("group: element " + names_[a] + " has no inverse");
    description_ = "table of order " + std::to_string(n);
}

FiniteGroup FiniteGroup::cyclic(std::size_t order)
{
    if (order == 0)
        throw InputError("cyclic:k needs k >= 1");
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> table(order, std::vector<std::size_t>(order));
    for (std::size_t a = 0; a < order; ++a) {
        names.push_back(std::to_string(a));
        for (std::size_t b = 0; b < order; ++b)
            table[a][b] = (a + b) % order;
    }
    FiniteGroup g(std::move(names), std::move(table));
    g.description_ = "cyclic:" + std::to_string(order);
    return g;
}

FiniteGroup FiniteGroup::dihedral(std::size_t n)
{
    if (n == 0)
        throw InputError("dihedral:n needs n >= 1");
    // Element (f, i) = s^f r^i, stored at index f*n + i; r^i s = s r^-i.
    std::vector<std::string> names;
    for (std::size_t f = 0; f < 2; ++f)
        for (std::size_t i = 0; i < n; ++i)
            names.push_back((f ? "s" : "r") + std::to_string(i));
    std::vector<std::vector<std::size_t>> table(2 * n, std::vector<std::size_t>(2 * n));
    for (std::size_t a = 0; a < 2 * n; ++a)
        for (std::size_t b = 0; b < 2 * n; ++b) {
            const std::size_t fa = a / n, ia = a % n, fb = b / n, ib = b % n;
            const std::size_t twisted = fb ? (n - ia) % n : ia;
            table[a][b] = ((fa + fb) % 2) * n + (twisted + ib) % n;
        }
    FiniteGroup g(std::move(names), std::move(table));
    g.description_ = "dihedral:" + std::to_string(n);
    return g;
}

FiniteGroup FiniteGroup::symmetric(std::size_t n)
{
    if (n == 0 || n > 5)
        throw InputError("sym:n needs 1 <= n <= 5");
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    do
        perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<std::size_t>, std::size_t> index;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < perms.size(); ++i) {
        index[perms[i]] = i;
        std::string name;
        for (std::size_t v : perms[i])
            name += std::to_string(v + 1);
        names.push_back(name);
    }
    std::vector<std::vector<std::size_t>> table(perms.size(), std::vector<std::size_t>(perms.size()));
    for (std::size_t a = 0; a < perms.size(); ++a)
        for (std::size_t b = 0; b < perms.size(); ++b) {
            // (a * b)(i) = a(b(i))
            std::vector<std::size_t> c(n);
            for (std::size_t i = 0; i < n; ++i)
                c[i] = perms[a][perms[b][i]];
            table[a][b] = index.at(c);
        }
    FiniteGroup g(std::move(names), std::move(table));
    g.description_ = "sym:" + std::to_string(n);
    return g;
}

FiniteGroup FiniteGroup::from_json(const nlohmann::json& doc)
{
    try {
        std::vector<std::string> names;
        for (const auto& e : doc.at("elements"))
            names.push_back(e.get<std::string>());
        std::map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < names.size(); ++i)
            if (!index.emplace(names[i], i).second)
                throw InputError("group.elements: duplicate name '" + names[i] + "'");
        std::vector<std::vector<std::size_t>> table;
        for (const auto& row : doc.at("table")) {
            std::vector<std::size_t> out;
            for (const auto& v : row) {
                if (v.is_string()) {
                    auto it = index.find(v.get<std::string>());
                    if (it == index.end())
                        throw InputError("group.table: unknown element '" + v.get<std::string>() + "'");
                    out.push_back(it->second);
                } else {
                    out.push_back(v.get<std::size_t>());
                }
            }
            table.push_back(std::move(out));
        }
        return FiniteGroup(std::move(names), std::move(table));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("group: ") + e.what());
    }
}

FiniteGroup FiniteGroup::parse_spec(const std::string& spec)
{
    auto number_after = [&](std::size_t prefix) {
        const std::string digits = spec.substr(prefix);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 6)
            throw InputError("group '" + spec + "': expected a positive integer after ':'");
        return static_cast<std::size_t>(std::stoul(digits));
    };
    if (spec.rfind("cyclic:", 0) == 0)
        return cyclic(number_after(7));
    if (spec.rfind("dihedral:", 0) == 0)
        return dihedral(number_after(9));
    if (spec.rfind("sym:", 0) == 0)
        return symmetric(number_after(4));
    std::ifstream in(spec);
    if (!in)
        throw InputError("group '" + spec + "': not a built-in (cyclic:k, dihedral:n, sym:n) or readable file");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("group file is not valid JSON: " + std::string(e.what()));
    }
    FiniteGroup g = from_json(doc);
    g.description_ = spec;
    return g;
}

bool FiniteGroup::is_abelian() const
{
    for (std::size_t a = 0; a < order(); ++a)
        for (std::size_t b = a + 1; b < order(); ++b)
            if (table_[a][b] != table_[b][a])
                return false;
    return true;
}

std::size_t FiniteGroup::element_order(std::size_t a) const
{
    std::size_t k = 1;
    for (std::size_t x = a; x != identity_; x = table_[x][a])
        ++k;
    return k;
}

std::vector<Integer> FiniteGroup::abelian_invariants() const
{
    if (!is_abelian())
        throw PreconditionError("group " + description_ + " is not abelian");
    // Relation lattice of Z^n -> G (e_a -> a): a + b - (a*b) and the
    // element orders. Its Smith form gives the invariant factors.
    const std::size_t n = order();
    std::vector<std::vector<Integer>> relations;
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<Integer> r(n, 0);
        r[a] += element_order(a);
        relations.push_back(r);
        for (std::size_t b = a; b < n; ++b) {
            std::vector<Integer> s(n, 0);
            s[a] += 1;
            s[b] += 1;
            s[table_[a][b]] -= 1;
            relations.push_back(s);
        }
    }
    const IntegerMatrix rel = IntegerMatrix::from_dense(relations).transpose();
    const SmithDecomposition snf = smith_normal_form(rel, SmithOptions{false, false, false, false});
    const AbelianGroup group = AbelianGroup::from_factors(n - snf.rank(), snf.invariant_factors);
    if (group.free_rank != 0 || group.torsion_order() != Integer(n))
        throw InternalError("abelian_invariants: relation lattice has the wrong index");
    return group.torsion;
}

} // namespace pecoh
