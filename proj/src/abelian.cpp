#include "pecoh/abelian.hpp"

#include "pecoh/errors.hpp"
#include "pecoh/smith.hpp"

#include <sstream>

namespace pecoh {

AbelianGroup AbelianGroup::from_factors(std::size_t free_rank, const std::vector<Integer>& factors)
{
    std::vector<Integer> finite;
    for (const Integer& f : factors) {
        if (f == 0)
            ++free_rank;
        else if (abs(f) != 1)
            finite.push_back(abs(f));
    }
    AbelianGroup g;
    g.free_rank = free_rank;
    if (finite.empty())
        return g;
    // The Smith form of the diagonal relation matrix yields the divisibility chain.
    SmithOptions opts;
    opts.left = opts.right = false;
    auto snf = smith_normal_form(IntegerMatrix::diagonal(finite, finite.size(), finite.size()), opts);
    for (const Integer& d : snf.invariant_factors)
        if (d != 1)
            g.torsion.push_back(d);
    return g;
}

Integer AbelianGroup::torsion_order() const
{
    Integer n = 1;
    for (const Integer& t : torsion)
        n *= t;
    return n;
}

Integer AbelianGroup::order_of_generator(std::size_t i) const
{
    return i < torsion.size() ? torsion[i] : Integer(0);
}

std::size_t AbelianGroup::torsion_count_divisible_by(const Integer& p) const
{
    std::size_t n = 0;
    for (const Integer& t : torsion)
        if (t % p == 0)
            ++n;
    return n;
}

std::string to_string(const AbelianGroup& g)
{
    if (g.is_trivial())
        return "0";
    std::ostringstream out;
    bool first = true;
    if (g.free_rank > 0) {
        out << "Z";
        if (g.free_rank > 1)
            out << "^" << g.free_rank;
        first = false;
    }
    for (std::size_t i = 0; i < g.torsion.size();) {
        std::size_t j = i;
        while (j < g.torsion.size() && g.torsion[j] == g.torsion[i])
            ++j;
        if (!first)
            out << " ⊕ ";
        out << "Z/" << g.torsion[i];
        if (j - i > 1)
            out << "^" << (j - i);
        first = false;
        i = j;
    }
    return out.str();
}

std::vector<Integer> reduce_coordinates(const AbelianGroup& g, std::vector<Integer> coords)
{
    if (coords.size() != g.generator_count())
        throw InternalError("reduce_coordinates: size mismatch");
    for (std::size_t i = 0; i < g.torsion.size(); ++i)
        coords[i] = mod_positive(coords[i], g.torsion[i]);
    return coords;
}

GroupHom make_group_hom(AbelianGroup source, AbelianGroup target, IntegerMatrix matrix)
{
    if (matrix.rows() != target.generator_count() || matrix.cols() != source.generator_count())
        throw InternalError("make_group_hom: matrix shape does not match the groups");
    IntegerMatrix reduced(matrix.rows(), matrix.cols());
    for (std::size_t r = 0; r < matrix.rows(); ++r)
        for (const auto& [c, v] : matrix.row(r))
            reduced.set(r, c, r < target.torsion.size() ? mod_positive(v, target.torsion[r]) : v);
    return GroupHom{std::move(source), std::move(target), std::move(reduced)};
}

GroupHom identity_hom(const AbelianGroup& g)
{
    return make_group_hom(g, g, IntegerMatrix::identity(g.generator_count()));
}

GroupHom compose(const GroupHom& second, const GroupHom& first)
{
    if (!(first.target == second.source))
        throw InternalError("compose: groups do not match");
    return make_group_hom(first.source, second.target, second.matrix * first.matrix);
}

std::vector<Integer> GroupHom::apply(const std::vector<Integer>& coords) const
{
    return reduce_coordinates(target, matrix.apply(coords));
}

bool GroupHom::is_well_defined() const
{
    for (std::size_t j = 0; j < source.torsion.size(); ++j) {
        const Integer& d = source.torsion[j];
        for (std::size_t i = 0; i < target.generator_count(); ++i) {
            Integer image = d * matrix.at(i, j);
            if (i < target.torsion.size() ? image % target.torsion[i] != 0 : image != 0)
                return false;
        }
    }
    return true;
}

bool GroupHom::is_isomorphism() const
{
    if (!(source == target))
        return false;
    // Finitely generated abelian groups are Hopfian, so a surjection between
    // isomorphic groups is an isomorphism.
    const std::size_t n = target.generator_count();
    if (n == 0)
        return true;
    std::vector<Integer> rel(target.torsion.begin(), target.torsion.end());
    IntegerMatrix relations = IntegerMatrix::diagonal(rel, n, target.torsion.size());
    SmithOptions opts;
    opts.left = opts.right = false;
    auto snf = smith_normal_form(IntegerMatrix::hstack(matrix, relations), opts);
    if (snf.rank() != n)
        return false;
    for (const Integer& d : snf.invariant_factors)
        if (d != 1)
            return false;
    return true;
}

} // namespace pecoh
