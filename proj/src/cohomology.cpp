#include "pecoh/cohomology.hpp"

#include "pecoh/errors.hpp"
#include "pecoh/smith.hpp"

#include <sstream>

namespace pecoh {

Coefficients Coefficients::modular(const Integer& k)
{
    if (k < 2)
        throw InputError("coefficient modulus must be at least 2");
    return {Kind::Modular, k};
}

Coefficients Coefficients::parse(const std::string& text)
{
    if (text == "int" || text == "Z")
        return integers();
    if (text == "rat" || text == "Q")
        return rationals();
    if (text.rfind("mod:", 0) == 0) {
        const std::string digits = text.substr(4);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw InputError("bad coefficient specification '" + text + "'");
        return modular(Integer(digits));
    }
    throw InputError("unknown coefficients '" + text + "' (expected int, rat or mod:k)");
}

std::string to_string(const Coefficients& c)
{
    switch (c.kind) {
    case Coefficients::Kind::Integers:
        return "Z";
    case Coefficients::Kind::Rationals:
        return "Q";
    case Coefficients::Kind::Modular:
        return "Z/" + to_string(c.modulus);
    }
    return "?";
}

CochainComplex CochainComplex::from_boundaries(std::vector<std::size_t> cell_counts,
                                               const std::vector<IntegerMatrix>& boundary)
{
    CochainComplex c;
    c.cell_counts = std::move(cell_counts);
    for (const auto& b : boundary)
        c.coboundary.push_back(b.transpose());
    c.verify();
    return c;
}

IntegerMatrix CochainComplex::coboundary_from(std::size_t k) const
{
    if (k < coboundary.size())
        return coboundary[k];
    return IntegerMatrix(0, cell_counts.at(k));
}

void CochainComplex::verify() const
{
    if (cell_counts.empty())
        throw PreconditionError("cochain complex has no degrees");
    if (coboundary.size() + 1 != cell_counts.size())
        throw PreconditionError("cochain complex: expected " + std::to_string(cell_counts.size() - 1) +
                                " coboundary matrices");
    for (std::size_t k = 0; k < coboundary.size(); ++k) {
        if (coboundary[k].rows() != cell_counts[k + 1] || coboundary[k].cols() != cell_counts[k])
            throw PreconditionError("coboundary out of degree " + std::to_string(k) + " has the wrong shape");
    }
    for (std::size_t k = 0; k + 1 < coboundary.size(); ++k)
        if (!(coboundary[k + 1] * coboundary[k]).is_zero())
            throw PreconditionError("not a complex: delta_" + std::to_string(k + 1) + " * delta_" +
                                    std::to_string(k) + " != 0 (degree " + std::to_string(k) + ")");
}

class CohomologyBuilder {
public:
    static DegreeCohomology build(const CochainComplex& complex, std::size_t k, const Coefficients& coeff)
    {
        DegreeCohomology h;
        h.degree = k;
        h.coefficients = coeff;
        const std::size_t m = complex.cell_counts[k];
        const IntegerMatrix delta = complex.coboundary_from(k);
        const IntegerMatrix incoming = k == 0 ? IntegerMatrix(m, 0) : complex.coboundary[k - 1];
        h.coboundary_ = delta;

        IntegerMatrix basis;
        IntegerMatrix boundary_coords; // coordinates of the coboundary lattice generators
        if (coeff.kind == Coefficients::Kind::Modular) {
            // Cocycles mod k: {x : delta x = 0 mod k} is the x-part of ker [delta | k I].
            const std::size_t q = delta.rows();
            IntegerMatrix scaled = coeff.modulus * IntegerMatrix::identity(q);
            KernelLattice lat = kernel_lattice(IntegerMatrix::hstack(delta, scaled));
            basis = lat.basis.row_range(0, m);
            h.lattice_coords_ = lat.coordinates;
            IntegerMatrix head = lat.coordinates.column_range(0, m);
            IntegerMatrix tail = lat.coordinates.column_range(m, m + q);
            // Coboundaries: incoming columns (delta * incoming == 0) and k * e_i.
            IntegerMatrix multiples = coeff.modulus * head - tail * delta;
            boundary_coords = IntegerMatrix::hstack(head * incoming, multiples);
        } else {
            KernelLattice lat = kernel_lattice(delta);
            basis = lat.basis;
            h.lattice_coords_ = lat.coordinates;
            boundary_coords = lat.coordinates * incoming;
        }

        SmithOptions opts;
        opts.left = true;
        opts.left_inverse = true;
        opts.right = false;
        SmithDecomposition snf = smith_normal_form(boundary_coords, opts);
        h.snf_left_ = snf.U;
        IntegerMatrix reps = basis * *snf.U_inverse;

        std::vector<Integer> factors;
        for (std::size_t i = 0; i < basis.cols(); ++i) {
            Integer d = i < snf.rank() ? snf.invariant_factors[i] : Integer(0);
            if (d != 1) {
                h.kept_.push_back(i);
                factors.push_back(d);
            }
        }
        std::size_t free = 0;
        std::vector<Integer> torsion;
        for (const Integer& d : factors) {
            if (d == 0)
                ++free;
            else
                torsion.push_back(d);
        }
        h.group.free_rank = free;
        h.group.torsion = torsion; // already a divisibility chain
        if (coeff.kind == Coefficients::Kind::Rationals) {
            h.group.torsion.clear();
            std::vector<std::size_t> free_rows(h.kept_.end() - static_cast<std::ptrdiff_t>(free), h.kept_.end());
            h.kept_ = free_rows;
        }
        h.generators = reps.select_columns(h.kept_);
        return h;
    }
};

std::vector<Integer> DegreeCohomology::coordinates(const std::vector<Integer>& cocycle) const
{
    if (!is_cocycle(cocycle))
        throw PreconditionError("coordinates requested for a cochain that is not a cocycle");
    std::vector<Integer> lattice;
    if (coefficients.kind == Coefficients::Kind::Modular) {
        std::vector<Integer> extended = cocycle;
        std::vector<Integer> image = coboundary_.apply(cocycle);
        for (const Integer& v : image)
            extended.push_back(-(v / coefficients.modulus));
        lattice = lattice_coords_.apply(extended);
    } else {
        lattice = lattice_coords_.apply(cocycle);
    }
    std::vector<Integer> all = snf_left_.apply(lattice);
    std::vector<Integer> out;
    out.reserve(kept_.size());
    for (std::size_t i : kept_)
        out.push_back(all[i]);
    return reduce_coordinates(group, std::move(out));
}

bool DegreeCohomology::is_cocycle(const std::vector<Integer>& cochain) const
{
    if (cochain.size() != coboundary_.cols())
        return false;
    for (const Integer& v : coboundary_.apply(cochain)) {
        if (coefficients.kind == Coefficients::Kind::Modular ? v % coefficients.modulus != 0 : v != 0)
            return false;
    }
    return true;
}

CohomologyResult cohomology(const CochainComplex& complex, const Coefficients& coefficients)
{
    complex.verify();
    CohomologyResult result;
    result.coefficients = coefficients;
    for (std::size_t k = 0; k < complex.cell_counts.size(); ++k)
        result.degrees.push_back(CohomologyBuilder::build(complex, k, coefficients));
    return result;
}

std::string group_string(const DegreeCohomology& h)
{
    if (h.coefficients.kind != Coefficients::Kind::Rationals)
        return to_string(h.group);
    if (h.group.free_rank == 0)
        return "0";
    return h.group.free_rank == 1 ? "Q" : "Q^" + std::to_string(h.group.free_rank);
}

GroupHom induced_map(const IntegerMatrix& chain_map, const DegreeCohomology& target_cohomology,
                     const DegreeCohomology& source_cohomology)
{
    if (!(target_cohomology.coefficients == source_cohomology.coefficients))
        throw PreconditionError("induced_map: coefficient mismatch");
    if (chain_map.rows() != target_cohomology.generators.rows() ||
        chain_map.cols() != source_cohomology.generators.rows())
        throw PreconditionError("induced_map: chain map does not match the complexes");
    const IntegerMatrix pulled = chain_map.transpose() * target_cohomology.generators;
    const std::size_t n = target_cohomology.group.generator_count();
    IntegerMatrix matrix(source_cohomology.group.generator_count(), n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Integer> coords = source_cohomology.coordinates(pulled.column(j));
        for (std::size_t i = 0; i < coords.size(); ++i)
            matrix.set(i, j, coords[i]);
    }
    return make_group_hom(target_cohomology.group, source_cohomology.group, std::move(matrix));
}

} // namespace pecoh
