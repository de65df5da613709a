#include "pecoh/complex_io.hpp"

#include "pecoh/errors.hpp"

#include <fstream>

namespace pecoh {

using nlohmann::json;

json matrix_to_json(const IntegerMatrix& m)
{
    json entries = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (const auto& [c, v] : m.row(r))
            entries.push_back({r, c, to_string(v)});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

IntegerMatrix matrix_from_json(const json& doc)
{
    try {
        IntegerMatrix m(doc.at("rows").get<std::size_t>(), doc.at("cols").get<std::size_t>());
        for (const auto& e : doc.at("entries")) {
            const auto r = e.at(0).get<std::size_t>(), c = e.at(1).get<std::size_t>();
            if (r >= m.rows() || c >= m.cols())
                throw InputError("matrix: entry out of range");
            const Integer v = e.at(2).is_string() ? Integer(e.at(2).get<std::string>()) : Integer(e.at(2).get<long long>());
            m.add_to(r, c, v);
        }
        return m;
    } catch (const json::exception& e) {
        throw InputError(std::string("matrix: ") + e.what());
    }
}

json complex_to_json(const ApproximantComplex& complex)
{
    json cells = json::array();
    for (const auto& dim_cells : complex.cells) {
        json list = json::array();
        for (const Cell& c : dim_cells) {
            json boundary = json::array();
            for (const auto& inc : c.boundary)
                boundary.push_back({inc.cell, inc.coefficient});
            list.push_back({{"id", c.id}, {"label", c.label}, {"boundary", boundary}});
        }
        cells.push_back(list);
    }
    json out = {{"format", "pecoh-complex"}, {"version", 1}, {"dimension", complex.dimension}, {"cells", cells}};
    out["level"] = complex.level ? json(*complex.level) : json(nullptr);
    return out;
}

ApproximantComplex complex_from_json(const json& doc)
{
    try {
        if (!doc.is_object())
            throw InputError("complex: top level must be an object");
        if (doc.contains("format") && doc["format"] != "pecoh-complex")
            throw InputError("complex.format: expected \"pecoh-complex\"");
        const int dimension = doc.at("dimension").get<int>();
        const json& lists = doc.at("cells");
        if (!lists.is_array())
            throw InputError("complex.cells: expected an array per dimension");
        std::vector<std::vector<Cell>> cells;
        for (std::size_t k = 0; k < lists.size(); ++k) {
            std::vector<Cell> level;
            for (std::size_t i = 0; i < lists[k].size(); ++i) {
                const json& entry = lists[k][i];
                Cell c;
                if (entry.contains("id") && entry["id"].get<std::size_t>() != i)
                    throw InputError("complex.cells[" + std::to_string(k) + "]: ids must be 0, 1, 2, ... in order");
                if (entry.contains("label"))
                    c.label = entry["label"].get<std::string>();
                if (entry.contains("boundary"))
                    for (const auto& b : entry["boundary"])
                        c.boundary.push_back({b.at(0).get<std::size_t>(), b.at(1).get<int>()});
                level.push_back(std::move(c));
            }
            cells.push_back(std::move(level));
        }
        return ApproximantComplex::from_cells(dimension, std::move(cells));
    } catch (const json::exception& e) {
        throw InputError(std::string("complex: ") + e.what());
    }
}

ApproximantComplex load_complex(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open complex file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("complex file is not valid JSON: " + std::string(e.what()));
    }
    return complex_from_json(doc);
}

json map_to_json(const CellularMap& map)
{
    json chain = json::array();
    for (const auto& m : map.chain)
        chain.push_back(matrix_to_json(m));
    return {{"source_level", map.source->level ? json(*map.source->level) : json(nullptr)},
            {"target_level", map.target->level ? json(*map.target->level) : json(nullptr)},
            {"chain", chain}};
}

} // namespace pecoh
