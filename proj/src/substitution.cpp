#include "pecoh/substitution.hpp"

#include "pecoh/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace pecoh {

namespace {

using nlohmann::json;

std::vector<std::string> tokenize(const std::string& text, const std::vector<std::string>& alphabet)
{
    std::istringstream in(text);
    std::vector<std::string> tokens;
    for (std::string t; in >> t;)
        tokens.push_back(t);
    bool single_chars = true;
    for (const auto& a : alphabet)
        single_chars = single_chars && a.size() == 1;
    if (tokens.size() == 1 && single_chars) {
        std::vector<std::string> chars;
        for (char c : tokens.front())
            chars.emplace_back(1, c);
        return chars;
    }
    return tokens;
}

std::vector<TileId> parse_word(const SubstitutionRule& rule, const json& value, const std::string& key)
{
    std::vector<std::string> tokens;
    if (value.is_string()) {
        tokens = tokenize(value.get<std::string>(), rule.alphabet);
    } else if (value.is_array()) {
        for (const auto& t : value) {
            if (!t.is_string())
                throw InputError(key + ": image entries must be strings");
            tokens.push_back(t.get<std::string>());
        }
    } else {
        throw InputError(key + ": image must be a string or an array of labels");
    }
    std::vector<TileId> word;
    for (const auto& t : tokens) {
        auto id = rule.find(t);
        if (!id)
            throw InputError(key + ": unknown label '" + t + "'");
        word.push_back(*id);
    }
    return word;
}

} // namespace

std::optional<TileId> SubstitutionRule::find(const std::string& name) const
{
    for (std::size_t i = 0; i < alphabet.size(); ++i)
        if (alphabet[i] == name)
            return static_cast<TileId>(i);
    return std::nullopt;
}

std::size_t SubstitutionRule::image_size(TileId label) const
{
    return dimension == 1 ? words[label].size() : expansion * expansion;
}

IntegerMatrix SubstitutionRule::abelianization() const
{
    IntegerMatrix m(size(), size());
    for (TileId j = 0; j < size(); ++j) {
        const auto& image = dimension == 1 ? words[j] : blocks[j];
        for (TileId i : image)
            m.add_to(i, j, 1);
    }
    return m;
}

SubstitutionRule parse_rule(const std::string& document)
{
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("rule file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw InputError("rule file: top level must be an object");
    for (const auto& [key, _] : doc.items())
        if (key != "dimension" && key != "tiles" && key != "expansion" && key != "rule" && key != "aperiodic" &&
            key != "name" && key != "description")
            throw InputError("rule file: unexpected key '" + key + "'");

    SubstitutionRule rule;
    if (!doc.contains("dimension") || !doc["dimension"].is_number_integer())
        throw InputError("dimension: required integer (1 or 2)");
    rule.dimension = doc["dimension"].get<int>();
    if (rule.dimension != 1 && rule.dimension != 2)
        throw InputError("dimension: must be 1 or 2");

    if (!doc.contains("tiles") || !doc["tiles"].is_array() || doc["tiles"].empty())
        throw InputError("tiles: required nonempty array of labels");
    std::set<std::string> seen;
    for (const auto& t : doc["tiles"]) {
        if (!t.is_string() || t.get<std::string>().empty())
            throw InputError("tiles: labels must be nonempty strings");
        const auto name = t.get<std::string>();
        if (name.find_first_of(" \t\n|@,:") != std::string::npos)
            throw InputError("tiles: label '" + name + "' contains a reserved character");
        if (!seen.insert(name).second)
            throw InputError("tiles: duplicate label '" + name + "'");
        rule.alphabet.push_back(name);
    }

    if (doc.contains("aperiodic")) {
        if (!doc["aperiodic"].is_boolean())
            throw InputError("aperiodic: must be a boolean");
        rule.declared_aperiodic = doc["aperiodic"].get<bool>();
    }

    if (rule.dimension == 2) {
        if (!doc.contains("expansion") || !doc["expansion"].is_number_integer() || doc["expansion"].get<long long>() < 2)
            throw InputError("expansion: required integer >= 2 for 2D rules");
        rule.expansion = doc["expansion"].get<std::size_t>();
    } else if (doc.contains("expansion")) {
        throw InputError("expansion: only meaningful for 2D rules");
    }

    if (!doc.contains("rule") || !doc["rule"].is_object())
        throw InputError("rule: required object mapping each label to its image");
    const json& images = doc["rule"];
    for (const auto& [key, _] : images.items())
        if (!rule.find(key))
            throw InputError("rule." + key + ": unknown label '" + key + "'");

    for (const auto& name : rule.alphabet) {
        const std::string key = "rule." + name;
        if (!images.contains(name))
            throw InputError(key + ": missing image");
        const json& image = images[name];
        if (rule.dimension == 1) {
            auto word = parse_word(rule, image, key);
            if (word.empty())
                throw InputError(key + ": image must be nonempty");
            rule.words.push_back(std::move(word));
            continue;
        }
        if (!image.is_array())
            throw InputError(key + ": 2D image must be an array of rows");
        const std::size_t b = rule.expansion;
        if (image.size() != b)
            throw InputError(key + ": ragged block (expected " + std::to_string(b) + " rows, got " +
                             std::to_string(image.size()) + ")");
        std::vector<TileId> block(b * b);
        for (std::size_t r = 0; r < b; ++r) {
            auto row = parse_word(rule, image[r], key + "[" + std::to_string(r) + "]");
            if (row.size() != b)
                throw InputError(key + ": ragged block (row " + std::to_string(r) + " has " +
                                 std::to_string(row.size()) + " labels, expected " + std::to_string(b) + ")");
            // Rows are listed top to bottom: row r sits at y = B-1-r.
            for (std::size_t c = 0; c < b; ++c)
                block[c + b * (b - 1 - r)] = row[c];
        }
        rule.blocks.push_back(std::move(block));
    }
    return rule;
}

SubstitutionRule load_rule(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open rule file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_rule(text.str());
}

ValidationReport validate_rule(const SubstitutionRule& rule)
{
    ValidationReport report;
    report.abelianization = rule.abelianization();
    report.declared_aperiodic = rule.declared_aperiodic;
    for (TileId t = 0; t < rule.size(); ++t)
        report.image_sizes.push_back(rule.image_size(t));

    const std::size_t n = rule.size();
    std::vector<std::vector<bool>> base(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [j, v] : report.abelianization.row(i))
            base[i][j] = v > 0;
    auto power = base;
    for (std::size_t k = 1; k <= n * n; ++k) {
        bool positive = true;
        for (std::size_t i = 0; i < n && positive; ++i)
            for (std::size_t j = 0; j < n && positive; ++j)
                positive = power[i][j];
        if (positive) {
            report.primitive = true;
            report.primitivity_exponent = k;
            break;
        }
        std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l)
                if (power[i][l])
                    for (std::size_t j = 0; j < n; ++j)
                        if (base[l][j])
                            next[i][j] = true;
        power = std::move(next);
    }

    if (!report.primitive)
        report.warnings.push_back("not primitive: no power of the abelianization matrix is positive; "
                                  "approximants are unsupported");
    if (n == 1)
        report.warnings.push_back("periodic hull: approximant tower constant");
    if (!rule.declared_aperiodic)
        report.warnings.push_back("aperiodic flag not declared; treated as false (substitution route unavailable)");
    else if (*rule.declared_aperiodic && n == 1)
        report.warnings.push_back("declared aperiodic, but a single-tile rule generates a periodic tiling");
    report.notes.push_back("collared tiles are enumerated until two consecutive substitution rounds add no new "
                           "pattern; this is exact for linearly recurrent substitutions");
    return report;
}

} // namespace pecoh
