#pragma once

#include "pecoh/matrix.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace pecoh {

/// Index of a tile label in SubstitutionRule::alphabet.
using TileId = std::uint32_t;

/// A 1D symbolic substitution on unit intervals, or a 2D block substitution
/// on unit squares with a single integer expansion B.
struct SubstitutionRule {
    int dimension = 1;
    std::vector<std::string> alphabet;
    /// 1D: image word of each label.
    std::vector<std::vector<TileId>> words;
    /// 2D: B*B image of each label, indexed [x + B*y] with y pointing up.
    std::vector<std::vector<TileId>> blocks;
    std::size_t expansion = 1;
    /// As supplied by the rule file; absent when the file does not say.
    std::optional<bool> declared_aperiodic;

    std::size_t size() const { return alphabet.size(); }
    bool aperiodic() const { return declared_aperiodic.value_or(false); }
    std::optional<TileId> find(const std::string& name) const;
    TileId block_at(TileId label, std::size_t x, std::size_t y) const { return blocks[label][x + expansion * y]; }
    /// M[i][j] = occurrences of label i in the image of label j.
    IntegerMatrix abelianization() const;
    /// Number of tiles in the image of `label`.
    std::size_t image_size(TileId label) const;
};

/// Parses the JSON rule-file format. Throws InputError naming the offending
/// key on any schema violation.
SubstitutionRule parse_rule(const std::string& document);
SubstitutionRule load_rule(const std::filesystem::path& path);

struct ValidationReport {
    bool primitive = false;
    /// Least k with M^k entrywise positive, when primitive.
    std::optional<std::size_t> primitivity_exponent;
    IntegerMatrix abelianization;
    /// 1D: image lengths per label; 2D: B*B for every label.
    std::vector<std::size_t> image_sizes;
    std::optional<bool> declared_aperiodic;
    std::vector<std::string> warnings;
    std::vector<std::string> notes;
};

ValidationReport validate_rule(const SubstitutionRule& rule);

} // namespace pecoh
