#include "pecoh/svg.hpp"

#include <sstream>

namespace pecoh {

namespace {

constexpr const char* kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string escaped(const std::string& text)
{
    std::string out;
    for (char c : text) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

std::string render_svg(const SubstitutionRule& rule, const Patch& patch)
{
    const Patch p = patch.canonical();
    std::int64_t width = 0, height = 0;
    for (const auto& [pos, label] : p.cells) {
        width = std::max(width, pos.x + 1);
        height = std::max(height, pos.y + 1);
    }
    const int unit = rule.dimension == 1 ? 40 : 20;
    const std::int64_t pixel_w = width * unit + 2;
    const std::int64_t pixel_h = rule.dimension == 1 ? 2 * unit : height * unit + 2;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << pixel_w << "\" height=\"" << pixel_h
        << "\" viewBox=\"0 0 " << pixel_w << ' ' << pixel_h << "\">\n";
    for (const auto& [pos, label] : p.cells) {
        const char* color = kPalette[label % kPaletteSize];
        const std::string name = escaped(rule.alphabet[label]);
        if (rule.dimension == 1) {
            const std::int64_t x = 1 + pos.x * unit;
            svg << "  <rect class=\"tile\" data-label=\"" << name << "\" x=\"" << x << "\" y=\"" << unit / 2
                << "\" width=\"" << unit << "\" height=\"" << unit / 2 << "\" fill=\"" << color
                << "\" stroke=\"black\"/>\n";
            svg << "  <text x=\"" << x + unit / 2 << "\" y=\"" << unit / 2 - 4
                << "\" font-family=\"monospace\" font-size=\"14\" text-anchor=\"middle\">" << name << "</text>\n";
        } else {
            const std::int64_t x = 1 + pos.x * unit;
            const std::int64_t y = 1 + (height - 1 - pos.y) * unit;
            svg << "  <rect class=\"tile\" data-label=\"" << name << "\" x=\"" << x << "\" y=\"" << y
                << "\" width=\"" << unit << "\" height=\"" << unit << "\" fill=\"" << color
                << "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace pecoh
