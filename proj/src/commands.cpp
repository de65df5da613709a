#include "pecoh/commands.hpp"

#include "pecoh/complex_io.hpp"
#include "pecoh/errors.hpp"
#include "pecoh/svg.hpp"
#include "pecoh/tower.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

namespace pecoh {

using nlohmann::json;

namespace {

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string matrix_string(const IntegerMatrix& m)
{
    std::string out = "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out += r ? ", [" : "[";
        for (std::size_t c = 0; c < m.cols(); ++c)
            out += (c ? ", " : "") + to_string(m.at(r, c));
        out += "]";
    }
    return out + "]";
}

std::string rule_summary(const SubstitutionRule& rule, const ValidationReport& report)
{
    std::string tiles;
    for (const auto& t : rule.alphabet)
        tiles += (tiles.empty() ? "" : " ") + t;
    std::string out = std::to_string(rule.dimension) + "D, " + std::to_string(rule.size()) + " tiles [" + tiles + "]";
    if (rule.dimension == 2)
        out += ", expansion " + std::to_string(rule.expansion);
    out += report.primitive ? ", primitive" : ", not primitive";
    if (!rule.declared_aperiodic)
        out += ", aperiodic flag absent";
    else
        out += *rule.declared_aperiodic ? ", declared aperiodic" : ", declared periodic";
    return out;
}

std::string cell_counts(const ApproximantComplex& c)
{
    std::string out;
    for (int k = 0; k <= c.dimension; ++k)
        out += (k ? " " : "") + std::to_string(c.count(k));
    return out;
}

json group_json(const AbelianGroup& g)
{
    json torsion = json::array();
    for (const auto& t : g.torsion)
        torsion.push_back(to_string(t));
    return {{"free_rank", g.free_rank}, {"torsion", torsion}, {"text", to_string(g)}};
}

std::string level_line(const LevelData& level, const Coefficients& coeff)
{
    std::string out = "level " + std::to_string(level.level) + ": cells " + cell_counts(*level.complex) + ";";
    for (std::size_t k = 0; k < level.cohomology.degrees.size(); ++k)
        out += (k ? ", H^" : " H^") + std::to_string(k) + " = " + group_string(level.cohomology.group(k), coeff);
    return out;
}

json level_json(const LevelData& level, const Coefficients& coeff)
{
    json cells = json::array();
    for (int k = 0; k <= level.complex->dimension; ++k)
        cells.push_back(level.complex->count(k));
    json groups = json::array();
    for (std::size_t k = 0; k < level.cohomology.degrees.size(); ++k) {
        json g = group_json(level.cohomology.group(k));
        g["text"] = group_string(level.cohomology.group(k), coeff);
        groups.push_back(g);
    }
    return {{"level", level.level}, {"cells", cells}, {"cohomology", groups}};
}

void add_limit_caveat(RunReport& report, const LimitGroup& limit, std::size_t degree)
{
    if (const auto* s = std::get_if<StabilizedLimit>(&limit.value))
        report.caveats.push_back("H^" + std::to_string(degree) + ": " + s->caveat);
    if (const auto* u = std::get_if<UndeterminedLimit>(&limit.value))
        report.caveats.push_back("H^" + std::to_string(degree) + ": limit undetermined (" + u->diagnostic + ")");
}

} // namespace

std::string RunReport::text() const
{
    std::ostringstream out;
    out << "command: " << command << '\n';
    for (const auto& line : lines)
        out << line << '\n';
    for (const auto& c : caveats)
        out << "caveat: " << c << '\n';
    for (const auto& [name, seconds] : timings) {
        std::ostringstream t;
        t.precision(3);
        t << std::fixed << seconds;
        out << "time " << name << ": " << t.str() << " s\n";
    }
    return out.str();
}

std::string RunReport::json_text() const
{
    json doc = data;
    doc["command"] = command;
    doc["caveats"] = caveats;
    json times = json::object();
    for (const auto& [name, seconds] : timings)
        times[name] = seconds;
    doc["timings"] = times;
    return doc.dump(2) + "\n";
}

RunReport cmd_info(const std::string& rule_file)
{
    Stopwatch clock;
    RunReport report;
    report.command = "info " + rule_file;
    const SubstitutionRule rule = load_rule(rule_file);
    const ValidationReport v = validate_rule(rule);
    report.lines.push_back("rule: " + rule_summary(rule, v));
    report.lines.push_back("abelianization: " + matrix_string(v.abelianization));
    if (v.primitive)
        report.lines.push_back("primitive: yes (M^" + std::to_string(*v.primitivity_exponent) + " > 0)");
    else
        report.lines.push_back("primitive: no");
    std::string sizes;
    for (std::size_t i = 0; i < rule.size(); ++i)
        sizes += (i ? " " : "") + rule.alphabet[i] + ":" + std::to_string(v.image_sizes[i]);
    report.lines.push_back("image sizes: " + sizes);
    report.lines.push_back("radius bound for collar 1: " + pe_radius_bound(rule, 1).to_string());
    for (const auto& w : v.warnings)
        report.lines.push_back("warning: " + w);
    for (const auto& n : v.notes)
        report.lines.push_back("note: " + n);
    report.data = {{"dimension", rule.dimension},
                   {"tiles", rule.alphabet},
                   {"primitive", v.primitive},
                   {"primitivity_exponent", v.primitivity_exponent ? json(*v.primitivity_exponent) : json(nullptr)},
                   {"abelianization", matrix_to_json(v.abelianization)},
                   {"image_sizes", v.image_sizes},
                   {"declared_aperiodic", rule.declared_aperiodic ? json(*rule.declared_aperiodic) : json(nullptr)},
                   {"warnings", v.warnings},
                   {"notes", v.notes}};
    report.timings.push_back({"total", clock.seconds()});
    return report;
}

RunReport cmd_cohomology(const std::string& rule_file, const CohomologyOptions& options)
{
    Stopwatch clock;
    RunReport report;
    report.command = "cohomology " + rule_file + " --route " + options.route + " --collar " +
                     std::to_string(options.collar) + " --coeff " + to_string(options.coefficients);
    if (options.route == "gahler")
        report.command += " --max-collar " + std::to_string(options.max_collar) + " --window " +
                          std::to_string(options.window);
    const SubstitutionRule rule = load_rule(rule_file);
    const ValidationReport v = validate_rule(rule);
    report.lines.push_back("rule: " + rule_summary(rule, v));
    const Coefficients& coeff = options.coefficients;
    json limits = json::array();

    if (options.route == "gahler") {
        const GahlerTower tower = gahler_tower(rule, options.collar, options.max_collar, coeff, options.window);
        report.timings.push_back({"tower", clock.seconds()});
        json levels = json::array();
        for (const auto& level : tower.levels) {
            report.lines.push_back(level_line(level, coeff));
            levels.push_back(level_json(level, coeff));
            for (const auto& c : level.complex->caveats)
                report.caveats.push_back("level " + std::to_string(level.level) + ": " + c);
        }
        for (std::size_t i = 0; i < tower.forgetful.size(); ++i) {
            std::string line = "map " + std::to_string(tower.levels[i].level) + "->" +
                               std::to_string(tower.levels[i + 1].level) + ":";
            for (std::size_t k = 0; k < tower.induced.size(); ++k)
                line += (k ? ", H^" : " H^") + std::to_string(k) +
                        (is_isomorphism_over(tower.induced[k][i], coeff) ? " iso" : " not iso");
            report.lines.push_back(line);
        }
        for (std::size_t k = 0; k < tower.limits.size(); ++k) {
            report.lines.push_back("limit H^" + std::to_string(k) + " = " + limit_string(tower.limits[k], coeff));
            add_limit_caveat(report, tower.limits[k], k);
            limits.push_back({{"degree", k}, {"kind", tower.limits[k].kind_name()},
                              {"text", limit_string(tower.limits[k], coeff)}});
        }
        report.data["levels"] = levels;
    } else if (options.route == "substitution") {
        const SubstitutionRoute route = substitution_route(rule, options.collar, coeff);
        report.timings.push_back({"route", clock.seconds()});
        report.lines.push_back(level_line(route.level, coeff));
        report.data["levels"] = json::array({level_json(route.level, coeff)});
        for (std::size_t k = 0; k < route.limits.size(); ++k) {
            report.lines.push_back("substitution on H^" + std::to_string(k) + ": " +
                                   matrix_string(route.induced[k].matrix));
            report.lines.push_back("limit H^" + std::to_string(k) + " = " + limit_string(route.limits[k], coeff));
            limits.push_back({{"degree", k}, {"kind", route.limits[k].kind_name()},
                              {"text", limit_string(route.limits[k], coeff)},
                              {"induced", matrix_to_json(route.induced[k].matrix)}});
        }
    } else {
        throw InputError("--route must be gahler or substitution");
    }
    report.data["route"] = options.route;
    report.data["coefficients"] = to_string(coeff);
    report.data["limits"] = limits;
    report.timings.push_back({"total", clock.seconds()});
    return report;
}

RunReport cmd_repvar(const std::string& rule_file, const RepvarOptions& options)
{
    Stopwatch clock;
    RunReport report;
    report.command = "repvar " + rule_file + " --collar " + std::to_string(options.collar) + " --group " +
                     options.group;
    if (options.limit)
        report.command += " --limit --max-collar " + std::to_string(options.max_collar) + " --window " +
                          std::to_string(options.window);
    const FiniteGroup group = FiniteGroup::parse_spec(options.group);
    const SubstitutionRule rule = load_rule(rule_file);
    const ValidationReport v = validate_rule(rule);
    report.lines.push_back("rule: " + rule_summary(rule, v));
    report.lines.push_back("group: " + group.description() + ", order " + std::to_string(group.order()) +
                           (group.is_abelian() ? ", abelian" : ", non-abelian"));
    const std::size_t last = options.limit ? options.max_collar : options.collar;
    if (last < options.collar)
        throw PreconditionError("--max-collar must be at least --collar");

    const auto shared = std::make_shared<const SubstitutionRule>(rule);
    std::vector<ComplexPtr> complexes;
    std::vector<Presentation> presentations;
    std::vector<RepVariety> varieties;
    json levels = json::array();
    for (std::size_t n = options.collar; n <= last; ++n) {
        auto complex = std::make_shared<const ApproximantComplex>(build_approximant(shared, n));
        Presentation p = fundamental_presentation(*complex);
        RepVariety variety = conj_quotient(enumerate_homs(p, group, options.budget), group);
        report.lines.push_back("level " + std::to_string(n) + ": generators " + std::to_string(p.generator_count()) +
                               ", relators " + std::to_string(p.relators.size()) + ", homs " +
                               std::to_string(variety.hom_count) + ", orbits " + std::to_string(variety.size()));
        json level = {{"level", n}, {"generators", p.generator_count()}, {"relators", p.relators.size()},
                      {"homs", variety.hom_count}, {"orbits", variety.size()}};
        if (group.is_abelian()) {
            const CrosscheckResult check = abelian_crosscheck(*complex, group, options.budget);
            report.lines.push_back("crosscheck level " + std::to_string(n) + ": |variety| = " +
                                   std::to_string(check.variety_size) + ", |H^1(X; G)| = " +
                                   to_string(check.cohomology_size) + (check.passed ? ", pass" : ", FAIL"));
            level["crosscheck"] = {{"passed", check.passed}, {"variety", check.variety_size},
                                   {"cohomology", to_string(check.cohomology_size)}};
        }
        levels.push_back(level);
        complexes.push_back(complex);
        presentations.push_back(std::move(p));
        varieties.push_back(std::move(variety));
    }
    report.data["levels"] = levels;
    report.data["group"] = group.description();

    if (options.limit) {
        std::vector<VarietyMap> maps;
        for (std::size_t i = 0; i + 1 < complexes.size(); ++i) {
            const CellularMap f = forgetful_map(complexes[i + 1], complexes[i]);
            maps.push_back(induced_repvar_map(f, group, presentations[i + 1], presentations[i], varieties[i + 1],
                                              varieties[i]));
            report.lines.push_back("map " + std::to_string(options.collar + i) + "->" +
                                   std::to_string(options.collar + i + 1) + ": " +
                                   (maps.back().is_bijection() ? "bijection" : "not a bijection"));
        }
        const RepVarietyLimit lim = repvar_limit(varieties, maps, options.window, options.collar);
        if (lim.stabilized) {
            report.lines.push_back("limit: stabilized, " + std::to_string(lim.variety.size()) + " orbits");
            report.caveats.push_back(lim.caveat);
        } else {
            std::string traj;
            for (std::size_t c : lim.trajectory)
                traj += (traj.empty() ? "" : " ") + std::to_string(c);
            report.lines.push_back("limit: undetermined, orbit counts " + traj);
        }
        report.data["limit"] = {{"stabilized", lim.stabilized},
                                {"orbits", lim.stabilized ? json(lim.variety.size()) : json(nullptr)},
                                {"trajectory", lim.trajectory}};
    }
    report.timings.push_back({"total", clock.seconds()});
    return report;
}

RunReport cmd_render(const std::string& rule_file, const RenderOptions& options)
{
    Stopwatch clock;
    RunReport report;
    report.command = "render " + rule_file + " --iterations " + std::to_string(options.iterations);
    const SubstitutionRule rule = load_rule(rule_file);
    const Patch patch = expand_patch(rule, Patch::single(rule.dimension, 0), options.iterations);
    const std::string svg = render_svg(rule, patch);
    if (options.out.empty()) {
        report.data["svg"] = svg;
    } else {
        std::ofstream out(options.out);
        if (!out || !(out << svg))
            throw InputError("cannot write " + options.out);
        report.lines.push_back("wrote " + options.out);
    }
    report.lines.push_back("tiles: " + std::to_string(patch.size()));
    if (rule.dimension == 1)
        report.lines.push_back("word: " + patch.render(rule));
    report.data["tiles"] = patch.size();
    report.timings.push_back({"total", clock.seconds()});
    return report;
}

RunReport cmd_cw(const std::string& complex_file, const Coefficients& coefficients)
{
    Stopwatch clock;
    RunReport report;
    report.command = "cw " + complex_file + " --coeff " + to_string(coefficients);
    const ApproximantComplex complex = load_complex(complex_file);
    const CohomologyResult h = cohomology(complex.cochain_complex(), coefficients);
    report.lines.push_back("cells: " + cell_counts(complex));
    json groups = json::array();
    for (std::size_t k = 0; k < h.degrees.size(); ++k) {
        report.lines.push_back("H^" + std::to_string(k) + " = " + group_string(h.group(k), coefficients));
        json g = group_json(h.group(k));
        g["text"] = group_string(h.group(k), coefficients);
        groups.push_back(g);
    }
    report.data["cohomology"] = groups;
    report.data["coefficients"] = to_string(coefficients);
    report.timings.push_back({"total", clock.seconds()});
    return report;
}

} // namespace pecoh
