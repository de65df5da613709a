#include "pecoh/commands.hpp"
#include "pecoh/errors.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>

namespace {

enum ExitCode { kSuccess = 0, kInputError = 2, kPreconditionError = 3, kBudgetError = 4, kInternalError = 70 };

int run(const std::function<pecoh::RunReport()>& command, bool as_json)
{
    try {
        const pecoh::RunReport report = command();
        std::cout << (as_json ? report.json_text() : report.text());
        return kSuccess;
    } catch (const pecoh::InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const pecoh::PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << '\n';
        return kPreconditionError;
    } catch (const pecoh::BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kBudgetError;
    } catch (const pecoh::InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
}

pecoh::Coefficients parse_coefficients(const std::string& text)
{
    return pecoh::Coefficients::parse(text);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cohomology and representation varieties of substitution tiling spaces"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "Machine-readable output");

    std::string rule_file;
    std::string coeff_text = "int";

    auto* info = app.add_subcommand("info", "Validate a rule file and summarize it");
    info->add_option("rule", rule_file, "Rule file (JSON)")->required();

    pecoh::CohomologyOptions coh;
    std::size_t coh_collar = 1;
    auto* cohomology = app.add_subcommand("cohomology", "Cohomology of the hull via approximants");
    cohomology->add_option("rule", rule_file, "Rule file (JSON)")->required();
    cohomology->add_option("--collar", coh_collar, "First (gahler) or only (substitution) collar level");
    cohomology->add_option("--coeff", coeff_text, "int, rat or mod:k");
    cohomology->add_option("--route", coh.route, "gahler or substitution")
        ->check(CLI::IsMember({"gahler", "substitution"}));
    cohomology->add_option("--max-collar", coh.max_collar, "Last collar level of the gahler tower");
    cohomology->add_option("--window", coh.window, "Isomorphism window for stabilization");
    cohomology->add_flag("--json", as_json, "Machine-readable output");

    pecoh::RepvarOptions rep;
    auto* repvar = app.add_subcommand("repvar", "Representation varieties Hom(pi_1, G)/G along the tower");
    repvar->add_option("rule", rule_file, "Rule file (JSON)")->required();
    repvar->add_option("--collar", rep.collar, "First collar level");
    repvar->add_option("--group", rep.group, "cyclic:k, dihedral:n, sym:n or a Cayley-table file");
    repvar->add_flag("--limit", rep.limit, "Walk the tower up to --max-collar and report the limit");
    repvar->add_option("--max-collar", rep.max_collar, "Last collar level with --limit");
    repvar->add_option("--window", rep.window, "Bijection window for stabilization");
    repvar->add_option("--budget", rep.budget, "Maximum |G|^generators to enumerate");
    repvar->add_flag("--json", as_json, "Machine-readable output");

    pecoh::RenderOptions render_options;
    auto* render = app.add_subcommand("render", "SVG of an expanded patch");
    render->add_option("rule", rule_file, "Rule file (JSON)")->required();
    render->add_option("--iterations", render_options.iterations, "Substitution iterations");
    render->add_option("--out", render_options.out, "Output SVG path")->required();
    render->add_flag("--json", as_json, "Machine-readable output");

    std::string complex_file;
    auto* cw = app.add_subcommand("cw", "Cohomology of a hand-written complex file");
    cw->add_option("complex", complex_file, "Complex file (JSON dump format)")->required();
    cw->add_option("--coeff", coeff_text, "int, rat or mod:k");
    cw->add_flag("--json", as_json, "Machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kSuccess : kInputError;
    }

    if (*info)
        return run([&] { return pecoh::cmd_info(rule_file); }, as_json);
    if (*cohomology)
        return run(
            [&] {
                coh.collar = coh_collar;
                coh.coefficients = parse_coefficients(coeff_text);
                return pecoh::cmd_cohomology(rule_file, coh);
            },
            as_json);
    if (*repvar)
        return run([&] { return pecoh::cmd_repvar(rule_file, rep); }, as_json);
    if (*render)
        return run([&] { return pecoh::cmd_render(rule_file, render_options); }, as_json);
    return run([&] { return pecoh::cmd_cw(complex_file, parse_coefficients(coeff_text)); }, as_json);
}
