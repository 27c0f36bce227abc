// bairec: solve and analyse recurrences through Baire-space fixed points.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "baire/cli.hpp"

namespace {

baire::Rational rational_flag(const std::string& text, const char* name) {
    try {
        return baire::parse_rational(text);
    } catch (const std::exception&) {
        throw CLI::ValidationError(std::string("--") + name, "not a rational: " + text);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Recurrence solver and complexity analyser over Baire word spaces"};
    baire::RunConfig cfg;

    std::string c = "1", d = "1", j = "1", k, format = "table";
    std::optional<std::string> preset, schema, inline_schema, shape;
    std::uint64_t horizon = 0, n_min = 0;

    app.add_option("command", cfg.command, "solve | analyze | threshold | certify | distance | check-axioms | "
                                           "obstruction | demo")
        ->required()
        ->check(CLI::IsMember(baire::command_names()));
    app.add_option("--preset", preset, "built-in recurrence")->check(CLI::IsMember(baire::preset_names()));
    app.add_option("--schema", schema, "schema file (key = value lines)");
    app.add_option("--inline", inline_schema, "schema text, entries separated by ';'");
    app.add_option("--c", c, "base cost T(1)");
    app.add_option("--d", d, "preset parameter d");
    app.add_option("--j", j, "preset parameter j");
    app.add_option("--horizon", horizon, "grid levels for divide and conquer, indices otherwise");
    app.add_option("--n-min", n_min, "smallest index checked by improver analyses");
    app.add_option("--precision-bits", cfg.precision_bits, "starting precision for enclosures (>= 53)");
    app.add_option("--format", format, "table | json")->check(CLI::IsMember({"table", "json"}));
    app.add_option("--seed", cfg.seed, "sampling seed");
    app.add_option("--samples", cfg.samples, "sample size for check-axioms");
    app.add_option("--system", cfg.system, "axiom system")->check(CLI::IsMember({"qm", "pm", "pqm"}));
    app.add_option("--distance", cfg.distance, "distance")->check(CLI::IsMember(baire::detail::distance_names()));
    app.add_option("--shape", shape, "bound shape phi(n)");
    app.add_option("--k", k, "constant of the candidate bound");
    app.add_option("--x", cfg.x, "first argument of distance");
    app.add_option("--y", cfg.y, "second argument of distance");

    try {
        app.parse(argc, argv);
        cfg.c = rational_flag(c, "c");
        cfg.d = rational_flag(d, "d");
        cfg.j = rational_flag(j, "j");
        if (!k.empty()) cfg.k = rational_flag(k, "k");
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return baire::kInputError;
    }
    cfg.preset = preset;
    cfg.schema_file = schema;
    cfg.schema_inline = inline_schema;
    cfg.shape = shape;
    if (horizon != 0) cfg.horizon = horizon;
    if (n_min != 0) cfg.n_min = n_min;
    cfg.output_format = format == "json" ? baire::OutputFormat::Json : baire::OutputFormat::Table;
    return baire::run(cfg, std::cout, std::cerr);
}
