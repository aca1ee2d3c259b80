#include <iostream>

#include "CLI11.hpp"

#include "mcdeform/cli.hpp"

int main(int argc, char** argv) {
    mcdeform::CliOptions o;
    CLI::App app{"Exact DGLA deformation toolkit"};
    app.add_option("command", o.command, "one of: validate cohomology cone pair-cone tangent mc-check mc-residual "
                                         "gauge-apply gauge-equiv bch obstruction lift h-trunc h-embed examples")
        ->required();
    app.add_option("documents", o.positional, "document paths, assigned by kind");
    app.add_flag("--json", o.json, "canonical JSON report");
    app.add_option("--budget", o.budget, "node budget for gauge-equiv")->check(CLI::PositiveNumber);
    app.add_option("--trunc", o.trunc, "largest truncation level for h-trunc")->check(CLI::PositiveNumber);
    app.add_option("--tower", o.tower, "use the extension K[t]/t^N -> K[t]/t^(N-1)");
    app.add_option("--shift", o.shift, "deg ε = -shift for tangent")->check(CLI::Range(-1, 1));
    app.add_flag("--list", o.list, "examples: list built-in objects");
    app.add_option("--show", o.show, "examples: print a built-in object as a document");
    for (const char* slot : {"dgla", "morphism", "pair", "algebra", "extension", "element", "element2", "param",
                             "param2", "triple", "h-element"}) {
        app.add_option_function<std::string>(
            std::string("--") + slot, [&o, slot](const std::string& v) { o.slots[slot] = v; },
            "document path or builtin:NAME");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }
    const mcdeform::SessionReport r = mcdeform::run_command(o);
    std::cout << r.render(o.json);
    if (r.exit_code != 0 && !o.json && r.body.contains("error"))
        std::cerr << r.body["error"]["message"].get<std::string>() << "\n";
    return r.exit_code;
}
