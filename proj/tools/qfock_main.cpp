// qfock_main.cpp
// Command line driver: runs one experiment against a JSON config and emits
// the report artifacts. Exit codes: 0 all invariants pass, 1 validation
// error, 2 numeric/tolerance failure.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qfock/config.hpp"
#include "qfock/errors.hpp"
#include "qfock/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"qfock: truncated Fock space laboratory"};

    std::string experiment;
    std::string config_path;
    std::string out_dir = ".";
    std::string format = "csv";
    double tolerance = 0.0;

    std::string joined;
    for (const auto& n : qfock::experiment_names()) {
        if (!joined.empty()) joined += ", ";
        joined += n;
    }

    app.add_option("experiment", experiment,
                   "one of: " + joined)
        ->required();
    app.add_option("--config", config_path, "path to the JSON run config")
        ->required();
    app.add_option("--out", out_dir, "output directory (default: .)");
    app.add_option("--format", format, "csv or json (default: csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    auto* tol_opt = app.add_option("--tolerance", tolerance,
                                   "override the config tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        qfock::RunConfig cfg = qfock::load_config(config_path);
        if (tol_opt->count() > 0) {
            if (!(tolerance > 0.0)) {
                throw qfock::validation_error(
                    "--tolerance must be positive");
            }
            cfg.tolerance = tolerance;
        }

        const qfock::ReportRecord rec =
            qfock::run_experiment(experiment, cfg);
        qfock::emit(rec, out_dir,
                    format == "json" ? qfock::ReportFormat::json
                                     : qfock::ReportFormat::csv);

        for (const auto& inv : rec.invariants) {
            std::printf("%s %s value=%s tolerance=%s\n",
                        inv.pass ? "PASS" : "FAIL", inv.name.c_str(),
                        qfock::format_double(inv.value).c_str(),
                        qfock::format_double(inv.tolerance).c_str());
        }
        std::printf("%s: %zu rows, %zu invariants, %lld ms, config %s -> %s\n",
                    rec.experiment.c_str(), rec.rows.size(),
                    rec.invariants.size(),
                    static_cast<long long>(rec.duration_ms),
                    rec.config_hash.c_str(), out_dir.c_str());
        return rec.all_pass() ? 0 : 2;
    } catch (const qfock::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const qfock::numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const qfock::resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
