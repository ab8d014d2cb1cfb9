#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "whitcusp/errors.hpp"
#include "whitcusp/report.hpp"
#include "whitcusp/suites.hpp"

namespace {

void write_out(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw whitcusp::ConfigError("cannot open output file: " + path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    using whitcusp::RunConfig;

    const RunConfig defaults;
    RunConfig cli = defaults;
    std::string config_path;
    bool dump_char = false;
    bool dump_supp = false;

    CLI::App app{"exact verification suites for depth-zero supercuspidal representations"};
    app.add_option("--config", config_path, "key=value configuration file, overridden by flags");
    app.add_option("--q", cli.q, "residue characteristic (prime)");
    app.add_option("--r", cli.r, "group rank (2 or 3; representation suites need 2)");
    app.add_option("--n", cli.n, "congruence depth for the character-sum suite");
    app.add_option("--precision", cli.precision, "working digit precision for sampled series");
    app.add_option("--theta", cli.theta,
                   "regular character exponent on the quadratic extension (-1 = first regular)");
    app.add_option("--suite", cli.suite,
                   "charsum | whittaker | rankin-selberg | theorem-main | all");
    app.add_option("--budget", cli.budget, "enumeration-point budget per case");
    app.add_option("--seed", cli.seed, "seed for the sampled probe points");
    app.add_option("--out", cli.out, "write the report here instead of stdout");
    app.add_option("--format", cli.format, "report format: json | tsv");
    app.add_flag("--timings", cli.timings, "include wall times in the report");
    app.add_flag("--dump-char-table", dump_char, "print the cuspidal character table and exit");
    app.add_flag("--dump-support", dump_supp, "print the Whittaker support table and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg = defaults;
        if (!config_path.empty()) cfg = whitcusp::load_config_file(config_path, defaults);
        if (app.count("--q")) cfg.q = cli.q;
        if (app.count("--r")) cfg.r = cli.r;
        if (app.count("--n")) cfg.n = cli.n;
        if (app.count("--precision")) cfg.precision = cli.precision;
        if (app.count("--theta")) cfg.theta = cli.theta;
        if (app.count("--suite")) cfg.suite = cli.suite;
        if (app.count("--budget")) cfg.budget = cli.budget;
        if (app.count("--seed")) cfg.seed = cli.seed;
        if (app.count("--out")) cfg.out = cli.out;
        if (app.count("--format")) cfg.format = cli.format;
        if (app.count("--timings")) cfg.timings = cli.timings;

        if (dump_char || dump_supp) {
            std::string text;
            if (dump_char) text += whitcusp::dump_char_table(cfg.q, cfg.theta);
            if (dump_supp) text += whitcusp::dump_support(cfg.q, cfg.theta);
            write_out(cfg.out, text);
            return 0;
        }

        const whitcusp::SuiteReport rep = whitcusp::run_suite(cfg);
        write_out(cfg.out, whitcusp::emit_report(rep, cfg.format, cfg.timings));
        return rep.failed() > 0 ? 1 : 0;
    } catch (const whitcusp::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
}
