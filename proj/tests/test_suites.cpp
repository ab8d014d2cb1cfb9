#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "whitcusp/errors.hpp"
#include "whitcusp/report.hpp"
#include "whitcusp/suites.hpp"

using namespace whitcusp;

TEST_CASE("configuration validation rejects unusable parameters") {
    RunConfig cfg;  // defaults are valid
    CHECK_NOTHROW(validated(cfg));

    RunConfig bad = cfg;
    bad.q = 4;
    CHECK_THROWS_AS(validated(bad), ConfigError);
    bad = cfg;
    bad.q = 1;
    CHECK_THROWS_AS(validated(bad), ConfigError);
    bad = cfg;
    bad.r = 4;
    CHECK_THROWS_AS(validated(bad), ConfigError);
    bad = cfg;
    bad.n = 0;
    CHECK_THROWS_AS(validated(bad), ConfigError);
    bad = cfg;
    bad.suite = "everything";
    CHECK_THROWS_AS(validated(bad), ConfigError);
    bad = cfg;
    bad.r = 3;
    bad.suite = "whittaker";
    CHECK_THROWS_AS(validated(bad), ConfigError);
    bad = cfg;
    bad.r = 3;
    bad.suite = "all";
    CHECK_THROWS_AS(validated(bad), ConfigError);
    bad = cfg;
    bad.format = "yaml";
    CHECK_THROWS_AS(validated(bad), ConfigError);
    bad = cfg;
    bad.budget = 2;
    CHECK_THROWS_AS(validated(bad), ConfigError);
    bad = cfg;
    bad.theta = 3;  // fixed by the q=2 Frobenius: 2*3 = 3 mod 3
    CHECK_THROWS_AS(validated(bad), ConfigError);

    // r=3 character sums need no torus character and must validate.
    RunConfig r3 = cfg;
    r3.r = 3;
    r3.suite = "charsum";
    CHECK_NOTHROW(validated(r3));

    // A default theta resolves to the first regular exponent.
    CHECK(validated(cfg).theta == 1);
}

TEST_CASE("config files override defaults and reject junk") {
    const std::string path = "tmp_config_for_tests.txt";
    {
        std::ofstream out(path);
        out << "# comment line\n";
        out << "q=3\n";
        out << "suite=rankin-selberg   # trailing comment\n";
        out << "seed=7\n";
        out << "timings=true\n";
        out << "\n";
    }
    const RunConfig cfg = load_config_file(path);
    CHECK(cfg.q == 3);
    CHECK(cfg.suite == "rankin-selberg");
    CHECK(cfg.seed == 7);
    CHECK(cfg.timings);
    CHECK(cfg.r == 2);  // untouched default

    {
        std::ofstream out(path);
        out << "qq=3\n";
    }
    CHECK_THROWS_AS(load_config_file(path), ConfigError);
    {
        std::ofstream out(path);
        out << "q=three\n";
    }
    CHECK_THROWS_AS(load_config_file(path), ConfigError);
    {
        std::ofstream out(path);
        out << "just words\n";
    }
    CHECK_THROWS_AS(load_config_file(path), ConfigError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_config_file(path), ConfigError);
}

TEST_CASE("suite runs are deterministic for a fixed config and seed") {
    RunConfig cfg;
    cfg.suite = "rankin-selberg";
    const SuiteReport a = run_suite(cfg);
    const SuiteReport b = run_suite(cfg);
    CHECK(emit_report(a, "json", false) == emit_report(b, "json", false));
    CHECK(emit_report(a, "tsv", false) == emit_report(b, "tsv", false));

    RunConfig other = cfg;
    other.seed = 99;
    const SuiteReport c = run_suite(other);
    // The config line carries the seed, so the artifacts differ.
    CHECK(emit_report(a, "json", false) != emit_report(c, "json", false));
}

TEST_CASE("the default rankin-selberg run passes and reports the conductor") {
    RunConfig cfg;
    cfg.suite = "rankin-selberg";
    const SuiteReport rep = run_suite(cfg);
    CHECK(rep.suite == "rankin-selberg");
    CHECK(rep.failed() == 0);
    CHECK(rep.passed() == static_cast<int>(rep.cases.size()));
    CHECK(rep.cases.size() >= 20);

    bool saw_conductor = false;
    for (const CaseRecord& c : rep.cases) {
        if (c.id != "rankin-selberg/conductor/main") continue;
        saw_conductor = true;
        CHECK(c.lhs.find("f=2") != std::string::npos);
        CHECK(c.params.find("t=2") != std::string::npos);
        CHECK(c.pass);
    }
    CHECK(saw_conductor);

    // Case ids arrive sorted and unique.
    for (size_t i = 1; i < rep.cases.size(); ++i) CHECK(rep.cases[i - 1].id < rep.cases[i].id);

    // Emitted artifacts parse back to the same report.
    const SuiteReport back = parse_report(emit_report(rep, "json", false), "json");
    SuiteReport norm = rep;
    for (auto& c : norm.cases) c.wall_ms = 0.0;
    CHECK(back == norm);
}

TEST_CASE("the charsum suite runs at rank three") {
    RunConfig cfg;
    cfg.suite = "charsum";
    cfg.r = 3;
    const SuiteReport rep = run_suite(cfg);
    CHECK(rep.failed() == 0);
    CHECK(rep.cases.size() >= 70);
    bool saw_aux2 = false;
    int aux2 = 0;
    for (const CaseRecord& c : rep.cases)
        if (c.id.rfind("charsum/aux2/", 0) == 0) {
            saw_aux2 = true;
            ++aux2;
        }
    CHECK(saw_aux2);
    CHECK(aux2 >= 50);
}

TEST_CASE("diagnostic tables have one row per element or shell") {
    const std::string table = dump_char_table(2, -1);
    int rows = 0;
    for (char ch : table)
        if (ch == '\n') ++rows;
    CHECK(rows == 1 + 6);  // header + |GL_2(F_2)|

    const std::string support = dump_support(2, -1);
    rows = 0;
    for (char ch : support)
        if (ch == '\n') ++rows;
    CHECK(rows == 1 + 9);   // header + shells -4..4
    CHECK(support.find("-1\t6\t6\t6") != std::string::npos);
}
