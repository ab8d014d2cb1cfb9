#pragma once

#include <string>
#include <vector>

#include "whitcusp/cyclo.hpp"

namespace whitcusp {

// Exact serialization used throughout the reports: rationals as "num/den",
// everything else as cyclo(M)[c0,c1,...] listing the coefficient vector.
std::string scalar_str(const CycloScalar& v);

// One verified claim instance. lhs/rhs hold exact serializations (rationals as
// "num/den", cyclotomic values as cyclo(M)[...]); a failing case always keeps
// both sides so the report alone reproduces the discrepancy.
struct CaseRecord {
    std::string id;
    std::string params;
    std::string claim;
    std::string lhs;
    std::string rhs;
    bool pass = false;
    double wall_ms = 0.0;
    std::string audit;

    friend bool operator==(const CaseRecord& a, const CaseRecord& b) {
        return a.id == b.id && a.params == b.params && a.claim == b.claim && a.lhs == b.lhs &&
               a.rhs == b.rhs && a.pass == b.pass && a.wall_ms == b.wall_ms && a.audit == b.audit;
    }
    friend bool operator!=(const CaseRecord& a, const CaseRecord& b) { return !(a == b); }
};

struct SuiteReport {
    std::string suite;
    std::string config;
    std::vector<CaseRecord> cases;

    int passed() const;
    int failed() const;

    friend bool operator==(const SuiteReport& a, const SuiteReport& b) {
        return a.suite == b.suite && a.config == b.config && a.cases == b.cases;
    }
    friend bool operator!=(const SuiteReport& a, const SuiteReport& b) { return !(a == b); }
};

// format is "json" or "tsv". Field order is fixed; wall times are emitted only
// when timings is set, so default artifacts are byte-deterministic. Doubles
// round-trip through max_digits10, making parse(emit(r)) == r exact (with
// timings off, the parsed wall times are zero).
std::string emit_report(const SuiteReport& report, const std::string& format, bool timings);
SuiteReport parse_report(const std::string& text, const std::string& format);

}  // namespace whitcusp
