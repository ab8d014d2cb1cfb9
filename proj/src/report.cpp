#include "whitcusp/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "whitcusp/errors.hpp"

namespace whitcusp {

std::string scalar_str(const CycloScalar& v) {
    if (v.is_rational()) return rational_str(v.as_rational());
    std::string s = "cyclo(" + std::to_string(v.modulus()) + ")[";
    const auto& c = v.coeffs();
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) s += ",";
        s += rational_str(c[i]);
    }
    return s + "]";
}

namespace {

using ordered_json = nlohmann::ordered_json;

std::string double_str(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// TSV cells may not contain field or record separators; the emitters only
// produce single-line fields, so this is a guard, not an escape scheme.
std::string cell(const std::string& s) {
    std::string out = s;
    for (char& ch : out)
        if (ch == '\t' || ch == '\n' || ch == '\r') ch = ' ';
    return out;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    size_t start = 0;
    for (size_t i = 0; i <= line.size(); ++i)
        if (i == line.size() || line[i] == '\t') {
            out.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    return out;
}

}  // namespace

int SuiteReport::passed() const {
    int n = 0;
    for (const auto& c : cases) n += c.pass ? 1 : 0;
    return n;
}

int SuiteReport::failed() const { return static_cast<int>(cases.size()) - passed(); }

std::string emit_report(const SuiteReport& report, const std::string& format, bool timings) {
    if (format == "json") {
        ordered_json root;
        root["suite"] = report.suite;
        root["config"] = report.config;
        root["passed"] = report.passed();
        root["failed"] = report.failed();
        root["cases"] = ordered_json::array();
        for (const auto& c : report.cases) {
            ordered_json jc;
            jc["id"] = c.id;
            jc["params"] = c.params;
            jc["claim"] = c.claim;
            jc["lhs"] = c.lhs;
            jc["rhs"] = c.rhs;
            jc["pass"] = c.pass;
            if (timings) jc["wall_ms"] = double_str(c.wall_ms);
            jc["audit"] = c.audit;
            root["cases"].push_back(std::move(jc));
        }
        return root.dump(2) + "\n";
    }
    if (format == "tsv") {
        std::ostringstream out;
        out << "#suite=" << cell(report.suite) << "\tconfig=" << cell(report.config) << "\n";
        out << "id\tparams\tclaim\tlhs\trhs\tpass\taudit";
        if (timings) out << "\twall_ms";
        out << "\n";
        for (const auto& c : report.cases) {
            out << cell(c.id) << '\t' << cell(c.params) << '\t' << cell(c.claim) << '\t'
                << cell(c.lhs) << '\t' << cell(c.rhs) << '\t' << (c.pass ? 1 : 0) << '\t'
                << cell(c.audit);
            if (timings) out << '\t' << double_str(c.wall_ms);
            out << "\n";
        }
        return out.str();
    }
    throw ConfigError("unknown report format: " + format);
}

SuiteReport parse_report(const std::string& text, const std::string& format) {
    SuiteReport rep;
    if (format == "json") {
        try {
            const ordered_json root = ordered_json::parse(text);
            rep.suite = root.at("suite").get<std::string>();
            rep.config = root.at("config").get<std::string>();
            for (const auto& jc : root.at("cases")) {
                CaseRecord c;
                c.id = jc.at("id").get<std::string>();
                c.params = jc.at("params").get<std::string>();
                c.claim = jc.at("claim").get<std::string>();
                c.lhs = jc.at("lhs").get<std::string>();
                c.rhs = jc.at("rhs").get<std::string>();
                c.pass = jc.at("pass").get<bool>();
                if (jc.contains("wall_ms"))
                    c.wall_ms = std::stod(jc.at("wall_ms").get<std::string>());
                c.audit = jc.at("audit").get<std::string>();
                rep.cases.push_back(std::move(c));
            }
            const int claimed = root.at("passed").get<int>();
            if (claimed != rep.passed())
                throw ConfigError("report summary disagrees with its cases");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(std::string("malformed json report: ") + e.what());
        }
        return rep;
    }
    if (format == "tsv") {
        std::istringstream in(text);
        std::string line;
        if (!std::getline(in, line) || line.rfind("#suite=", 0) != 0)
            throw ConfigError("tsv report missing the suite line");
        const auto head = split_tabs(line);
        rep.suite = head.at(0).substr(7);
        if (head.size() < 2 || head[1].rfind("config=", 0) != 0)
            throw ConfigError("tsv report missing the config column");
        rep.config = head[1].substr(7);
        if (!std::getline(in, line)) throw ConfigError("tsv report missing the header row");
        const bool timings = split_tabs(line).size() == 8;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto f = split_tabs(line);
            if (f.size() != (timings ? 8u : 7u))
                throw ConfigError("tsv row has the wrong number of columns");
            CaseRecord c;
            c.id = f[0];
            c.params = f[1];
            c.claim = f[2];
            c.lhs = f[3];
            c.rhs = f[4];
            if (f[5] != "0" && f[5] != "1") throw ConfigError("tsv pass flag must be 0 or 1");
            c.pass = f[5] == "1";
            c.audit = f[6];
            if (timings) {
                try {
                    c.wall_ms = std::stod(f[7]);
                } catch (const std::exception&) {
                    throw ConfigError("tsv wall time is not a number");
                }
            }
            rep.cases.push_back(std::move(c));
        }
        return rep;
    }
    throw ConfigError("unknown report format: " + format);
}

}  // namespace whitcusp
