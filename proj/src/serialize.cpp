#include "prat/serialize.hpp"

#include <cstdio>
#include <sstream>

namespace prat::serialize {

using nlohmann::json;

namespace {

std::string scalar(json const & v)
{
    return v.is_string() ? v.get<std::string>() : v.dump();
}

std::string compact_inputs(json const & in)
{
    std::string s;
    for (auto it = in.begin(); it != in.end(); ++it) {
        if (it.key() == "trail")
            continue;
        if (!s.empty())
            s += ' ';
        s += it.key() + "=" + scalar(it.value());
    }
    return s;
}

std::string pad(std::string s, std::size_t w)
{
    if (s.size() < w)
        s.append(w - s.size(), ' ');
    return s;
}

} // namespace

std::string witness_string(json const & witness)
{
    std::string s;
    for (auto it = witness.begin(); it != witness.end(); ++it) {
        if (!s.empty())
            s += ';';
        s += it.key() + "=" + scalar(it.value());
    }
    return s;
}

std::string csv_quote(std::string const & field)
{
    if (field.find_first_of(",\"\n") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_row(scan_record const & r)
{
    return std::to_string(r.parameter) + "," + to_string(r.st) + "," + (r.h ? std::to_string(*r.h) : "") + ","
           + csv_quote(witness_string(r.witness));
}

std::vector<std::string> parse_csv_line(std::string const & line)
{
    std::vector<std::string> out(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                out.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                out.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.emplace_back();
        } else {
            out.back() += c;
        }
    }
    return out;
}

json summary_json(scan_summary const & s)
{
    return {{"scan", s.scan},
            {"p", s.p},
            {"bound", s.bound},
            {"count", s.records.size()},
            {"rational", s.rational},
            {"not_rational", s.not_rational},
            {"indeterminate", s.indeterminate},
            {"density", s.density()},
            {"mismatches", s.mismatches}};
}

std::string verdict_table(verdict const & v)
{
    std::ostringstream o;
    std::string field;
    for (auto d : v.field)
        field += (field.empty() ? "" : ",") + std::to_string(d);
    o << pad("field", 24) << pad("p", 8) << "status\n";
    o << pad(field, 24) << pad(std::to_string(v.p), 8) << to_string(v.st);
    if (!v.reason.empty())
        o << "  (" << v.reason << ")";
    o << "\n";
    for (auto const & r : v.trail)
        o << "  " << pad(r.name, 34) << pad(r.outcome, 15) << compact_inputs(r.inputs) << "\n";
    return o.str();
}

std::string family_table(family_report const & r)
{
    std::ostringstream o;
    o << "family " << r.family << "  p = " << r.p << "  overall " << to_string(r.overall) << "\n";
    o << "  " << pad("field", 16) << "status\n";
    for (auto const & v : r.components) {
        std::string field;
        for (auto d : v.field)
            field += (field.empty() ? "" : ",") + std::to_string(d);
        o << "  " << pad(field, 16) << to_string(v.st) << "\n";
    }
    for (auto const & i : r.identities)
        o << "  " << pad(i.name, 42) << pad(i.holds ? "holds" : "FAILS", 7) << "expected " << scalar(i.expected)
          << ", got " << scalar(i.actual) << "\n";
    for (auto it = r.extra.begin(); it != r.extra.end(); ++it)
        o << "  " << pad(it.key(), 20) << it.value().dump() << "\n";
    return o.str();
}

std::string scan_table(scan_summary const & s, bool timing)
{
    std::ostringstream o;
    o << pad("parameter", 12) << pad("status", 15) << pad("h", 10);
    if (timing)
        o << pad("seconds", 11);
    o << "witness\n";
    for (auto const & r : s.records) {
        o << pad(std::to_string(r.parameter), 12) << pad(to_string(r.st), 15)
          << pad(r.h ? std::to_string(*r.h) : "-", 10);
        if (timing) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6f", r.seconds);
            o << pad(buf, 11);
        }
        o << witness_string(r.witness) << "\n";
    }
    char dens[32];
    std::snprintf(dens, sizeof dens, "%.4f", s.density());
    o << s.records.size() << " records: " << s.rational << " Rational, " << s.not_rational << " NotRational, "
      << s.indeterminate << " Indeterminate; density " << dens << "\n";
    if (!s.mismatches.empty()) {
        o << "flagged:";
        for (auto m : s.mismatches)
            o << ' ' << m;
        o << "\n";
    }
    return o.str();
}

} // namespace prat::serialize
