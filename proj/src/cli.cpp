#include "prat/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "prat/cache.hpp"
#include "prat/errors.hpp"
#include "prat/families.hpp"
#include "prat/lseries.hpp"
#include "prat/parallel.hpp"
#include "prat/serialize.hpp"
#include "prat/units.hpp"

namespace prat::cli {

namespace {

using nlohmann::json;

struct globals
{
    bool json = false;
    bool csv = false;
    bool timing = false;
    unsigned jobs = default_jobs();
    std::string cache;
    double cancel_after = 0;
};

void emit_scan(std::ostringstream & o, scan_summary const & s, globals const & g)
{
    if (g.json) {
        for (auto const & r : s.records)
            o << families::to_json(r, g.timing).dump() << "\n";
        o << serialize::summary_json(s).dump() << "\n";
    } else if (g.csv) {
        o << serialize::csv_header << "\n";
        for (auto const & r : s.records)
            o << serialize::csv_row(r) << "\n";
    } else {
        o << serialize::scan_table(s, g.timing);
    }
}

void emit_verdict(std::ostringstream & o, verdict const & v, globals const & g)
{
    if (g.json)
        o << verdicts::to_json(v).dump() << "\n";
    else
        o << serialize::verdict_table(v);
}

void emit_family(std::ostringstream & o, family_report const & r, globals const & g)
{
    if (g.json)
        o << families::to_json(r).dump() << "\n";
    else
        o << serialize::family_table(r);
}

void emit_object(std::ostringstream & o, json const & j, globals const & g)
{
    if (g.json) {
        o << j.dump() << "\n";
        return;
    }
    for (auto it = j.begin(); it != j.end(); ++it)
        o << std::left << std::setw(16) << it.key() << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
}

void no_csv(globals const & g, char const * what)
{
    if (g.csv)
        throw precondition_error(std::string("--csv applies to scans, not to ") + what);
}

} // namespace

int run(int argc, char const * const * argv, std::ostream & out, std::ostream & err)
{
    CLI::App app{"p-rationality toolkit for quadratic and multi-quadratic fields", "prat"};
    app.require_subcommand(1);
    app.fallthrough();
    globals g;
    app.add_flag("--json", g.json, "one JSON object per line");
    app.add_flag("--csv", g.csv, "CSV scan output: parameter,status,h,witness");
    app.add_flag("--timing", g.timing, "add per-record wall time to scan output");
    app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--cache", g.cache, "class number cache file (JSON lines); PRAT_CACHE overrides");
    app.add_option("--cancel-after", g.cancel_after, "give up after this many seconds")->check(CLI::NonNegativeNumber);

    std::uint64_t p = 0;
    std::int64_t d = 0, D = 0, bound = 0;
    unsigned t = 2, n = 0;
    std::vector<std::int64_t> multi, require;
    std::string modulus;
    std::uint64_t mod_p = 0;
    bool structure = false;

    auto test = app.add_subcommand("test", "decide p-rationality of a quadratic or multi-quadratic field");
    test->add_option("--p", p, "prime")->required();
    auto opt_d = test->add_option("--d", d, "generator of Q(sqrt d)");
    auto opt_multi = test->add_option("--multi", multi, "generators d1,d2,...")->delimiter(',');
    opt_d->excludes(opt_multi);

    auto family = app.add_subcommand("family", "verify one of the explicit families");
    std::string family_name;
    family->add_option("name", family_name, "p-p2 | biquad | triquad | sqrt-p")
        ->required()
        ->check(CLI::IsMember({"p-p2", "biquad", "triquad", "sqrt-p"}));
    family->add_option("--p", p, "prime");
    family->add_option("--bound", bound, "bound for sqrt-p");

    auto scan = app.add_subcommand("scan", "scan a parameter range");
    std::string scan_name;
    scan->add_option("name", scan_name, "imaginary | real-ramified | biquad3 | greenberg")
        ->required()
        ->check(CLI::IsMember({"imaginary", "real-ramified", "biquad3", "greenberg"}));
    scan->add_option("--p", p, "prime");
    scan->add_option("--bound", bound, "range bound")->required();
    scan->add_option("--t", t, "rank for greenberg");
    scan->add_option("--require", require, "generators the greenberg witness must contain")->delimiter(',');

    auto classnum = app.add_subcommand("classnum", "class number data of a fundamental discriminant");
    classnum->add_option("--D", D, "fundamental discriminant")->required();
    classnum->add_flag("--structure", structure, "class group structure (imaginary only)");

    auto unit = app.add_subcommand("unit", "fundamental unit of Q(sqrt d), d > 1");
    unit->add_option("--d", d, "squarefree d > 1")->required();
    unit->add_option("--mod", modulus, "reduce modulo M instead of computing exactly");

    auto bern = app.add_subcommand("bernoulli", "generalized Bernoulli number B_{n,chi_D}");
    bern->add_option("--D", D, "fundamental discriminant")->required();
    bern->add_option("--n", n, "index")->required();
    bern->add_option("--mod", mod_p, "residue mod this prime");

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const & e) {
        std::ostringstream o, e2;
        int rc = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return rc == 0 ? ok : bad_arguments;
    }
    if (g.json && g.csv) {
        err << "prat: --json and --csv are exclusive\n";
        return bad_arguments;
    }

    cancel_token token;
    if (g.cancel_after > 0)
        token.cancel_after(std::chrono::milliseconds(static_cast<long long>(g.cancel_after * 1000)));

    std::ostringstream o;
    try {
        std::unique_ptr<classgroup::class_number_store> store;
        std::string cache_path = g.cache;
        if (char const * envp = std::getenv("PRAT_CACHE"); envp && *envp)
            cache_path = envp;
        if (cache_path.empty())
            store = std::make_unique<classgroup::memory_store>();
        else
            store = std::make_unique<jsonl_store>(cache_path);
        environment env{&token, store.get()};
        scan_options sopt{g.jobs, env};

        if (*test) {
            no_csv(g, "test");
            if (opt_multi->count()) {
                auto M = fields::make_multiquadratic(multi);
                emit_verdict(o, verdicts::is_p_rational_multiquadratic(M, p, env), g);
            } else if (opt_d->count()) {
                auto v = verdicts::is_p_rational_quadratic(fields::make_quadratic(d), p, env);
                emit_verdict(o, v, g);
            } else {
                throw precondition_error("test needs --d or --multi");
            }
        } else if (*family) {
            if (family_name == "sqrt-p") {
                if (bound < 2)
                    throw precondition_error("family sqrt-p needs --bound >= 2");
                emit_scan(o, families::question_sqrt_p(static_cast<std::uint64_t>(bound), sopt), g);
            } else {
                no_csv(g, "family reports");
                if (p == 0)
                    throw precondition_error("family " + family_name + " needs --p");
                family_report r = family_name == "p-p2"     ? families::family_p_p2(p, env)
                                  : family_name == "biquad" ? families::family_real_biquadratic(p, env)
                                                            : families::family_triquadratic(p, env);
                emit_family(o, r, g);
            }
        } else if (*scan) {
            if (scan_name != "biquad3" && p == 0)
                throw precondition_error("scan " + scan_name + " needs --p");
            if (scan_name == "imaginary") {
                emit_scan(o, families::scan_imaginary(p, bound, sopt), g);
            } else if (scan_name == "real-ramified") {
                emit_scan(o, families::scan_real_ramified(p, bound, sopt), g);
            } else if (scan_name == "biquad3") {
                emit_scan(o, families::scan_biquadratic_3rational(bound, sopt), g);
            } else {
                no_csv(g, "greenberg");
                auto w = families::greenberg_search(p, t, bound, require, env);
                if (w)
                    emit_verdict(o, *w, g);
                else
                    emit_object(o, {{"found", false}, {"p", p}, {"t", t}, {"bound", bound}}, g);
            }
        } else if (*classnum) {
            no_csv(g, "classnum");
            if (D == 1 || !arith::is_fundamental_discriminant(D))
                throw precondition_error("--D must be a fundamental discriminant");
            if (structure && D > 0)
                throw precondition_error("--structure is available for imaginary fields only");
            auto data = classgroup::class_data(D, env.store, structure, env.cancel);
            json j = {{"D", data.discriminant}, {"h", data.h}};
            if (data.h_narrow)
                j["h_narrow"] = *data.h_narrow;
            if (data.unit_norm)
                j["unit_norm"] = *data.unit_norm;
            if (data.structure)
                j["structure"] = *data.structure;
            emit_object(o, j, g);
        } else if (*unit) {
            no_csv(g, "unit");
            if (modulus.empty()) {
                auto u = units::fundamental_unit_exact(d, units::default_exact_cap, env.cancel);
                auto cf = units::cf_expand(d, units::default_period_cap, env.cancel);
                emit_object(o, {{"d", d}, {"x", u.x.get_str()}, {"y", u.y.get_str()}, {"sigma", u.sigma},
                                {"norm", u.norm}, {"period_length", cf.length()}}, g);
            } else {
                bigint m;
                if (m.set_str(modulus, 10) != 0)
                    throw precondition_error("--mod must be an integer");
                auto r = units::fundamental_unit_residue(d, m, env.cancel);
                emit_object(o, {{"d", d}, {"modulus", r.modulus.get_str()}, {"x", r.x.get_str()},
                                {"y", r.y.get_str()}, {"sigma", r.sigma}, {"trace_mod", r.trace_mod.get_str()},
                                {"norm", r.norm}}, g);
            }
        } else if (*bern) {
            no_csv(g, "bernoulli");
            if (mod_p) {
                emit_object(o, {{"D", D}, {"n", n}, {"p", mod_p},
                                {"residue", lseries::gen_bernoulli_mod_p(D, n, mod_p)}}, g);
            } else {
                emit_object(o, {{"D", D}, {"n", n}, {"exact", lseries::gen_bernoulli_exact(D, n).str()}}, g);
            }
        }
    } catch (precondition_error const & e) {
        err << "prat: " << e.what() << "\n";
        return bad_arguments;
    } catch (cap_exceeded const & e) {
        err << "prat: " << e.what() << "\n";
        return cap_reached;
    } catch (cancelled const & e) {
        err << "prat: " << e.what() << "\n";
        return cap_reached;
    } catch (std::exception const & e) {
        err << "prat: internal error: " << e.what() << "\n";
        return internal_error;
    }
    out << o.str() << std::flush;
    return ok;
}

} // namespace prat::cli
