#include "prat/families.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <string>
#include <thread>

#include "prat/arith.hpp"
#include "prat/errors.hpp"
#include "prat/lseries.hpp"
#include "prat/parallel.hpp"
#include "prat/units.hpp"

namespace prat {

unsigned default_jobs()
{
    unsigned n = std::thread::hardware_concurrency();
    return n ? n : 1;
}

namespace families {

namespace {

using nlohmann::json;
using steady = std::chrono::steady_clock;

void require_prime_above(std::uint64_t p, std::uint64_t lo)
{
    if (p < lo || !arith::is_prime(p))
        throw precondition_error("p must be a prime >= " + std::to_string(lo) + ", got " + std::to_string(p));
}

status combine(std::vector<verdict> const & comps, std::vector<identity_check> const & ids)
{
    bool open = false;
    for (auto const & v : comps) {
        if (v.st == status::not_rational)
            return status::not_rational;
        if (v.st == status::indeterminate)
            open = true;
    }
    for (auto const & i : ids)
        if (!i.holds)
            open = true;
    return open ? status::indeterminate : status::rational;
}

std::vector<verdict> subfield_verdicts(std::vector<std::int64_t> const & gens, std::uint64_t p,
                                       environment const & env, std::vector<std::int64_t> & subs)
{
    auto M = fields::make_multiquadratic(gens, gens.size());
    subs = fields::canonical_order(M.subfield_ds);
    std::vector<verdict> out;
    for (auto d : subs)
        out.push_back(verdicts::is_p_rational_quadratic(fields::make_quadratic(d), p, env));
    return out;
}

/* a + b sqrt(s) with rational a, b */
struct quad_number
{
    mpq_class a, b;
};

quad_number qmul(quad_number const & x, quad_number const & y, long s)
{
    return {x.a * y.a + s * x.b * y.b, x.a * y.b + x.b * y.a};
}

template <typename Fn>
scan_record timed(std::int64_t parameter, Fn && fn)
{
    auto t0 = steady::now();
    scan_record r = fn();
    r.parameter = parameter;
    r.seconds = std::chrono::duration<double>(steady::now() - t0).count();
    return r;
}

void tally(scan_summary & s)
{
    for (auto const & r : s.records) {
        if (r.st == status::rational)
            ++s.rational;
        else if (r.st == status::not_rational)
            ++s.not_rational;
        else
            ++s.indeterminate;
    }
}

std::vector<std::int64_t> squarefree_up_to(std::int64_t bound)
{
    std::vector<std::int64_t> out;
    for (std::int64_t d = 1; d <= bound; ++d)
        if (arith::is_squarefree(d))
            out.push_back(d);
    return out;
}

} // namespace

scan_record record_from_verdict(std::int64_t parameter, verdict const & v)
{
    scan_record r;
    r.parameter = parameter;
    r.st = v.st;
    for (auto const & c : v.trail) {
        auto const & in = c.inputs;
        if (!r.h) {
            if (in.contains("h_narrow"))
                r.h = in["h_narrow"].get<std::uint64_t>();
            else if (in.contains("h") && in["h"].is_number())
                r.h = in["h"].get<std::uint64_t>();
        }
        if (c.name == "subfield_verdict") {
            r.witness["subfield " + std::to_string(in["d"].get<std::int64_t>())] = c.outcome;
            continue;
        }
        r.witness[c.name] = c.outcome;
        if (c.name == "local_pth_power") {
            r.witness["method"] = in["method"];
            r.witness["pi_valuation"] = in["pi_valuation"];
            if (in.contains("fibonacci_residue"))
                r.witness["fibonacci_residue"] = in["fibonacci_residue"];
        }
    }
    return r;
}

family_report family_p_p2(std::uint64_t p, environment const & env)
{
    require_prime_above(p, 3);
    family_report rep;
    rep.family = "p-p2";
    rep.p = p;
    auto n = static_cast<std::int64_t>(p * (p + 2));
    auto fac = arith::squarefree_decompose(n);
    auto F = fields::make_quadratic(n);
    rep.components.push_back(verdicts::is_p_rational_quadratic(F, p, env));
    rep.extra["d"] = F.d;
    if (p == 3) {
        rep.extra["note"] = "Q(sqrt 15) is the exceptional member at p = 3";
        rep.overall = rep.components.front().st;
        return rep;
    }

    // the norm-one unit p+1 + f sqrt(s) should be a power of the fundamental unit
    auto u = units::fundamental_unit_exact(F.d, units::default_exact_cap, env.cancel);
    quad_number eps{mpq_class(u.x, u.sigma), mpq_class(u.y, u.sigma)};
    quad_number pw = eps;
    mpq_class target_a(static_cast<unsigned long>(p + 1)), target_b(static_cast<long>(fac.square_root_cofactor));
    unsigned k = 1;
    while (pw.a < target_a) {
        check_cancel(env.cancel);
        pw = qmul(pw, eps, static_cast<long>(F.d));
        ++k;
    }
    mpq_class trace = 2 * pw.a;
    bool unit_ok = pw.a == target_a && pw.b == target_b;
    rep.identities.push_back({"unit_trace", mpq_class(2 * target_a).get_str(), trace.get_str(), unit_ok});
    rep.extra["unit_power"] = k;
    rep.extra["fundamental_unit"] = {{"x", u.x.get_str()}, {"y", u.y.get_str()}, {"sigma", u.sigma}};

    auto data = classgroup::class_data(F.discriminant, env.store, false, env.cancel);
    rep.identities.push_back({"class_number_below_p", json("< " + std::to_string(p)), data.h, data.h < p});
    rep.extra["h"] = data.h;
    rep.overall = combine(rep.components, rep.identities);
    return rep;
}

family_report family_real_biquadratic(std::uint64_t p, environment const & env)
{
    require_prime_above(p, 3);
    family_report rep;
    rep.family = "biquad";
    rep.p = p;
    auto P = static_cast<std::int64_t>(p);
    std::vector<std::int64_t> subs;
    rep.components = subfield_verdicts({P * (P + 2), P * (P - 2)}, p, env, subs);
    rep.extra["subfields"] = subs;

    auto k = fields::make_quadratic(P * P - 4);
    auto data = classgroup::class_data(k.discriminant, env.store, false, env.cancel);
    // h <= sqrt(D)/2  <=>  4 h^2 <= D
    bigint lhs = bigint(4) * data.h * data.h;
    bool bound_ok = lhs <= bigint(static_cast<long>(k.discriminant));
    rep.identities.push_back({"class_number_bound", json("h <= sqrt(" + std::to_string(k.discriminant) + ")/2"),
                              data.h, bound_ok});
    rep.extra["k"] = k.d;
    rep.extra["h_k"] = data.h;
    rep.overall = combine(rep.components, rep.identities);
    return rep;
}

family_report family_triquadratic(std::uint64_t p, environment const & env)
{
    require_prime_above(p, 3);
    auto P = static_cast<std::int64_t>(p);
    if (4 * static_cast<double>(P) * P * P > static_cast<double>(classgroup::default_structure_cap))
        throw cap_exceeded("family_triquadratic: |D| ~ 4p^3 above the class group cap");
    family_report rep;
    rep.family = "triquad";
    rep.p = p;
    std::vector<std::int64_t> subs;
    rep.components = subfield_verdicts({-(P + 2), -P, -(P - 2)}, p, env, subs);
    rep.extra["subfields"] = subs;

    auto iso = fields::make_quadratic(-P * (P * P - 4));
    auto data = classgroup::class_data(iso.discriminant, env.store, false, env.cancel);
    rep.identities.push_back({"p_does_not_divide_isolated_class_number", json("h mod p != 0"),
                              data.h % p, data.h % p != 0});
    rep.extra["isolated_d"] = iso.d;
    rep.extra["h"] = data.h;
    rep.extra["h_mod_p"] = data.h % p;
    rep.overall = combine(rep.components, rep.identities);
    return rep;
}

scan_summary question_sqrt_p(std::uint64_t bound, scan_options const & opt)
{
    scan_summary s;
    s.scan = "sqrt-p";
    s.bound = static_cast<std::int64_t>(bound);
    auto primes = arith::primes_in(2, bound);
    s.records = chunked_map<scan_record>(primes.size(), opt.jobs, [&](std::size_t i) {
        auto p = primes[i];
        return timed(static_cast<std::int64_t>(p), [&] {
            auto v = verdicts::is_p_rational_quadratic(fields::make_quadratic(static_cast<std::int64_t>(p)), p, opt.env);
            return record_from_verdict(static_cast<std::int64_t>(p), v);
        });
    }, opt.env.cancel);
    tally(s);
    for (auto const & r : s.records)
        if (r.st == status::not_rational)
            s.mismatches.push_back(r.parameter);
    return s;
}

scan_summary scan_biquadratic_3rational(std::int64_t bound, scan_options const & opt)
{
    scan_summary s;
    s.scan = "biquad3";
    s.p = 3;
    s.bound = bound;
    auto ds = squarefree_up_to(bound);
    auto found = chunked_map<std::optional<scan_record>>(ds.size(), opt.jobs, [&](std::size_t i) -> std::optional<scan_record> {
        std::int64_t d = ds[i];
        auto F = fields::make_quadratic(-d);
        if (arith::kronecker(F.discriminant, 3) != -1)
            return std::nullopt;
        auto data = classgroup::class_data(F.discriminant, opt.env.store, false, opt.env.cancel);
        if (data.h % 3 == 0)
            return std::nullopt;
        return timed(d, [&] {
            auto real = verdicts::is_p_rational_quadratic(fields::make_quadratic(3 * d), 3, opt.env);
            std::vector<std::int64_t> gens{-3, -d};
            auto pair = verdicts::is_p_rational_multiquadratic(fields::make_multiquadratic(gens), 3, opt.env);
            scan_record r = record_from_verdict(d, pair);
            r.h = data.h;
            r.witness["real_3d"] = to_string(real.st);
            return r;
        });
    }, opt.env.cancel);
    for (auto & r : found)
        if (r)
            s.records.push_back(std::move(*r));
    tally(s);
    for (auto const & r : s.records)
        if (r.st != status::rational || r.witness["real_3d"] != "Rational")
            s.mismatches.push_back(r.parameter);
    return s;
}

scan_summary scan_real_ramified(std::uint64_t p, std::int64_t D_bound, scan_options const & opt)
{
    require_prime_above(p, 5);
    scan_summary s;
    s.scan = "real-ramified";
    s.p = p;
    s.bound = D_bound;
    auto P = static_cast<std::int64_t>(p);
    std::vector<std::int64_t> Ds;
    for (std::int64_t D = P; D <= D_bound; D += P)
        if (arith::is_fundamental_discriminant(D))
            Ds.push_back(D);
    auto recs = chunked_map<scan_record>(Ds.size(), opt.jobs, [&](std::size_t i) {
        std::int64_t D = Ds[i];
        return timed(D, [&] {
            auto F = fields::make_quadratic(arith::field_generator(D));
            auto v = verdicts::is_p_rational_quadratic(F, p, opt.env);
            scan_record r = record_from_verdict(D, v);
            bool degenerate = F.d == P && p % 4 == 1;
            if (!degenerate) {
                bool lp = lseries::lp_unit_criterion(F, p);
                r.witness["lp_unit"] = lp ? "true" : "false";
            }
            return r;
        });
    }, opt.env.cancel);
    s.records = std::move(recs);
    tally(s);
    for (auto const & r : s.records)
        if (r.witness.contains("lp_unit") && (r.witness["lp_unit"] == "true") != (r.st == status::rational))
            s.mismatches.push_back(r.parameter);
    return s;
}

scan_summary scan_imaginary(std::uint64_t p, std::int64_t bound, scan_options const & opt)
{
    require_prime_above(p, 3);
    scan_summary s;
    s.scan = "imaginary";
    s.p = p;
    s.bound = bound;
    auto ds = squarefree_up_to(bound);
    s.records = chunked_map<scan_record>(ds.size(), opt.jobs, [&](std::size_t i) {
        std::int64_t d = -ds[i];
        return timed(d, [&] {
            return record_from_verdict(d, verdicts::is_p_rational_quadratic(fields::make_quadratic(d), p, opt.env));
        });
    }, opt.env.cancel);
    tally(s);
    return s;
}

std::optional<verdict> greenberg_search(std::uint64_t p, unsigned t, std::int64_t bound,
                                        std::vector<std::int64_t> const & required, environment const & env)
{
    if (!arith::is_prime(p))
        throw precondition_error("greenberg_search: p must be prime");
    if (t < 1 || t > fields::default_max_rank)
        throw precondition_error("greenberg_search: t must be in 1..6");
    if (required.size() > t)
        throw precondition_error("greenberg_search: more required generators than t");

    std::map<std::int64_t, bool> memo;
    auto rational = [&](std::int64_t d) {
        auto it = memo.find(d);
        if (it != memo.end())
            return it->second;
        bool ok = verdicts::is_p_rational_quadratic(fields::make_quadratic(d), p, env).st == status::rational;
        memo.emplace(d, ok);
        return ok;
    };

    std::vector<std::int64_t> gens;
    std::vector<std::int64_t> span; // squarefree parts of the nonempty subset products
    for (auto g : required) {
        std::int64_t d = fields::make_quadratic(g).d;
        if (std::find(span.begin(), span.end(), d) != span.end())
            throw precondition_error("greenberg_search: required generators are dependent");
        std::vector<std::int64_t> grown{d};
        for (auto s : span)
            grown.push_back(fields::squarefree_product(d, s));
        for (auto x : grown)
            if (!rational(x))
                return std::nullopt;
        span.insert(span.end(), grown.begin(), grown.end());
        gens.push_back(d);
    }

    std::vector<std::int64_t> cands;
    for (std::int64_t d = -bound; d <= bound; ++d)
        if (d != 0 && d != 1 && arith::is_squarefree(d))
            cands.push_back(d);
    cands = fields::canonical_order(cands);

    std::size_t visits = 0;
    auto dfs = [&](auto && self, std::size_t from) -> bool {
        if (gens.size() == t)
            return true;
        for (std::size_t i = from; i < cands.size(); ++i) {
            if ((++visits & 0xff) == 0)
                check_cancel(env.cancel);
            std::int64_t g = cands[i];
            if (std::find(span.begin(), span.end(), g) != span.end())
                continue;
            std::vector<std::int64_t> grown{g};
            for (auto s : span)
                grown.push_back(fields::squarefree_product(g, s));
            if (!std::all_of(grown.begin(), grown.end(), rational))
                continue;
            std::size_t keep = span.size();
            span.insert(span.end(), grown.begin(), grown.end());
            gens.push_back(g);
            if (self(self, i + 1))
                return true;
            gens.pop_back();
            span.resize(keep);
        }
        return false;
    };
    if (!dfs(dfs, 0))
        return std::nullopt;
    return verdicts::is_p_rational_multiquadratic(fields::make_multiquadratic(gens, gens.size()), p, env);
}

nlohmann::json to_json(family_report const & r)
{
    json comps = json::array(), ids = json::array();
    for (auto const & v : r.components)
        comps.push_back(verdicts::to_json(v));
    for (auto const & i : r.identities)
        ids.push_back({{"name", i.name}, {"expected", i.expected}, {"actual", i.actual}, {"holds", i.holds}});
    return {{"family", r.family}, {"p", r.p}, {"overall", to_string(r.overall)},
            {"components", comps}, {"identities", ids}, {"extra", r.extra}};
}

nlohmann::json to_json(scan_record const & r, bool timing)
{
    json j = {{"parameter", r.parameter}, {"status", to_string(r.st)}, {"witness", r.witness}};
    j["h"] = r.h ? json(*r.h) : json(nullptr);
    if (timing)
        j["seconds"] = r.seconds;
    return j;
}

} // namespace families
} // namespace prat
