#include "prat/verdict.hpp"

#include <algorithm>
#include <string>

#include "prat/arith.hpp"
#include "prat/errors.hpp"
#include "prat/units.hpp"

namespace prat {

std::string to_string(status s)
{
    switch (s) {
    case status::rational: return "Rational";
    case status::not_rational: return "NotRational";
    case status::indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

status status_from_string(std::string const & s)
{
    if (s == "Rational")
        return status::rational;
    if (s == "NotRational")
        return status::not_rational;
    if (s == "Indeterminate")
        return status::indeterminate;
    throw precondition_error("unknown status '" + s + "'");
}

namespace verdicts {

namespace {

using nlohmann::json;

std::string yes_no(bool b)
{
    return b ? "true" : "false";
}

void require_prime(std::uint64_t p)
{
    if (!arith::is_prime(p))
        throw precondition_error("p must be prime, got " + std::to_string(p));
}

/* p = 3 and d = -3 mod 9 */
bool minus3_mod9(std::int64_t d)
{
    return arith::mod_floor(d, 9) == 6;
}

struct mirror_data
{
    std::int64_t mirror_d, D;
    std::uint64_t h; // h for imaginary mirror, narrow h for real mirror
};

mirror_data mirror_class_number(quadratic_field const & F, environment const & env)
{
    auto M = fields::mirror(F);
    auto data = classgroup::class_data(M.discriminant, env.store, false, env.cancel);
    return {M.d, M.discriminant, M.is_real ? *data.h_narrow : data.h};
}

criterion_record local_record(quadratic_field const & F, std::uint64_t p, environment const & env)
{
    auto r = units::local_pth_power_test(F, p, env.cancel);
    json in = {{"d", F.d}, {"p", p}, {"method", to_string(r.method)}, {"pi_valuation", r.pi_valuation}};
    if (r.fibonacci_residue)
        in["fibonacci_residue"] = *r.fibonacci_residue;
    return {"local_pth_power", in, yes_no(r.is_pth_power), "unit is a local p-th power"};
}

verdict quadratic_p2(quadratic_field const & F)
{
    verdict v{{F.d}, 2, status::indeterminate, {}, {}};
    bool listed = two_rational_by_list(F.d);
    bool ram = two_rational_by_ramification(F.d);
    v.trail.push_back({"two_rational_list", {{"d", F.d}}, yes_no(listed), "2-rational quadratic classification"});
    v.trail.push_back({"two_rational_ramification", {{"d", F.d}}, yes_no(ram),
                       "unramified outside 2, infinity and one prime l == +-3 (mod 8)"});
    if (listed != ram)
        throw std::logic_error("two-rational list and ramification test disagree at d = " + std::to_string(F.d));
    v.st = listed ? status::rational : status::not_rational;
    return v;
}

verdict quadratic_p3(quadratic_field const & F, environment const & env)
{
    verdict v{{F.d}, 3, status::indeterminate, {}, {}};
    if (F.d == -3) {
        v.trail.push_back({"cube_roots_of_unity_field", {{"d", F.d}}, "true", "Q(sqrt -3) exception"});
        v.st = status::rational;
        return v;
    }
    bool bad = minus3_mod9(F.d);
    v.trail.push_back({"d_congruent_minus3_mod9", {{"d", F.d}}, yes_no(bad), "d == -3 (mod 9) obstruction"});
    if (bad) {
        v.st = status::not_rational;
        return v;
    }
    auto m = mirror_class_number(F, env);
    bool divides = m.h % 3 == 0;
    v.trail.push_back({"p_divides_mirror_class_number",
                       {{"d", F.d}, {"p", 3}, {"mirror_d", m.mirror_d}, {"D", m.D}, {"h", m.h}},
                       yes_no(divides), "mirror field class number"});
    v.st = divides ? status::not_rational : status::rational;
    return v;
}

verdict quadratic_real(quadratic_field const & F, std::uint64_t p, environment const & env)
{
    verdict v{{F.d}, p, status::indeterminate, {}, {}};
    auto data = classgroup::class_data(F.discriminant, env.store, false, env.cancel);
    std::uint64_t hn = *data.h_narrow;
    bool divides = hn % p == 0;
    v.trail.push_back({"p_divides_narrow_class_number", {{"D", F.discriminant}, {"p", p}, {"h_narrow", hn}},
                       yes_no(divides), "narrow class number"});
    auto local = local_record(F, p, env);
    bool pth = local.outcome == "true";
    v.trail.push_back(std::move(local));
    v.st = (!divides && !pth) ? status::rational : status::not_rational;
    return v;
}

verdict quadratic_imaginary(quadratic_field const & F, std::uint64_t p, environment const & env)
{
    verdict v{{F.d}, p, status::indeterminate, {}, {}};
    auto data = classgroup::class_data(F.discriminant, env.store, false, env.cancel);
    bool divides = data.h % p == 0;
    v.trail.push_back({"p_divides_class_number", {{"D", F.discriminant}, {"p", p}, {"h", data.h}},
                       yes_no(divides), "class number"});
    if (!divides) {
        v.st = status::rational;
        return v;
    }
    auto full = classgroup::class_data(F.discriminant, env.store, true, env.cancel);
    bool cyclic = classgroup::is_p_part_cyclic(*full.structure, p);
    v.trail.push_back({"p_part_cyclic", {{"D", F.discriminant}, {"p", p}, {"structure", *full.structure}},
                       yes_no(cyclic), "p-rank of the class group"});
    if (!cyclic) {
        v.st = status::not_rational;
        return v;
    }
    v.reason = "anticyclotomic containment undecided";
    return v;
}

criterion_record subfield_record(verdict const & sub)
{
    json trail = json::array();
    for (auto const & r : sub.trail)
        trail.push_back(to_json(r));
    return {"subfield_verdict", {{"d", sub.field.front()}, {"p", sub.p}, {"trail", trail}},
            to_string(sub.st), "conjunction over quadratic subfields"};
}

std::vector<std::int64_t> from_json_list(json const & j)
{
    return j.get<std::vector<std::int64_t>>();
}

} // namespace

bool two_rational_by_list(std::int64_t d)
{
    if (d == 2 || d == -1 || d == -2)
        return true;
    std::int64_t l = d < 0 ? -d : d;
    if (l % 2 == 0)
        l /= 2;
    auto r = l % 8;
    return arith::is_prime(static_cast<std::uint64_t>(l)) && (r == 3 || r == 5);
}

bool two_rational_by_ramification(std::int64_t d)
{
    auto F = fields::make_quadratic(d);
    std::uint64_t D = static_cast<std::uint64_t>(F.discriminant < 0 ? -F.discriminant : F.discriminant);
    std::vector<std::uint64_t> odd_ramified;
    for (auto [q, e] : arith::factor(D)) {
        (void) e;
        if (q != 2)
            odd_ramified.push_back(q);
    }
    if (odd_ramified.empty())
        return true;
    if (odd_ramified.size() > 1)
        return false;
    // (2|l) = -1 iff l == +-3 (mod 8)
    return arith::kronecker(8, static_cast<std::int64_t>(odd_ramified[0])) == -1;
}

verdict is_p_rational_quadratic(quadratic_field const & F, std::uint64_t p, environment const & env)
{
    require_prime(p);
    if (p == 2)
        return quadratic_p2(F);
    if (p == 3)
        return quadratic_p3(F, env);
    return F.is_real ? quadratic_real(F, p, env) : quadratic_imaginary(F, p, env);
}

verdict is_p_rational_multiquadratic(multiquadratic_field const & M, std::uint64_t p, environment const & env)
{
    require_prime(p);
    if (M.rank() == 1) {
        auto v = is_p_rational_quadratic(fields::make_quadratic(M.generators[0]), p, env);
        v.field = M.generators;
        return v;
    }
    verdict v{M.generators, p, status::rational, {}, {}};
    bool any_indeterminate = false, any_not = false;
    std::int64_t first_open = 0;
    for (auto d : fields::canonical_order(M.subfield_ds)) {
        auto sub = is_p_rational_quadratic(fields::make_quadratic(d), p, env);
        if (sub.st == status::not_rational)
            any_not = true;
        if (sub.st == status::indeterminate && !any_indeterminate) {
            any_indeterminate = true;
            first_open = d;
        }
        v.trail.push_back(subfield_record(sub));
    }
    if (any_not) {
        v.st = status::not_rational;
    } else if (any_indeterminate) {
        v.st = status::indeterminate;
        v.reason = "subfield " + std::to_string(first_open) + " undecided";
    }
    return v;
}

bool check_sqrt_minus3_adjunction(multiquadratic_field const & M, environment const & env)
{
    if (is_p_rational_multiquadratic(M, 3, env).st != status::rational)
        throw precondition_error("check_sqrt_minus3_adjunction: field is not 3-rational");
    auto gens = M.generators;
    gens.push_back(-3);
    auto L = fields::make_multiquadratic(gens, gens.size());
    bool direct = is_p_rational_multiquadratic(L, 3, env).st == status::rational;
    // the congruence rule needs M totally real; Q(sqrt -31) already fails it
    bool real = std::all_of(M.generators.begin(), M.generators.end(), [](std::int64_t g) { return g > 0; });
    if (!real)
        return direct;
    bool ok = std::none_of(M.subfield_ds.begin(), M.subfield_ds.end(),
                           [](std::int64_t d) { return arith::mod_floor(d, 3) == 1; });
    if (direct != ok)
        throw std::logic_error("check_sqrt_minus3_adjunction: congruence test disagrees with direct verdict");
    return ok;
}

verdict cm_going_up(std::vector<std::int64_t> const & F_gens, std::int64_t delta, std::uint64_t p,
                    environment const & env)
{
    require_prime(p);
    if (p < 3)
        throw precondition_error("cm_going_up: p must be odd");
    if (delta <= 0 || !arith::is_squarefree(delta))
        throw precondition_error("cm_going_up: delta must be a positive squarefree integer");
    for (auto g : F_gens)
        if (g <= 0)
            throw precondition_error("cm_going_up: F must be real");
    auto F = fields::make_multiquadratic(F_gens);
    auto base = is_p_rational_multiquadratic(F, p, env);
    if (base.st != status::rational)
        throw precondition_error("cm_going_up: F is not p-rational");

    auto gens = F_gens;
    gens.push_back(-delta);
    multiquadratic_field L;
    try {
        L = fields::make_multiquadratic(gens, gens.size());
    } catch (precondition_error const &) {
        throw precondition_error("cm_going_up: F(sqrt -delta) is not multi-quadratic of higher rank");
    }

    verdict v{gens, p, status::rational, {}, {}};
    v.trail.push_back({"base_field_verdict", {{"field", F_gens}, {"p", p}}, to_string(base.st),
                       "totally real base field"});

    auto subs = fields::canonical_order(L.subfield_ds);
    std::vector<std::uint64_t> hs;
    bool coprime = true;
    for (auto d : subs) {
        auto K = fields::make_quadratic(d);
        auto data = classgroup::class_data(K.discriminant, env.store, false, env.cancel);
        hs.push_back(data.h);
        if (data.h % p == 0)
            coprime = false;
    }
    v.trail.push_back({"class_numbers_coprime_to_p", {{"subfields", subs}, {"h", hs}, {"p", p}},
                       yes_no(coprime), "class number of the CM field via its quadratic subfields"});

    bool no_roots = true;
    if (p == 3)
        no_roots = std::none_of(subs.begin(), subs.end(), [](std::int64_t d) { return d < 0 && minus3_mod9(d); });
    v.trail.push_back({"no_local_pth_roots_of_unity", {{"subfields", subs}, {"p", p}}, yes_no(no_roots),
                       "p-th roots of unity in the completions"});
    if (coprime && no_roots)
        return v;

    auto fallback = is_p_rational_multiquadratic(L, p, env);
    for (auto & r : fallback.trail)
        v.trail.push_back(std::move(r));
    v.st = fallback.st;
    v.reason = fallback.reason;
    return v;
}

std::string replay(criterion_record const & r, environment const & env)
{
    auto const & in = r.inputs;
    auto const & n = r.name;
    if (n == "two_rational_list")
        return yes_no(two_rational_by_list(in.at("d").get<std::int64_t>()));
    if (n == "two_rational_ramification")
        return yes_no(two_rational_by_ramification(in.at("d").get<std::int64_t>()));
    if (n == "cube_roots_of_unity_field")
        return yes_no(in.at("d").get<std::int64_t>() == -3);
    if (n == "d_congruent_minus3_mod9")
        return yes_no(minus3_mod9(in.at("d").get<std::int64_t>()));
    if (n == "p_divides_mirror_class_number") {
        auto m = mirror_class_number(fields::make_quadratic(in.at("d").get<std::int64_t>()), env);
        return yes_no(m.h % 3 == 0);
    }
    if (n == "p_divides_narrow_class_number") {
        auto data = classgroup::class_data(in.at("D").get<std::int64_t>(), env.store, false, env.cancel);
        return yes_no(*data.h_narrow % in.at("p").get<std::uint64_t>() == 0);
    }
    if (n == "local_pth_power") {
        auto res = units::local_pth_power_test(fields::make_quadratic(in.at("d").get<std::int64_t>()),
                                               in.at("p").get<std::uint64_t>(), env.cancel);
        return yes_no(res.is_pth_power);
    }
    if (n == "p_divides_class_number") {
        auto data = classgroup::class_data(in.at("D").get<std::int64_t>(), env.store, false, env.cancel);
        return yes_no(data.h % in.at("p").get<std::uint64_t>() == 0);
    }
    if (n == "p_part_cyclic")
        return yes_no(classgroup::is_p_part_cyclic(in.at("D").get<std::int64_t>(), in.at("p").get<std::uint64_t>()));
    if (n == "subfield_verdict")
        return to_string(is_p_rational_quadratic(fields::make_quadratic(in.at("d").get<std::int64_t>()),
                                                 in.at("p").get<std::uint64_t>(), env).st);
    if (n == "base_field_verdict")
        return to_string(is_p_rational_multiquadratic(fields::make_multiquadratic(from_json_list(in.at("field"))),
                                                      in.at("p").get<std::uint64_t>(), env).st);
    if (n == "class_numbers_coprime_to_p") {
        auto p = in.at("p").get<std::uint64_t>();
        bool ok = true;
        for (auto d : from_json_list(in.at("subfields"))) {
            auto K = fields::make_quadratic(d);
            if (classgroup::class_data(K.discriminant, env.store, false, env.cancel).h % p == 0)
                ok = false;
        }
        return yes_no(ok);
    }
    if (n == "no_local_pth_roots_of_unity") {
        if (in.at("p").get<std::uint64_t>() != 3)
            return "true";
        auto subs = from_json_list(in.at("subfields"));
        return yes_no(std::none_of(subs.begin(), subs.end(), [](std::int64_t d) { return d < 0 && minus3_mod9(d); }));
    }
    throw precondition_error("replay: unknown criterion '" + n + "'");
}

bool replays(verdict const & v, environment const & env)
{
    for (auto const & r : v.trail)
        if (replay(r, env) != r.outcome)
            return false;
    auto M = fields::make_multiquadratic(v.field, v.field.size());
    return is_p_rational_multiquadratic(M, v.p, env).st == v.st;
}

nlohmann::json to_json(criterion_record const & r)
{
    return {{"name", r.name}, {"inputs", r.inputs}, {"outcome", r.outcome}, {"paper_ref", r.reference}};
}

nlohmann::json to_json(verdict const & v)
{
    json trail = json::array();
    for (auto const & r : v.trail)
        trail.push_back(to_json(r));
    json j = {{"field", v.field}, {"p", v.p}, {"status", to_string(v.st)}, {"trail", trail}};
    if (!v.reason.empty())
        j["reason"] = v.reason;
    return j;
}

} // namespace verdicts
} // namespace prat
