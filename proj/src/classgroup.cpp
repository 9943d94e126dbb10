#include "prat/classgroup.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "prat/arith.hpp"
#include "prat/errors.hpp"
#include "prat/units.hpp"

namespace prat::classgroup {

namespace {

using i128 = __int128;

void require_fundamental(std::int64_t D, bool negative)
{
    if (negative ? D >= 0 : D <= 0)
        throw precondition_error("discriminant has the wrong sign: " + std::to_string(D));
    if (!arith::is_fundamental_discriminant(D))
        throw precondition_error("not a fundamental discriminant: " + std::to_string(D));
}

std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c)
{
    return std::gcd(std::gcd(a, b), c);
}

/* u*a + v*b = g */
std::int64_t xgcd(std::int64_t a, std::int64_t b, std::int64_t & u, std::int64_t & v)
{
    std::int64_t u0 = 1, v0 = 0, u1 = 0, v1 = 1;
    while (b != 0) {
        std::int64_t q = a / b;
        std::tie(a, b) = std::make_pair(b, a - q * b);
        std::tie(u0, u1) = std::make_pair(u1, u0 - q * u1);
        std::tie(v0, v1) = std::make_pair(v1, v0 - q * v1);
    }
    if (a < 0) {
        a = -a;
        u0 = -u0;
        v0 = -v0;
    }
    u = u0;
    v = v0;
    return a;
}

} // namespace

std::uint64_t landau_class_number(std::int64_t D, cancel_token const * cancel)
{
    require_fundamental(D, true);
    std::int64_t w = D == -3 ? 6 : D == -4 ? 4 : 2;
    auto n = static_cast<std::uint64_t>(-D) / 2;
    auto spf = arith::spf_table(n);
    auto const & s = *spf;

    // chi is completely multiplicative in r: chi(r) = chi(spf(r)) chi(r / spf(r))
    std::vector<std::int8_t> chi(n + 1, 0);
    std::int64_t sum = 0;
    if (n >= 1) {
        chi[1] = 1;
        sum = 1;
    }
    for (std::uint64_t r = 2; r <= n; ++r) {
        if ((r & 0xffff) == 0)
            check_cancel(cancel);
        std::uint32_t q = s[r];
        chi[r] = q == r ? static_cast<std::int8_t>(arith::kronecker(D, static_cast<std::int64_t>(r)))
                        : static_cast<std::int8_t>(chi[q] * chi[r / q]);
        sum += chi[r];
    }
    std::int64_t num = w * sum;
    std::int64_t den = 2 * (2 - arith::kronecker(D, 2));
    if (num <= 0 || num % den != 0)
        throw std::logic_error("landau_class_number: non-integral result for D = " + std::to_string(D));
    return static_cast<std::uint64_t>(num / den);
}

std::vector<form> reduced_forms(std::int64_t D, cancel_token const * cancel)
{
    if (D >= 0 || arith::mod_floor(D, 4) > 1)
        throw precondition_error("reduced_forms: D must be a negative discriminant");
    std::vector<form> out;
    std::int64_t A = -D;
    for (std::int64_t b = A & 1; 3 * b * b <= A; b += 2) {
        check_cancel(cancel);
        std::int64_t m = (b * b + A) / 4;
        for (std::int64_t a = std::max<std::int64_t>(b, 1); a * a <= m; ++a) {
            if (m % a != 0)
                continue;
            std::int64_t c = m / a;
            if (gcd3(a, b, c) != 1)
                continue;
            out.push_back({a, b, c});
            if (b != 0 && b != a && a != c)
                out.push_back({a, -b, c});
        }
    }
    return out;
}

std::uint64_t reduced_forms_count(std::int64_t D, cancel_token const * cancel)
{
    require_fundamental(D, true);
    std::uint64_t count = 0;
    std::int64_t A = -D;
    for (std::int64_t b = A & 1; 3 * b * b <= A; b += 2) {
        check_cancel(cancel);
        std::int64_t m = (b * b + A) / 4;
        for (std::int64_t a = std::max<std::int64_t>(b, 1); a * a <= m; ++a) {
            if (m % a != 0)
                continue;
            std::int64_t c = m / a;
            if (gcd3(a, b, c) != 1)
                continue;
            count += (b == 0 || b == a || a == c) ? 1 : 2;
        }
    }
    return count;
}

std::uint64_t class_number_imaginary(std::int64_t D, cancel_token const * cancel)
{
    if (-D <= landau_limit)
        return landau_class_number(D, cancel);
    return reduced_forms_count(D, cancel);
}

form reduce_definite(form f)
{
    auto D = static_cast<i128>(f.b) * f.b - static_cast<i128>(4) * f.a * f.c;
    auto normalize = [&] {
        // bring b into (-a, a]
        std::int64_t two_a = 2 * f.a;
        std::int64_t r = arith::mod_floor(f.b, two_a);
        if (r > f.a)
            r -= two_a;
        f.b = r;
        f.c = static_cast<std::int64_t>((static_cast<i128>(f.b) * f.b - D) / (4 * static_cast<i128>(f.a)));
    };
    normalize();
    while (f.a > f.c) {
        std::swap(f.a, f.c);
        f.b = -f.b;
        normalize();
    }
    if (f.a == f.c && f.b < 0)
        f.b = -f.b;
    return f;
}

form principal_form(std::int64_t D)
{
    std::int64_t b = D & 1;
    return {1, b, (b * b - D) / 4};
}

form compose(form const & f, form const & g)
{
    form f1 = f, f2 = g;
    if (f1.a > f2.a)
        std::swap(f1, f2);
    std::int64_t D = f1.discriminant();
    std::int64_t s = (f1.b + f2.b) / 2;
    std::int64_t n = f2.b - s;
    std::int64_t y1, d;
    if (f2.a % f1.a == 0) {
        y1 = 0;
        d = f1.a;
    } else {
        std::int64_t u, v;
        d = xgcd(f2.a, f1.a, u, v);
        y1 = u;
    }
    std::int64_t x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        std::int64_t u, v;
        d1 = xgcd(s, d, u, v);
        x2 = u;
        y2 = -v;
    }
    std::int64_t v1 = f1.a / d1, v2 = f2.a / d1;
    i128 r = (static_cast<i128>(y1) * y2 % v1 * n - static_cast<i128>(x2) * f2.c) % v1;
    if (r < 0)
        r += v1;
    i128 b3 = f2.b + 2 * static_cast<i128>(v2) * r;
    i128 a3 = static_cast<i128>(v1) * v2;
    i128 num = b3 * b3 - D;
    if (num % (4 * a3) != 0)
        throw std::logic_error("compose: non-integral third coefficient");
    // reduce b3 mod 2 a3 before narrowing to 64 bits
    i128 two_a = 2 * a3;
    i128 bb = b3 % two_a;
    if (bb < 0)
        bb += two_a;
    if (bb > a3)
        bb -= two_a;
    i128 c3 = (bb * bb - D) / (4 * a3);
    return reduce_definite({static_cast<std::int64_t>(a3), static_cast<std::int64_t>(bb),
                            static_cast<std::int64_t>(c3)});
}

form power(form const & f, std::uint64_t e)
{
    form result = principal_form(f.discriminant());
    form base = f;
    while (e) {
        if (e & 1)
            result = compose(result, base);
        base = compose(base, base);
        e >>= 1;
    }
    return result;
}

form_class_data class_group_structure(std::int64_t D, std::int64_t cap, cancel_token const * cancel)
{
    require_fundamental(D, true);
    if (-D > cap)
        throw cap_exceeded("class_group_structure: |D| exceeds cap " + std::to_string(cap));
    auto forms = reduced_forms(D, cancel);
    std::uint64_t h = forms.size();
    auto primes = arith::factor(h);
    form one = principal_form(D);

    // order of each element, then per prime l the counts N_j = #{x : x^(l^j) = 1}
    std::vector<std::uint64_t> orders;
    orders.reserve(h);
    for (std::size_t i = 0; i < forms.size(); ++i) {
        if ((i & 0xff) == 0)
            check_cancel(cancel);
        std::uint64_t ord = h;
        for (auto [l, e] : primes) {
            (void) e;
            while (ord % l == 0 && power(forms[i], ord / l) == one)
                ord /= l;
        }
        orders.push_back(ord);
    }

    // per prime l: the l-adic elementary divisor exponents, descending
    std::vector<std::uint64_t> invariants;
    std::size_t rank = 0;
    std::vector<std::pair<std::uint64_t, std::vector<unsigned>>> parts;
    for (auto [l, e] : primes) {
        std::vector<std::uint64_t> count(e + 1, 0);
        for (auto ord : orders) {
            unsigned v = 0;
            std::uint64_t o = ord;
            while (o % l == 0) {
                o /= l;
                ++v;
            }
            if (o == 1)
                for (unsigned j = v; j <= e; ++j)
                    ++count[j];
        }
        // r_j = log_l(N_j / N_{j-1}) = number of cyclic factors of order >= l^j
        std::vector<unsigned> r(e + 1, 0);
        for (unsigned j = 1; j <= e; ++j) {
            std::uint64_t ratio = count[j] / count[j - 1];
            unsigned k = 0;
            while (ratio > 1) {
                ratio /= l;
                ++k;
            }
            r[j] = k;
        }
        std::vector<unsigned> exps;
        for (unsigned i = 1; i <= r[1]; ++i) {
            unsigned ex = 0;
            for (unsigned j = 1; j <= e; ++j)
                if (r[j] >= i)
                    ++ex;
            exps.push_back(ex);
        }
        rank = std::max(rank, exps.size());
        parts.emplace_back(l, std::move(exps));
    }
    invariants.assign(rank, 1);
    for (auto const & [l, exps] : parts)
        for (std::size_t i = 0; i < exps.size(); ++i)
            invariants[rank - 1 - i] *= arith::ipow(l, exps[i]);
    std::uint64_t product = 1;
    for (auto x : invariants)
        product *= x;
    if (product != h)
        throw std::logic_error("class_group_structure: invariants do not multiply to h");

    form_class_data out;
    out.discriminant = D;
    out.h = h;
    out.structure = invariants;
    return out;
}

bool is_p_part_cyclic(std::vector<std::uint64_t> const & structure, std::uint64_t p)
{
    return std::count_if(structure.begin(), structure.end(),
                         [p](std::uint64_t x) { return x % p == 0; })
           <= 1;
}

bool is_p_part_cyclic(std::int64_t D, std::uint64_t p)
{
    return is_p_part_cyclic(*class_group_structure(D).structure, p);
}

std::vector<form> reduced_indefinite_forms(std::int64_t D, cancel_token const * cancel)
{
    if (D <= 0 || arith::is_square(D) || arith::mod_floor(D, 4) > 1)
        throw precondition_error("reduced_indefinite_forms: D must be a positive non-square discriminant");
    auto s = static_cast<std::int64_t>(arith::isqrt(static_cast<std::uint64_t>(D)));
    std::vector<form> out;
    for (std::int64_t b = (D & 1) ? 1 : 2; b <= s; b += 2) {
        check_cancel(cancel);
        std::int64_t m = (D - b * b) / 4;
        // reduced iff s - b < 2|a| <= s + b (sqrt D is irrational)
        std::int64_t lo = (s - b) / 2 + 1, hi = (s + b) / 2;
        hi = std::min(hi, m);
        for (std::int64_t a = std::max<std::int64_t>(lo, 1); a <= hi; ++a) {
            if (m % a != 0)
                continue;
            std::int64_t c = m / a;
            if (gcd3(a, b, c) != 1)
                continue;
            out.push_back({a, b, -c});
            out.push_back({-a, b, c});
        }
    }
    return out;
}

form rho(form const & f, std::int64_t D)
{
    auto s = static_cast<std::int64_t>(arith::isqrt(static_cast<std::uint64_t>(D)));
    std::int64_t two_c = 2 * (f.c < 0 ? -f.c : f.c);
    std::int64_t lo = s - two_c + 1;
    std::int64_t b = lo + arith::mod_floor(-f.b - lo, two_c);
    auto c = static_cast<std::int64_t>((static_cast<i128>(b) * b - D) / (4 * static_cast<i128>(f.c)));
    return {f.c, b, c};
}

std::uint64_t narrow_class_number(std::int64_t D, cancel_token const * cancel)
{
    require_fundamental(D, false);
    auto forms = reduced_indefinite_forms(D, cancel);
    auto key = [](form const & f) {
        return (static_cast<std::uint64_t>(f.a + (std::int64_t(1) << 31)) << 32)
               | static_cast<std::uint64_t>(f.b);
    };
    std::unordered_map<std::uint64_t, std::size_t> index;
    index.reserve(forms.size() * 2);
    for (std::size_t i = 0; i < forms.size(); ++i)
        index.emplace(key(forms[i]), i);
    std::vector<char> seen(forms.size(), 0);
    std::uint64_t cycles = 0;
    for (std::size_t i = 0; i < forms.size(); ++i) {
        if (seen[i])
            continue;
        ++cycles;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = 1;
            auto it = index.find(key(rho(forms[j], D)));
            if (it == index.end())
                throw std::logic_error("narrow_class_number: rho left the reduced set");
            j = it->second;
        }
        if (j != i)
            throw std::logic_error("narrow_class_number: rho is not a permutation");
    }
    return cycles;
}

form_class_data class_number_real(std::int64_t D, cancel_token const * cancel)
{
    require_fundamental(D, false);
    form_class_data out;
    out.discriminant = D;
    std::uint64_t hn = narrow_class_number(D, cancel);
    auto cf = units::cf_expand(arith::field_generator(D), units::default_period_cap, cancel);
    int norm = (cf.length() % 2 == 1) ? -1 : 1;
    out.h_narrow = hn;
    out.unit_norm = norm;
    out.h = norm == -1 ? hn : hn / 2;
    if (norm == 1 && hn % 2 != 0)
        throw std::logic_error("class_number_real: odd narrow class number with unit norm +1");
    return out;
}

std::optional<form_class_data> memory_store::find(std::int64_t D) const
{
    std::lock_guard<std::mutex> g(lock);
    auto it = entries.find(D);
    if (it == entries.end())
        return std::nullopt;
    return it->second;
}

void memory_store::record(form_class_data const & data)
{
    std::lock_guard<std::mutex> g(lock);
    auto & slot = entries[data.discriminant];
    if (slot.h == 0 || (data.structure && !slot.structure))
        slot = data;
}

std::size_t memory_store::size() const
{
    std::lock_guard<std::mutex> g(lock);
    return entries.size();
}

form_class_data class_data(std::int64_t D, class_number_store * store, bool want_structure,
                           cancel_token const * cancel)
{
    if (store) {
        if (auto hit = store->find(D); hit && (D > 0 || !want_structure || hit->structure))
            return *hit;
    }
    form_class_data data;
    if (D > 0) {
        data = class_number_real(D, cancel);
    } else if (want_structure) {
        data = class_group_structure(D, default_structure_cap, cancel);
    } else {
        data.discriminant = D;
        data.h = class_number_imaginary(D, cancel);
    }
    if (store)
        store->record(data);
    return data;
}

} // namespace prat::classgroup
