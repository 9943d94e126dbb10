#include "prat/units.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include "prat/classgroup.hpp"
#include "prat/errors.hpp"

namespace prat {

std::string to_string(local_power_method m)
{
    switch (m) {
    case local_power_method::fibonacci: return "fibonacci";
    case local_power_method::direct_power: return "direct_power";
    case local_power_method::ramified_val: return "ramified_val";
    case local_power_method::hensel_bruteforce: return "hensel_bruteforce";
    }
    return "unknown";
}

namespace units {

namespace {

void require_real_squarefree(std::int64_t d)
{
    if (d <= 1 || !arith::is_squarefree(d))
        throw precondition_error("expected a squarefree d > 1, got " + std::to_string(d));
}

/* State of the PQa recurrence: complete quotient (P + sqrt d) / Q. */
struct pq_state
{
    std::int64_t P, Q;
    bool operator==(pq_state const &) const = default;
};

/* Walks the expansion; calls step(a_k) for a_0 .. a_l (the full first
 * period included), returns the period length l. */
template <typename Step>
std::size_t walk(std::int64_t d, std::size_t cap, cancel_token const * cancel, Step && step)
{
    auto s = static_cast<std::int64_t>(arith::isqrt(static_cast<std::uint64_t>(d)));
    bool half = arith::mod_floor(d, 4) == 1;
    pq_state st{half ? 1 : 0, half ? 2 : 1};
    std::int64_t a = (st.P + s) / st.Q;
    step(a);
    st = {a * st.Q - st.P, (d - (a * st.Q - st.P) * (a * st.Q - st.P)) / st.Q};
    pq_state const first = st;
    std::size_t k = 0;
    for (;;) {
        if ((k & 0xfff) == 0)
            check_cancel(cancel);
        if (k >= cap)
            throw cap_exceeded("continued fraction period exceeds cap " + std::to_string(cap));
        a = (st.P + s) / st.Q;
        step(a);
        ++k;
        std::int64_t P = a * st.Q - st.P;
        std::int64_t Q = (d - P * P) / st.Q;
        st = {P, Q};
        if (st == first)
            return k;
    }
}

/* element u + v sqrt d of (Z/m)[sqrt d], m odd */
struct qelem
{
    std::uint64_t u, v;
    bool operator==(qelem const &) const = default;
};

struct qring
{
    std::uint64_t m, d;

    qelem mul(qelem x, qelem y) const
    {
        using arith::mul_mod;
        std::uint64_t u = (mul_mod(x.u, y.u, m) + mul_mod(d, mul_mod(x.v, y.v, m), m)) % m;
        std::uint64_t v = (mul_mod(x.u, y.v, m) + mul_mod(x.v, y.u, m)) % m;
        return {u, v};
    }

    qelem pow(qelem x, std::uint64_t e) const
    {
        qelem r{1 % m, 0};
        while (e) {
            if (e & 1)
                r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }
};

struct bigelem
{
    bigint u, v;
};

struct bigring
{
    bigint m, d;

    bigelem mul(bigelem const & x, bigelem const & y) const
    {
        bigint u = (x.u * y.u + d * x.v * y.v) % m;
        bigint v = (x.u * y.v + x.v * y.u) % m;
        return {u, v};
    }

    bigelem pow(bigelem x, bigint e) const
    {
        bigelem r{1, 0};
        while (sgn(e) > 0) {
            if (mpz_odd_p(e.get_mpz_t()))
                r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }
};

/* eps mod m as an element of (Z/m)[sqrt d], m odd */
bigelem unit_element(unit_residue const & r, bigint const & m)
{
    bigint x = r.x % m, y = r.y % m;
    if (r.sigma == 2) {
        bigint inv2 = (m + 1) / 2;
        x = x * inv2 % m;
        y = y * inv2 % m;
    }
    return {x, y};
}

qelem to_small(bigelem const & e)
{
    return {e.u.get_ui(), e.v.get_ui()};
}

/* v_p of a residue mod p^k; returns k when the residue is 0 (lower bound) */
unsigned residue_valuation(bigint r, std::uint64_t p, unsigned k)
{
    if (sgn(r) == 0)
        return k;
    return std::min(arith::valuation(r, p), k);
}

} // namespace

continued_fraction cf_expand(std::int64_t d, std::size_t period_cap, cancel_token const * cancel)
{
    require_real_squarefree(d);
    continued_fraction cf{d, arith::mod_floor(d, 4) == 1, 0, {}};
    bool first = true;
    walk(d, period_cap, cancel, [&](std::int64_t a) {
        if (first) {
            cf.a0 = a;
            first = false;
        } else {
            cf.period.push_back(a);
        }
    });
    return cf;
}

exact_unit fundamental_unit_exact(std::int64_t d, std::size_t period_cap, cancel_token const * cancel)
{
    require_real_squarefree(d);
    // p_k, q_k trail the quotients by one: after the walk they hold the
    // convergent built from a_0 .. a_{l-1}
    bigint p_prev = 0, p_cur = 1, q_prev = 1, q_cur = 0;
    bigint p_last, q_last;
    std::size_t steps = 0;
    std::size_t l = walk(d, period_cap, cancel, [&](std::int64_t a) {
        p_last = p_cur;
        q_last = q_cur;
        bigint p_next = a * p_cur + p_prev;
        bigint q_next = a * q_cur + q_prev;
        p_prev = p_cur;
        p_cur = p_next;
        q_prev = q_cur;
        q_cur = q_next;
        ++steps;
    });
    (void) steps;
    // the walk also fed a_l; the unit comes from the convergent before it
    bigint const & p = p_last;
    bigint const & q = q_last;
    exact_unit u;
    u.norm = (l % 2 == 1) ? -1 : 1;
    if (arith::mod_floor(d, 4) == 1) {
        u.x = 2 * p - q;
        u.y = q;
        u.sigma = 2;
        if (mpz_even_p(u.x.get_mpz_t()) && mpz_even_p(u.y.get_mpz_t())) {
            u.x /= 2;
            u.y /= 2;
            u.sigma = 1;
        }
    } else {
        u.x = p;
        u.y = q;
        u.sigma = 1;
    }
    bigint lhs = u.x * u.x - bigint(static_cast<long>(d)) * u.y * u.y;
    if (lhs != u.norm * u.sigma * u.sigma)
        throw std::logic_error("fundamental_unit_exact: norm identity failed for d = " + std::to_string(d));
    return u;
}

unit_residue fundamental_unit_residue(std::int64_t d, bigint const & m, cancel_token const * cancel)
{
    require_real_squarefree(d);
    if (m < 2)
        throw precondition_error("fundamental_unit_residue: modulus must be >= 2");
    bool half = arith::mod_floor(d, 4) == 1;
    bigint M = half ? bigint(2 * m) : m;
    bigint p_prev = 0, p_cur = 1, q_prev = 1, q_cur = 0;
    bigint p_last, q_last;
    std::size_t l = walk(d, default_period_cap, cancel, [&](std::int64_t a) {
        p_last = p_cur;
        q_last = q_cur;
        bigint p_next = (a * p_cur + p_prev) % M;
        bigint q_next = (a * q_cur + q_prev) % M;
        p_prev = p_cur;
        p_cur = p_next;
        q_prev = q_cur;
        q_cur = q_next;
    });
    unit_residue r;
    r.d = d;
    r.modulus = m;
    r.norm = (l % 2 == 1) ? -1 : 1;
    if (half) {
        bigint x = (2 * p_last - q_last) % M;
        if (sgn(x) < 0)
            x += M;
        bigint y = q_last % M;
        if (mpz_even_p(x.get_mpz_t()) && mpz_even_p(y.get_mpz_t())) {
            r.sigma = 1;
            r.x = (x / 2) % m;
            r.y = (y / 2) % m;
            r.trace_mod = 2 * r.x % m;
        } else {
            r.sigma = 2;
            r.x = x;
            r.y = y;
            r.trace_mod = x % m;
        }
    } else {
        r.sigma = 1;
        r.x = p_last % m;
        r.y = q_last % m;
        r.trace_mod = 2 * r.x % m;
    }
    return r;
}

std::uint64_t lucas_u(std::uint64_t T, std::int64_t N, std::uint64_t n, std::uint64_t m)
{
    using arith::mul_mod;
    using mat = std::array<std::uint64_t, 4>;
    auto mul = [m](mat const & a, mat const & b) {
        return mat{(mul_mod(a[0], b[0], m) + mul_mod(a[1], b[2], m)) % m,
                   (mul_mod(a[0], b[1], m) + mul_mod(a[1], b[3], m)) % m,
                   (mul_mod(a[2], b[0], m) + mul_mod(a[3], b[2], m)) % m,
                   (mul_mod(a[2], b[1], m) + mul_mod(a[3], b[3], m)) % m};
    };
    mat step{T % m, arith::reduce(-N, m), 1 % m, 0};
    mat acc{1 % m, 0, 0, 1 % m};
    while (n) {
        if (n & 1)
            acc = mul(acc, step);
        step = mul(step, step);
        n >>= 1;
    }
    // [U_{n+1}, U_n]^T = step^n [U_1, U_0]^T
    return acc[2];
}

namespace {

void require_odd_real(quadratic_field const & F, std::uint64_t p)
{
    if (!F.is_real)
        throw precondition_error("expected a real quadratic field");
    if (p < 3 || !arith::is_prime(p))
        throw precondition_error("expected an odd prime p");
    if (p > (std::uint64_t(1) << 30))
        throw precondition_error("p too large for the residue ring (p^2 must fit 62 bits)");
}

} // namespace

std::uint64_t generalized_fibonacci(quadratic_field const & F, std::uint64_t p, cancel_token const * cancel)
{
    require_odd_real(F, p);
    auto sp = fields::splitting(F, p);
    if (sp.ramified())
        throw precondition_error("generalized_fibonacci: p ramifies; use the ramified criterion");
    std::uint64_t m = p * p;
    auto r = fundamental_unit_residue(F.d, bigint(static_cast<unsigned long>(m)), cancel);
    return lucas_u(r.trace_mod.get_ui(), r.norm, sp.q, m);
}

local_power_result local_pth_power_test(quadratic_field const & F, std::uint64_t p, cancel_token const * cancel)
{
    require_odd_real(F, p);
    auto sp = fields::splitting(F, p);
    if (p == 3 && sp.ramified() && arith::mod_floor(F.d, 9) == 6)
        throw precondition_error("local_pth_power_test: d == -3 (mod 9) at p = 3 has no local cube criterion");

    std::uint64_t m = p * p;
    bigint M(static_cast<unsigned long>(m));
    auto r = fundamental_unit_residue(F.d, M, cancel);
    qring R{m, arith::reduce(F.d, m)};
    qelem eps = to_small(unit_element(r, M));
    qelem one{1, 0};

    local_power_result out{};
    if (!sp.ramified()) {
        qelem w = R.pow(eps, sp.q - 1);
        out.is_pth_power = w == one;
        if (out.is_pth_power) {
            out.pi_valuation = 2;
            out.at_least = true;
        } else {
            out.pi_valuation = ((w.u + m - 1) % p == 0 && w.v % p == 0) ? 1 : 0;
            out.at_least = false;
        }
        std::uint64_t fq = lucas_u(r.trace_mod.get_ui(), r.norm, sp.q, m);
        out.fibonacci_residue = fq;
        // F_q == 1 + p t Tr(eps) / (eps - conj eps): the residue decides
        // only when p divides neither the trace nor y
        bool decisive = r.trace_mod.get_ui() % p != 0 && eps.v % p != 0;
        if (decisive) {
            out.method = local_power_method::fibonacci;
            if ((fq == 1) != out.is_pth_power)
                throw std::logic_error("local_pth_power_test: Fibonacci residue disagrees with direct power");
        } else {
            out.method = local_power_method::direct_power;
        }
        return out;
    }

    // ramified: pi^2 ~ p, the valuation of a + b sqrt d is min(2 v(a), 2 v(b) + 1)
    qelem w = R.pow(eps, p - 1);
    bigint a = bigint(static_cast<unsigned long>((w.u + m - 1) % m));
    bigint b = bigint(static_cast<unsigned long>(w.v));
    unsigned va = residue_valuation(a, p, 2), vb = residue_valuation(b, p, 2);
    unsigned ea = 2 * va, eb = 2 * vb + 1;
    out.pi_valuation = std::min(ea, eb);
    out.at_least = (out.pi_valuation == ea && va == 2) || (out.pi_valuation == eb && vb == 2);

    if (p >= 5) {
        out.method = local_power_method::ramified_val;
        out.is_pth_power = out.pi_valuation >= 3;
        return out;
    }

    // p = 3: a root of x^3 = eps mod pi^5 lifts (v(3 x^2) = 2). In the
    // basis {1, sqrt d}, pi^5 divides a + b sqrt d iff 27 | a and 9 | b.
    qring R27{27, arith::reduce(F.d, 27)};
    auto e27 = to_small(unit_element(fundamental_unit_residue(F.d, bigint(27), cancel), bigint(27)));
    out.method = local_power_method::hensel_bruteforce;
    out.is_pth_power = false;
    for (std::uint64_t u = 0; u < 27 && !out.is_pth_power; ++u)
        for (std::uint64_t v = 0; v < 27; ++v) {
            qelem c = R27.pow({u, v}, 3);
            if (c.u == e27.u && c.v % 9 == e27.v % 9) {
                out.is_pth_power = true;
                break;
            }
        }
    return out;
}

unsigned torsion_valuation_real_quadratic(quadratic_field const & F, std::uint64_t p,
                                          classgroup::class_number_store * store,
                                          cancel_token const * cancel)
{
    require_odd_real(F, p);
    auto sp = fields::splitting(F, p);
    auto data = classgroup::class_data(F.discriminant, store, false, cancel);
    unsigned vh = arith::valuation(data.h, p);
    bigint P(static_cast<unsigned long>(p));

    for (unsigned K : {3u, 6u, 12u}) {
        bigint M;
        mpz_pow_ui(M.get_mpz_t(), P.get_mpz_t(), K);
        auto r = fundamental_unit_residue(F.d, M, cancel);
        bigint dm = bigint(static_cast<long>(F.d)) % M;
        bigring R{M, dm};
        bigelem w = R.pow(unit_element(r, M), bigint(static_cast<unsigned long>(sp.q - 1)));
        bigint a = (w.u - 1) % M;
        if (sgn(a) < 0)
            a += M;
        if (!sp.ramified()) {
            unsigned v = std::min(residue_valuation(a, p, K), residue_valuation(w.v, p, K));
            if (v < K) {
                if (v == 0)
                    throw std::logic_error("torsion_valuation: eps^(q-1) is not a principal unit");
                return vh + v - 1;
            }
            continue;
        }
        // log is an isometry once v_pi(z - 1) > 2/(p-1); raise to p until then
        bigelem z = w;
        for (unsigned k = 0;; ++k) {
            bigint za = (z.u - 1) % M;
            if (sgn(za) < 0)
                za += M;
            unsigned va = residue_valuation(za, p, K), vb = residue_valuation(z.v, p, K);
            unsigned ea = 2 * va, eb = 2 * vb + 1;
            unsigned vpi = std::min(ea, eb);
            bool bounded = (vpi == ea && va == K) || (vpi == eb && vb == K);
            if (bounded)
                break;
            if (vpi * (p - 1) > 2) {
                if (vpi % 2 == 0)
                    throw std::logic_error("torsion_valuation: even valuation for a norm-one unit");
                if ((vpi - 1) / 2 < k)
                    throw std::logic_error("torsion_valuation: negative torsion valuation");
                return vh + (vpi - 1) / 2 - k;
            }
            z = R.pow(z, P);
        }
    }
    throw cap_exceeded("torsion_valuation_real_quadratic: valuation undetermined at precision p^12");
}

} // namespace units
} // namespace prat
