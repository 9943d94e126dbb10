#include "prat/lseries.hpp"

#include <mutex>
#include <string>

#include "prat/errors.hpp"

namespace prat::lseries {

namespace {

void require_odd_prime(std::uint64_t p)
{
    if (p < 3 || !arith::is_prime(p))
        throw precondition_error("expected an odd prime, got " + std::to_string(p));
}

void require_character(std::int64_t D)
{
    if (D == 1 || !arith::is_fundamental_discriminant(D))
        throw precondition_error("expected a fundamental discriminant != 1, got " + std::to_string(D));
}

std::uint64_t abs64(std::int64_t x)
{
    return x < 0 ? static_cast<std::uint64_t>(-x) : static_cast<std::uint64_t>(x);
}

/* binomials C(n, k) for k <= n, as big integers */
std::vector<bigint> binomial_row(unsigned n)
{
    std::vector<bigint> row(n + 1);
    mpz_class c = 1;
    for (unsigned k = 0; k <= n; ++k) {
        row[k] = c;
        c = c * (n - k) / (k + 1);
    }
    return row;
}

} // namespace

bernoulli_table bernoulli_mod_p(std::uint64_t p, unsigned kmax)
{
    require_odd_prime(p);
    if (kmax + 1 >= p)
        throw precondition_error("bernoulli_mod_p: index must stay below p - 1");
    bernoulli_table t{p, std::vector<std::uint64_t>(kmax + 1)};
    // row holds C(k+1, .) mod p
    std::vector<std::uint64_t> row{1, 1};
    t.values[0] = 1;
    for (unsigned k = 1; k <= kmax; ++k) {
        std::vector<std::uint64_t> next(k + 2, 1);
        for (unsigned j = 1; j <= k; ++j)
            next[j] = (row[j - 1] + row[j]) % p;
        row = std::move(next);
        std::uint64_t s = 0;
        for (unsigned j = 0; j < k; ++j)
            s = (s + arith::mul_mod(row[j], t.values[j], p)) % p;
        t.values[k] = arith::mul_mod((p - s) % p, arith::inv_mod(k + 1, p), p);
    }
    return t;
}

rational bernoulli_number(unsigned n)
{
    static std::mutex lock;
    static std::vector<rational> cache{rational(1)};
    std::lock_guard<std::mutex> g(lock);
    while (cache.size() <= n) {
        unsigned k = cache.size();
        auto row = binomial_row(k + 1);
        mpq_class s = 0;
        for (unsigned j = 0; j < k; ++j)
            s += mpq_class(row[j]) * cache[j].value();
        cache.push_back(rational(mpq_class(-s / (k + 1))));
    }
    return cache[n];
}

bool parity_matches(std::int64_t D, unsigned n)
{
    bool odd_character = D < 0;
    return odd_character == (n % 2 == 1);
}

rational gen_bernoulli_exact(std::int64_t D, unsigned n, std::int64_t conductor_cap)
{
    require_character(D);
    if (n < 1 || n > max_exact_index)
        throw precondition_error("gen_bernoulli_exact: index out of range 1.." + std::to_string(max_exact_index));
    if (abs64(D) > static_cast<std::uint64_t>(conductor_cap))
        throw cap_exceeded("gen_bernoulli_exact: conductor above cap " + std::to_string(conductor_cap));
    if (!parity_matches(D, n))
        return rational(0);
    std::uint64_t f = abs64(D);
    // S_j = sum_a chi(a) a^j, j = 0..n
    std::vector<bigint> S(n + 1, 0);
    bigint pw;
    for (std::uint64_t a = 1; a <= f; ++a) {
        int chi = arith::kronecker(D, static_cast<std::int64_t>(a));
        if (chi == 0)
            continue;
        pw = 1;
        for (unsigned j = 0; j <= n; ++j) {
            if (chi > 0)
                S[j] += pw;
            else
                S[j] -= pw;
            pw *= static_cast<unsigned long>(a);
        }
    }
    // B_{n,chi} = sum_k C(n,k) B_k f^(k-1) S_{n-k}
    auto row = binomial_row(n);
    mpq_class total = 0;
    bigint fk = 1; // f^k
    for (unsigned k = 0; k <= n; ++k) {
        mpq_class term = mpq_class(row[k] * S[n - k]) * bernoulli_number(k).value();
        term *= mpq_class(fk, bigint(static_cast<unsigned long>(f)));
        total += term;
        fk *= static_cast<unsigned long>(f);
    }
    return rational(total);
}

std::uint64_t gen_bernoulli_mod_p(std::int64_t D, unsigned n, std::uint64_t p)
{
    require_character(D);
    require_odd_prime(p);
    if (n < 1)
        throw precondition_error("gen_bernoulli_mod_p: n must be >= 1");
    std::uint64_t f = abs64(D);
    if (f % p == 0)
        throw precondition_error("gen_bernoulli_mod_p: p divides the conductor");
    if (!parity_matches(D, n))
        return 0;

    if (n + 1 < p) {
        // every B_k, k <= n, is p-integral: work mod p throughout
        auto B = bernoulli_mod_p(p, n);
        std::vector<std::uint64_t> S(n + 1, 0);
        for (std::uint64_t a = 1; a <= f; ++a) {
            int chi = arith::kronecker(D, static_cast<std::int64_t>(a));
            if (chi == 0)
                continue;
            std::uint64_t ar = a % p, pw = 1;
            for (unsigned j = 0; j <= n; ++j) {
                S[j] = (S[j] + (chi > 0 ? pw : p - pw)) % p;
                pw = arith::mul_mod(pw, ar, p);
            }
        }
        std::uint64_t fr = f % p, total = 0, fk = arith::inv_mod(fr, p);
        std::uint64_t c = 1; // C(n, k) mod p, n < p
        for (unsigned k = 0; k <= n; ++k) {
            std::uint64_t t = arith::mul_mod(arith::mul_mod(c, B.values[k], p),
                                             arith::mul_mod(fk, S[n - k], p), p);
            total = (total + t) % p;
            fk = arith::mul_mod(fk, fr, p);
            if (k < n)
                c = arith::mul_mod(arith::mul_mod(c, n - k, p), arith::inv_mod(k + 1, p), p);
        }
        return total;
    }

    // larger n: p B_k is p-integral (squarefree denominators), so
    // p B_{n,chi} is computed mod p^2 and must come out divisible by p
    std::uint64_t m = p * p;
    std::vector<std::uint64_t> S(n + 1, 0);
    for (std::uint64_t a = 1; a <= f; ++a) {
        int chi = arith::kronecker(D, static_cast<std::int64_t>(a));
        if (chi == 0)
            continue;
        std::uint64_t ar = a % m, pw = 1;
        for (unsigned j = 0; j <= n; ++j) {
            S[j] = (S[j] + (chi > 0 ? pw : m - pw)) % m;
            pw = arith::mul_mod(pw, ar, m);
        }
    }
    auto row = binomial_row(n);
    std::uint64_t fr = f % m, total = 0, fk = arith::inv_mod(fr, m);
    bigint P(static_cast<unsigned long>(p)), M(static_cast<unsigned long>(m));
    for (unsigned k = 0; k <= n; ++k) {
        rational pb = rational(P) * bernoulli_number(k);
        if (pb.denominator() % P == 0)
            throw std::logic_error("gen_bernoulli_mod_p: p^2 in a Bernoulli denominator");
        bigint r = pb.numerator() % M;
        bigint dinv;
        bigint den = pb.denominator() % M;
        mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), M.get_mpz_t());
        r = (r * dinv) % M;
        if (sgn(r) < 0)
            r += M;
        bigint c = row[k] % M;
        std::uint64_t t = arith::mul_mod(arith::mul_mod(c.get_ui(), r.get_ui(), m),
                                         arith::mul_mod(fk, S[n - k], m), m);
        total = (total + t) % m;
        fk = arith::mul_mod(fk, fr, m);
    }
    if (total % p != 0)
        throw std::logic_error("gen_bernoulli_mod_p: value is not p-integral");
    return total / p;
}

bool lp_unit_criterion(quadratic_field const & F, std::uint64_t p)
{
    if (!F.is_real)
        throw precondition_error("lp_unit_criterion: F must be real");
    if (p < 5 || !arith::is_prime(p))
        throw precondition_error("lp_unit_criterion: p must be a prime >= 5");
    auto P = static_cast<std::int64_t>(p);
    if (F.d % P != 0)
        throw precondition_error("lp_unit_criterion: p must divide d");
    std::int64_t rest = F.d / P;
    if ((p - 1) / 2 % 2 == 1)
        rest = -rest;
    if (rest == 1)
        throw precondition_error("lp_unit_criterion: K = Q for d = p, p == 1 (mod 4)");
    auto K = fields::make_quadratic(rest);
    unsigned n = static_cast<unsigned>((p - 1) / 2);
    return gen_bernoulli_mod_p(K.discriminant, n, p) != 0;
}

std::uint64_t w2_p_part(quadratic_field const & F, std::uint64_t p)
{
    require_odd_prime(p);
    if (p == 3)
        return 3;
    if (p == 5 && F.d == 5)
        return 5;
    return 1;
}

rational zeta_minus_one(quadratic_field const & F)
{
    if (!F.is_real)
        throw precondition_error("zeta_minus_one: F must be real");
    return gen_bernoulli_exact(F.discriminant, 2) / rational(24);
}

bool is_p_regular_real_quadratic(quadratic_field const & F, std::uint64_t p)
{
    if (!F.is_real)
        throw precondition_error("is_p_regular_real_quadratic: F must be real");
    if (p < 5 || !arith::is_prime(p))
        throw precondition_error("is_p_regular_real_quadratic: p must be a prime >= 5");
    rational B = gen_bernoulli_exact(F.discriminant, 2);
    long v = static_cast<long>(arith::valuation(w2_p_part(F, p), p)) + B.valuation(p);
    return v == 0;
}

bool is_p_regular_multiquadratic(multiquadratic_field const & M, std::uint64_t p)
{
    for (auto g : M.generators)
        if (g < 0)
            throw precondition_error("is_p_regular_multiquadratic: generators must be positive");
    for (auto d : M.subfield_ds)
        if (!is_p_regular_real_quadratic(fields::make_quadratic(d), p))
            return false;
    return true;
}

} // namespace prat::lseries
