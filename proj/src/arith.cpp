#include "prat/arith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

#include "prat/errors.hpp"

namespace prat::arith {

namespace {

void guard(std::int64_t v, char const * what)
{
    if (v >= int64_guard || v <= -int64_guard)
        throw precondition_error(std::string(what) + ": magnitude exceeds 2^62");
}

/* Jacobi symbol (a|n) for odd n > 0, a >= 0 */
int jacobi(std::uint64_t a, std::uint64_t n)
{
    int t = 1;
    a %= n;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            std::uint64_t r = n & 7;
            if (r == 3 || r == 5)
                t = -t;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3)
            t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

} // namespace

int kronecker(std::int64_t a, std::int64_t n)
{
    guard(a, "kronecker");
    guard(n, "kronecker");
    if (n == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    int t = 1;
    if (n < 0) {
        n = -n;
        if (a < 0)
            t = -t;
    }
    unsigned v = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++v;
    }
    if (v > 0) {
        if ((a & 1) == 0)
            return 0;
        std::int64_t r = mod_floor(a, 8);
        if ((v & 1) && (r == 3 || r == 5))
            t = -t;
    }
    if (n == 1)
        return t;
    return t * jacobi(static_cast<std::uint64_t>(mod_floor(a, n)),
                      static_cast<std::uint64_t>(n));
}

int kronecker(bigint const & a, bigint const & n)
{
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m)
{
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::uint64_t reduce(std::int64_t a, std::uint64_t m)
{
    if (a >= 0)
        return static_cast<std::uint64_t>(a) % m;
    std::uint64_t r = static_cast<std::uint64_t>(-(a + 1)) % m;
    return m - 1 - r;
}

factorization squarefree_decompose(std::int64_t n)
{
    if (n == 0)
        throw precondition_error("squarefree_decompose: n = 0");
    guard(n, "squarefree_decompose");
    std::int64_t sign = n < 0 ? -1 : 1;
    std::uint64_t m = static_cast<std::uint64_t>(n < 0 ? -n : n);
    std::uint64_t s = 1, f = 1;
    for (std::uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        for (unsigned i = 0; i + 1 < e; i += 2)
            f *= p;
        if (e & 1)
            s *= p;
    }
    s *= m;
    return {n, sign * static_cast<std::int64_t>(s), static_cast<std::int64_t>(f)};
}

bool is_squarefree(std::int64_t n)
{
    return n != 0 && squarefree_decompose(n).square_root_cofactor == 1;
}

std::int64_t fundamental_discriminant(std::int64_t d)
{
    if (d == 0 || d == 1 || !is_squarefree(d))
        throw precondition_error("fundamental_discriminant: d must be squarefree and not 0 or 1");
    return mod_floor(d, 4) == 1 ? d : 4 * d;
}

bool is_fundamental_discriminant(std::int64_t D)
{
    if (D == 0 || D == 1)
        return false;
    std::int64_t r = mod_floor(D, 4);
    if (r == 1)
        return is_squarefree(D);
    if (r != 0)
        return false;
    std::int64_t d = D / 4;
    std::int64_t rd = mod_floor(d, 4);
    return (rd == 2 || rd == 3) && is_squarefree(d);
}

std::int64_t field_generator(std::int64_t D)
{
    if (!is_fundamental_discriminant(D))
        throw precondition_error("not a fundamental discriminant: " + std::to_string(D));
    return mod_floor(D, 4) == 1 ? D : D / 4;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus)
{
    if (modulus < 2)
        throw precondition_error("mod_pow: modulus must be >= 2");
    std::uint64_t r = 1;
    base %= modulus;
    while (exponent) {
        if (exponent & 1)
            r = mul_mod(r, base, modulus);
        base = mul_mod(base, base, modulus);
        exponent >>= 1;
    }
    return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m)
{
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (r != 1)
        throw precondition_error("inv_mod: not invertible");
    return reduce(t, m);
}

namespace {

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, unsigned s)
{
    std::uint64_t x = mod_pow(a % n, d, n);
    if (x == 1 || x == n - 1)
        return false;
    for (unsigned r = 1; r < s; ++r) {
        x = mul_mod(x, x, n);
        if (x == n - 1)
            return false;
    }
    return true;
}

} // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    static constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto p : small) {
        if (n == p)
            return true;
        if (n % p == 0)
            return false;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // this witness set is deterministic below 3.3e24
    for (auto a : small)
        if (miller_rabin_witness(n, a, d, s))
            return false;
    return true;
}

std::uint64_t isqrt(std::uint64_t n)
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<unsigned __int128>(r) * r > n)
        --r;
    while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

bool is_square(std::int64_t n)
{
    if (n < 0)
        return false;
    auto r = isqrt(static_cast<std::uint64_t>(n));
    return r * r == static_cast<std::uint64_t>(n);
}

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi)
{
    std::vector<std::uint64_t> out;
    if (hi < 2 || lo > hi)
        return out;
    lo = std::max<std::uint64_t>(lo, 2);
    std::uint64_t root = isqrt(hi);
    std::vector<char> base(root + 1, 1);
    std::vector<std::uint64_t> small;
    for (std::uint64_t i = 2; i <= root; ++i) {
        if (!base[i])
            continue;
        small.push_back(i);
        for (std::uint64_t j = i * i; j <= root; j += i)
            base[j] = 0;
    }
    constexpr std::uint64_t segment = 1 << 16;
    std::vector<char> seg(segment);
    for (std::uint64_t start = lo; start <= hi; start += segment) {
        std::uint64_t end = std::min(hi, start + segment - 1);
        std::fill(seg.begin(), seg.end(), 1);
        for (auto p : small) {
            std::uint64_t first = std::max(p * p, (start + p - 1) / p * p);
            for (std::uint64_t j = first; j <= end; j += p)
                seg[j - start] = 0;
        }
        for (std::uint64_t i = start; i <= end; ++i)
            if (seg[i - start])
                out.push_back(i);
        if (end == hi)
            break;
    }
    return out;
}

std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n)
{
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e)
            out.emplace_back(p, e);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

unsigned valuation(std::uint64_t n, std::uint64_t p)
{
    if (n == 0)
        throw precondition_error("valuation of zero");
    unsigned v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

unsigned valuation(bigint const & n, std::uint64_t p)
{
    if (sgn(n) == 0)
        throw precondition_error("valuation of zero");
    bigint P(static_cast<unsigned long>(p));
    bigint m = n;
    return static_cast<unsigned>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), P.get_mpz_t()));
}

std::uint64_t ipow(std::uint64_t base, unsigned e)
{
    std::uint64_t r = 1;
    while (e--)
        r *= base;
    return r;
}

std::shared_ptr<std::vector<std::uint32_t> const> spf_table(std::uint64_t n)
{
    static std::mutex lock;
    static std::shared_ptr<std::vector<std::uint32_t> const> table;
    std::lock_guard<std::mutex> guard(lock);
    if (table && table->size() > n)
        return table;
    std::uint64_t size = std::max<std::uint64_t>(n + 1, table ? 2 * table->size() : 1024);
    auto t = std::make_shared<std::vector<std::uint32_t>>(size, 0);
    auto & s = *t;
    for (std::uint64_t i = 2; i < size; ++i) {
        if (s[i])
            continue;
        for (std::uint64_t j = i; j < size; j += i)
            if (!s[j])
                s[j] = static_cast<std::uint32_t>(i);
    }
    if (size > 1)
        s[1] = 1;
    table = t;
    return table;
}

} // namespace prat::arith

namespace prat {

rational::rational(bigint const & num, bigint const & den)
{
    if (sgn(den) == 0)
        throw precondition_error("rational: zero denominator");
    q = mpq_class(num, den);
    q.canonicalize();
}

rational operator/(rational const & a, rational const & b)
{
    if (b.is_zero())
        throw precondition_error("rational: division by zero");
    return rational(mpq_class(a.q / b.q));
}

long rational::valuation(std::uint64_t p) const
{
    if (is_zero())
        throw precondition_error("valuation of zero rational");
    return static_cast<long>(arith::valuation(numerator(), p))
           - static_cast<long>(arith::valuation(denominator(), p));
}

std::uint64_t rational::residue(std::uint64_t p) const
{
    bigint P(static_cast<unsigned long>(p));
    bigint den = denominator() % P;
    if (sgn(den) == 0)
        throw precondition_error("rational::residue: p divides the denominator");
    bigint num = numerator() % P;
    if (sgn(num) < 0)
        num += P;
    auto n = static_cast<std::uint64_t>(num.get_ui());
    auto d = static_cast<std::uint64_t>(den.get_ui());
    return arith::mul_mod(n, arith::inv_mod(d, p), p);
}

} // namespace prat
