#ifndef PRAT_ARITH_HPP
#define PRAT_ARITH_HPP

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace prat {

using bigint = mpz_class;

namespace arith {

/* Bound on the magnitude of int64 inputs accepted by the fixed-width
 * routines; keeps 4*d, b*b - D and similar products clear of overflow. */
constexpr std::int64_t int64_guard = std::int64_t(1) << 62;

/* Kronecker symbol (a|n), full extension: n may be 0, negative or even.
 * (a|0) = 1 iff a = +-1; (a|-1) = sign of a. */
int kronecker(std::int64_t a, std::int64_t n);
int kronecker(bigint const & a, bigint const & n);

struct factorization
{
    std::int64_t input;
    std::int64_t squarefree_part;
    std::int64_t square_root_cofactor;
};

/* n = s * f^2 with s squarefree, by trial division. n != 0. */
factorization squarefree_decompose(std::int64_t n);

inline std::int64_t squarefree_part(std::int64_t n)
{
    return squarefree_decompose(n).squarefree_part;
}

bool is_squarefree(std::int64_t n);

/* d if d == 1 (mod 4), else 4d. d squarefree, d not in {0, 1}. */
std::int64_t fundamental_discriminant(std::int64_t d);

bool is_fundamental_discriminant(std::int64_t D);

/* Squarefree d with fundamental_discriminant(d) == D. */
std::int64_t field_generator(std::int64_t D);

/* Deterministic for every 64-bit input (Miller-Rabin, fixed witnesses). */
bool is_prime(std::uint64_t n);

/* All primes in [lo, hi], ascending, by a segmented sieve. */
std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi);

/* Distinct prime factors with multiplicity, ascending (trial division). */
std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus);
/* throws precondition_error if gcd(a, m) != 1 */
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);
/* canonical residue of a signed value in [0, m) */
std::uint64_t reduce(std::int64_t a, std::uint64_t m);
std::int64_t mod_floor(std::int64_t a, std::int64_t m);

std::uint64_t isqrt(std::uint64_t n);
bool is_square(std::int64_t n);

unsigned valuation(std::uint64_t n, std::uint64_t p);
unsigned valuation(bigint const & n, std::uint64_t p);

std::uint64_t ipow(std::uint64_t base, unsigned e);

/* Smallest-prime-factor table over [0, n]; shared and grown on demand. */
std::shared_ptr<std::vector<std::uint32_t> const> spf_table(std::uint64_t n);

} // namespace arith

/* Exact rational number in lowest terms with positive denominator. */
class rational
{
    mpq_class q;

  public:
    rational() : q(0) {}
    rational(long n) : q(n) {}
    rational(bigint const & n) : q(n) {}
    rational(bigint const & num, bigint const & den);
    explicit rational(mpq_class v) : q(std::move(v)) { q.canonicalize(); }

    bigint numerator() const { return q.get_num(); }
    bigint denominator() const { return q.get_den(); }
    mpq_class const & value() const { return q; }
    bool is_zero() const { return sgn(q) == 0; }

    /* p-adic valuation; the zero rational has no valuation (throws). */
    long valuation(std::uint64_t p) const;
    /* residue mod p; requires p not dividing the denominator */
    std::uint64_t residue(std::uint64_t p) const;
    std::string str() const { return q.get_str(); }

    friend rational operator+(rational const & a, rational const & b) { return rational(mpq_class(a.q + b.q)); }
    friend rational operator-(rational const & a, rational const & b) { return rational(mpq_class(a.q - b.q)); }
    friend rational operator*(rational const & a, rational const & b) { return rational(mpq_class(a.q * b.q)); }
    friend rational operator/(rational const & a, rational const & b);
    rational operator-() const { return rational(mpq_class(-q)); }
    rational & operator+=(rational const & o) { q += o.q; return *this; }
    rational & operator*=(rational const & o) { q *= o.q; return *this; }

    friend bool operator==(rational const & a, rational const & b) { return a.q == b.q; }
    friend bool operator!=(rational const & a, rational const & b) { return a.q != b.q; }
    friend std::ostream & operator<<(std::ostream & o, rational const & r) { return o << r.str(); }
};

} // namespace prat

#endif
