#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "prat/arith.hpp"
#include "prat/errors.hpp"

using namespace prat;

TEST_SUITE("arith")
{
TEST_CASE("kronecker fixtures")
{
    CHECK(arith::kronecker(12345, 1) == 1);
    CHECK(arith::kronecker(-7, 1) == 1);
    CHECK(arith::kronecker(-23, 5) == -1);
    CHECK(arith::kronecker(-8, 3) == 1);
    CHECK(arith::kronecker(1, 0) == 1);
    CHECK(arith::kronecker(-1, 0) == 1);
    CHECK(arith::kronecker(2, 0) == 0);
    CHECK(arith::kronecker(-5, -1) == -1);
    CHECK(arith::kronecker(5, -1) == 1);
    CHECK(arith::kronecker(5, 2) == -1);
    CHECK(arith::kronecker(17, 2) == 1);
    CHECK(arith::kronecker(6, 2) == 0);
}

TEST_CASE("kronecker matches the factor-and-list-squares oracle")
{
    for (std::int64_t a = -60; a <= 60; ++a)
        for (std::int64_t n = -60; n <= 60; ++n) {
            INFO("a = " << a << ", n = " << n);
            REQUIRE(arith::kronecker(a, n) == oracle::kronecker_naive(a, n));
        }
}

TEST_CASE("kronecker bigint overload agrees")
{
    for (std::int64_t a = -30; a <= 30; ++a)
        for (std::int64_t n = -30; n <= 30; ++n)
            REQUIRE(arith::kronecker(bigint(static_cast<long>(a)), bigint(static_cast<long>(n)))
                    == arith::kronecker(a, n));
}

TEST_CASE("kronecker is multiplicative in both arguments")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> dist(-100000, 100000);
    for (int i = 0; i < 10000; ++i) {
        std::int64_t a = dist(rng), m = dist(rng), n = dist(rng);
        REQUIRE(arith::kronecker(a, m * n) == arith::kronecker(a, m) * arith::kronecker(a, n));
        REQUIRE(arith::kronecker(a * m, n) == arith::kronecker(a, n) * arith::kronecker(m, n));
    }
}

TEST_CASE("kronecker at odd primes is Euler's criterion")
{
    for (auto p : arith::primes_in(3, 400))
        for (std::int64_t a = -50; a <= 50; ++a) {
            if (a % static_cast<std::int64_t>(p) == 0)
                continue;
            std::uint64_t e = arith::mod_pow(arith::reduce(a, p), (p - 1) / 2, p);
            int expect = e == 1 ? 1 : -1;
            REQUIRE(arith::kronecker(a, static_cast<std::int64_t>(p)) == expect);
        }
}

TEST_CASE("squarefree decomposition")
{
    auto f = arith::squarefree_decompose(12);
    CHECK(f.squarefree_part == 3);
    CHECK(f.square_root_cofactor == 2);
    f = arith::squarefree_decompose(-75);
    CHECK(f.squarefree_part == -3);
    CHECK(f.square_root_cofactor == 5);
    f = arith::squarefree_decompose(7 * 9);
    CHECK(f.squarefree_part == 7);
    CHECK(f.square_root_cofactor == 3);
    CHECK_THROWS_AS(arith::squarefree_decompose(0), precondition_error);

    for (std::int64_t n = -100000; n <= 100000; ++n) {
        if (n == 0)
            continue;
        auto g = arith::squarefree_decompose(n);
        REQUIRE(g.squarefree_part * g.square_root_cofactor * g.square_root_cofactor == n);
        REQUIRE(g.square_root_cofactor > 0);
        REQUIRE(arith::is_squarefree(g.squarefree_part));
    }
}

TEST_CASE("fundamental discriminants")
{
    CHECK(arith::fundamental_discriminant(5) == 5);
    CHECK(arith::fundamental_discriminant(15) == 60);
    CHECK(arith::fundamental_discriminant(-23) == -23);
    CHECK(arith::fundamental_discriminant(-1) == -4);
    CHECK(arith::fundamental_discriminant(2) == 8);
    CHECK_THROWS_AS(arith::fundamental_discriminant(1), precondition_error);
    CHECK_THROWS_AS(arith::fundamental_discriminant(12), precondition_error);
    CHECK_THROWS_AS(arith::fundamental_discriminant(0), precondition_error);

    for (std::int64_t d = -3000; d <= 3000; ++d) {
        if (d == 0 || d == 1 || !arith::is_squarefree(d))
            continue;
        auto D = arith::fundamental_discriminant(d);
        REQUIRE(arith::mod_floor(D, 4) <= 1);
        REQUIRE(arith::is_fundamental_discriminant(D));
        REQUIRE(arith::field_generator(D) == d);
    }
    CHECK_FALSE(arith::is_fundamental_discriminant(12 * 4));
    CHECK_FALSE(arith::is_fundamental_discriminant(-3 * 4));
}

TEST_CASE("primality")
{
    CHECK(arith::is_prime(2));
    CHECK(arith::is_prime(192699943));
    CHECK_FALSE(arith::is_prime(1));
    CHECK_FALSE(arith::is_prime(0));
    CHECK_FALSE(arith::is_prime(3215031751ULL)); // strong pseudoprime to 2, 3, 5, 7
    CHECK(arith::is_prime(18446744073709551557ULL));
    CHECK_FALSE(arith::is_prime(18446744073709551557ULL - 2));
    for (std::uint64_t n = 0; n < 20000; ++n)
        REQUIRE(arith::is_prime(n) == oracle::is_prime_naive(n));

    CHECK(arith::primes_in(3, 20) == std::vector<std::uint64_t>{3, 5, 7, 11, 13, 17, 19});
    std::vector<std::uint64_t> naive;
    for (std::uint64_t n = 100000; n <= 300000; ++n)
        if (oracle::is_prime_naive(n))
            naive.push_back(n);
    CHECK(arith::primes_in(100000, 300000) == naive);
}

TEST_CASE("modular powers")
{
    CHECK(arith::mod_pow(2, 10, 1000) == 24);
    CHECK(arith::mod_pow(3, 0, 7) == 1);
    std::uint64_t r = 1;
    for (int i = 0; i < 48; ++i)
        r = r * 5 % 49;
    CHECK(arith::mod_pow(5, 48, 49) == r);
    CHECK_THROWS_AS(arith::mod_pow(5, 3, 1), precondition_error);
    CHECK(arith::inv_mod(3, 7) == 5);
    CHECK_THROWS_AS(arith::inv_mod(6, 9), precondition_error);
    CHECK(arith::mul_mod(0xffffffffffffffffULL, 0xffffffffffffffffULL, 0xfffffffffffffffbULL) == 16);
}

TEST_CASE("valuations and roots")
{
    CHECK(arith::valuation(std::uint64_t(250), 5) == 3);
    CHECK(arith::valuation(bigint("1000000000000000000000000000000"), 10) == 30);
    CHECK(arith::isqrt(99999999) == 9999);
    CHECK(arith::isqrt(100000000) == 10000);
    CHECK(arith::is_square(49));
    CHECK_FALSE(arith::is_square(-49));
}

TEST_CASE("exact rationals")
{
    rational a(bigint(6), bigint(-4));
    CHECK(a.numerator() == -3);
    CHECK(a.denominator() == 2);
    CHECK(rational(bigint(4), bigint(5)).valuation(5) == -1);
    CHECK(rational(bigint(50), bigint(3)).valuation(5) == 2);
    CHECK(rational(bigint(4), bigint(5)).residue(7) == 5);
    CHECK_THROWS(rational(0).valuation(5));
    CHECK_THROWS(rational(bigint(1), bigint(5)).residue(5));

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
    for (int i = 0; i < 10000; ++i) {
        rational x(bigint(num(rng)), bigint(den(rng)));
        rational y(bigint(num(rng)), bigint(den(rng)));
        REQUIRE((x + y) - y == x);
        REQUIRE(gcd(x.numerator(), x.denominator()) == 1);
        REQUIRE(x.denominator() >= 1);
    }
}
}
