#include <doctest.h>

#include "oracles.hpp"
#include "prat/arith.hpp"
#include "prat/classgroup.hpp"
#include "prat/errors.hpp"
#include "prat/lseries.hpp"
#include "prat/units.hpp"

using namespace prat;

namespace {

std::uint64_t residue_of(mpq_class const & q, std::uint64_t p)
{
    return rational(q).residue(p);
}

std::vector<std::int64_t> fundamentals_up_to(std::int64_t bound)
{
    std::vector<std::int64_t> out;
    for (std::int64_t D = -bound; D <= bound; ++D)
        if (D != 1 && arith::is_fundamental_discriminant(D))
            out.push_back(D);
    return out;
}

} // namespace

TEST_SUITE("lseries")
{
TEST_CASE("Bernoulli numbers mod p")
{
    CHECK(lseries::bernoulli_mod_p(7, 2).values[2] == 6);
    CHECK(lseries::bernoulli_mod_p(11, 4).values[4] == 4);
    CHECK(lseries::bernoulli_mod_p(13, 6).values[6] == 9);
    CHECK_THROWS_AS(lseries::bernoulli_mod_p(7, 6), precondition_error);
    CHECK_THROWS_AS(lseries::bernoulli_mod_p(9, 2), precondition_error);

    auto B = oracle::bernoulli_at(40);
    for (auto p : arith::primes_in(3, 60)) {
        auto t = lseries::bernoulli_mod_p(p, static_cast<unsigned>(p - 2));
        REQUIRE(t.values.size() == p - 1);
        for (unsigned k = 0; k + 2 <= p && k <= 40; ++k)
            REQUIRE(t.values[k] == residue_of(B[k], p));
    }
}

TEST_CASE("exact Bernoulli numbers")
{
    auto B = oracle::bernoulli_at(30);
    for (unsigned n = 0; n <= 30; ++n)
        REQUIRE(lseries::bernoulli_number(n).value() == B[n]);
    CHECK(lseries::bernoulli_number(1).value() == mpq_class(-1, 2));
    CHECK(lseries::bernoulli_number(12).value() == mpq_class(-691, 2730));
    // sum_{k<n} C(n,k) B_k = 0 for n >= 2
    for (unsigned n = 2; n <= 30; ++n) {
        mpq_class s = 0;
        mpz_class c = 1;
        for (unsigned k = 0; k < n; ++k) {
            s += mpq_class(c) * lseries::bernoulli_number(k).value();
            c = c * (n - k) / (k + 1);
        }
        REQUIRE(s == 0);
    }
}

TEST_CASE("generalized Bernoulli fixtures")
{
    CHECK(lseries::gen_bernoulli_exact(5, 2).value() == mpq_class(4, 5));
    CHECK(lseries::gen_bernoulli_exact(8, 2).value() == 2);
    CHECK(lseries::gen_bernoulli_exact(-4, 1).value() == mpq_class(-1, 2));
    CHECK(lseries::gen_bernoulli_exact(-3, 1).value() == mpq_class(-1, 3));
    CHECK(lseries::gen_bernoulli_exact(-23, 1).value() == -3);
    CHECK(lseries::gen_bernoulli_exact(-4, 3).value() == mpq_class(3, 2));
    CHECK(lseries::gen_bernoulli_exact(-3, 3).value() == mpq_class(2, 3));
    CHECK(lseries::gen_bernoulli_exact(-20, 3).value() == 90);
    CHECK(lseries::gen_bernoulli_exact(5, 3).is_zero());
    CHECK_THROWS_AS(lseries::gen_bernoulli_exact(20, 2), precondition_error);
    CHECK_THROWS_AS(lseries::gen_bernoulli_exact(-1000003, 1, 1000), cap_exceeded);

    // the class number formula h = -B_{1,chi} for D < -4
    for (std::int64_t D = -5; D > -400; --D)
        if (arith::is_fundamental_discriminant(D))
            REQUIRE(-lseries::gen_bernoulli_exact(D, 1).value() == classgroup::class_number_imaginary(D));
}

TEST_CASE("generalized Bernoulli against the polynomial definition")
{
    for (auto D : fundamentals_up_to(60))
        for (unsigned n = 1; n <= 6; ++n) {
            INFO("D = " << D << ", n = " << n);
            REQUIRE(lseries::gen_bernoulli_exact(D, n).value() == oracle::gen_bernoulli_poly(D, n));
        }
}

TEST_CASE("parity")
{
    for (auto D : fundamentals_up_to(100))
        for (unsigned n = 1; n <= 6; ++n) {
            bool even_char = D > 0;
            REQUIRE(lseries::parity_matches(D, n) == (even_char == (n % 2 == 0)));
            if (!lseries::parity_matches(D, n))
                REQUIRE(lseries::gen_bernoulli_exact(D, n).is_zero());
        }
}

TEST_CASE("mod p reduction agrees with the exact value")
{
    CHECK(lseries::gen_bernoulli_mod_p(5, 2, 7) == 5);
    CHECK(lseries::gen_bernoulli_mod_p(28, 2, 5) == 1);
    CHECK_THROWS_AS(lseries::gen_bernoulli_mod_p(5, 2, 5), precondition_error);

    std::size_t checked = 0;
    for (auto D : fundamentals_up_to(100))
        for (unsigned n = 1; n <= 6; ++n)
            for (std::uint64_t p : {5, 7, 11, 13}) {
                if (D % static_cast<std::int64_t>(p) == 0)
                    continue;
                rational B = lseries::gen_bernoulli_exact(D, n);
                INFO("D = " << D << ", n = " << n << ", p = " << p);
                if (B.is_zero()) {
                    REQUIRE(lseries::gen_bernoulli_mod_p(D, n, p) == 0);
                } else {
                    REQUIRE(B.valuation(p) >= 0);
                    REQUIRE(lseries::gen_bernoulli_mod_p(D, n, p) == B.residue(p));
                }
                ++checked;
            }
    CHECK(checked > 1000);
}

TEST_CASE("p-adic L-value unit criterion")
{
    CHECK(lseries::lp_unit_criterion(fields::make_quadratic(35), 5));
    CHECK(lseries::lp_unit_criterion(fields::make_quadratic(15), 5));
    CHECK_THROWS_AS(lseries::lp_unit_criterion(fields::make_quadratic(5), 5), precondition_error);
    CHECK_THROWS_AS(lseries::lp_unit_criterion(fields::make_quadratic(-35), 5), precondition_error);
    CHECK_THROWS_AS(lseries::lp_unit_criterion(fields::make_quadratic(21), 5), precondition_error);
    CHECK_THROWS_AS(lseries::lp_unit_criterion(fields::make_quadratic(21), 3), precondition_error);

    // same answer as the narrow class number and local unit route
    for (std::uint64_t p : {5, 7, 11, 13}) {
        auto P = static_cast<std::int64_t>(p);
        for (std::int64_t d = P; d <= 300; d += P) {
            if (d == P || !arith::is_squarefree(d))
                continue;
            auto F = fields::make_quadratic(d);
            auto data = classgroup::class_data(F.discriminant, nullptr);
            bool rational = *data.h_narrow % p != 0 && !units::local_pth_power_test(F, p).is_pth_power;
            INFO("d = " << d << ", p = " << p);
            REQUIRE(lseries::lp_unit_criterion(F, p) == rational);
        }
    }
}

TEST_CASE("regularity")
{
    CHECK(lseries::w2_p_part(fields::make_quadratic(5), 5) == 5);
    CHECK(lseries::w2_p_part(fields::make_quadratic(2), 5) == 1);
    CHECK(lseries::w2_p_part(fields::make_quadratic(2), 3) == 3);
    CHECK(lseries::w2_p_part(fields::make_quadratic(13), 13) == 1);

    CHECK(lseries::zeta_minus_one(fields::make_quadratic(5)).value() == mpq_class(1, 30));
    CHECK(lseries::zeta_minus_one(fields::make_quadratic(2)).value() == mpq_class(1, 12));
    CHECK_THROWS_AS(lseries::zeta_minus_one(fields::make_quadratic(-1)), precondition_error);

    CHECK(lseries::is_p_regular_real_quadratic(fields::make_quadratic(5), 5));
    CHECK(lseries::is_p_regular_real_quadratic(fields::make_quadratic(2), 7));
    CHECK_THROWS_AS(lseries::is_p_regular_real_quadratic(fields::make_quadratic(2), 3), precondition_error);

    for (std::int64_t d = 2; d < 200; ++d) {
        if (!arith::is_squarefree(d))
            continue;
        auto F = fields::make_quadratic(d);
        if (F.discriminant > 100)
            continue;
        mpq_class B = oracle::gen_bernoulli_poly(F.discriminant, 2);
        for (std::uint64_t p : {5, 7, 11, 13}) {
            long v = rational(B).valuation(p) + (p == 5 && d == 5 ? 1 : 0);
            REQUIRE(lseries::is_p_regular_real_quadratic(F, p) == (v == 0));
        }
    }

    std::vector<std::int64_t> g{2, 5};
    auto M = fields::make_multiquadratic(g);
    CHECK(lseries::is_p_regular_multiquadratic(M, 7)
          == (lseries::is_p_regular_real_quadratic(fields::make_quadratic(2), 7)
              && lseries::is_p_regular_real_quadratic(fields::make_quadratic(5), 7)
              && lseries::is_p_regular_real_quadratic(fields::make_quadratic(10), 7)));
    std::vector<std::int64_t> bad{2, -5};
    CHECK_THROWS_AS(lseries::is_p_regular_multiquadratic(fields::make_multiquadratic(bad), 7), precondition_error);
}
}
