#include <algorithm>
#include <doctest.h>

#include <chrono>
#include <thread>

#include "oracles.hpp"
#include "prat/arith.hpp"
#include "prat/classgroup.hpp"
#include "prat/errors.hpp"

using namespace prat;

namespace {

bool fundamental(std::int64_t D)
{
    return D != 1 && arith::is_fundamental_discriminant(D);
}

/* number of prime discriminants dividing D */
unsigned prime_discriminant_count(std::int64_t D)
{
    auto n = static_cast<std::uint64_t>(D < 0 ? -D : D);
    unsigned mu = 0;
    for (auto [q, e] : arith::factor(n)) {
        (void) e;
        ++mu;
    }
    return mu;
}

std::uint64_t product(std::vector<std::uint64_t> const & v)
{
    std::uint64_t p = 1;
    for (auto x : v)
        p *= x;
    return p;
}

} // namespace

TEST_SUITE("classgroup")
{
TEST_CASE("Landau class numbers")
{
    CHECK(classgroup::landau_class_number(-4) == 1);
    CHECK(classgroup::landau_class_number(-3) == 1);
    CHECK(classgroup::landau_class_number(-23) == 3);
    CHECK(classgroup::landau_class_number(-47) == 5);
    CHECK(classgroup::landau_class_number(-420) == 8);
    CHECK_THROWS_AS(classgroup::landau_class_number(-12), precondition_error);
    CHECK_THROWS_AS(classgroup::landau_class_number(5), precondition_error);
}

TEST_CASE("reduced form counts")
{
    CHECK(classgroup::reduced_forms_count(-3) == 1);
    CHECK(classgroup::reduced_forms_count(-23) == 3);
    CHECK(classgroup::reduced_forms_count(-420) == 8);
    auto forms = classgroup::reduced_forms(-23);
    std::sort(forms.begin(), forms.end());
    CHECK(forms == std::vector<form>{{1, 1, 6}, {2, -1, 3}, {2, 1, 3}});
}

TEST_CASE("both class number methods agree with the brute-force form count")
{
    for (std::int64_t D = -3; D > -6000; --D) {
        if (!fundamental(D))
            continue;
        INFO("D = " << D);
        auto brute = oracle::class_number_brute(D);
        REQUIRE(classgroup::landau_class_number(D) == brute);
        REQUIRE(classgroup::reduced_forms_count(D) == brute);
        REQUIRE(classgroup::class_number_imaginary(D) == brute);
    }
}

TEST_CASE("large discriminants switch to form enumeration")
{
    std::int64_t D = -classgroup::landau_limit - 1;
    while (!fundamental(D))
        --D;
    CHECK(classgroup::class_number_imaginary(D) == classgroup::landau_class_number(D));
    std::int64_t big = -100610340; // -p(p^2 - 4), p = 293, times 4
    REQUIRE(fundamental(big));
    CHECK(classgroup::class_number_imaginary(big) == 3808);
}

TEST_CASE("composition")
{
    std::int64_t D = -23;
    form e = classgroup::principal_form(D);
    form g{2, 1, 3};
    CHECK(classgroup::compose(e, g) == g);
    CHECK(classgroup::power(g, 3) == e);
    CHECK(classgroup::compose(g, {2, -1, 3}) == e);
    // associativity on D = -4027 (h = 9)
    auto forms = classgroup::reduced_forms(-4027);
    for (auto const & a : forms)
        for (auto const & b : forms) {
            REQUIRE(classgroup::compose(a, b) == classgroup::compose(b, a));
            for (auto const & c : forms)
                REQUIRE(classgroup::compose(classgroup::compose(a, b), c)
                        == classgroup::compose(a, classgroup::compose(b, c)));
        }
}

TEST_CASE("class group structure")
{
    CHECK(*classgroup::class_group_structure(-23).structure == std::vector<std::uint64_t>{3});
    CHECK(*classgroup::class_group_structure(-84).structure == std::vector<std::uint64_t>{2, 2});
    CHECK(classgroup::class_group_structure(-4).structure->empty());
    CHECK(*classgroup::class_group_structure(-3299).structure == std::vector<std::uint64_t>{3, 9});
    CHECK(*classgroup::class_group_structure(-4027).structure == std::vector<std::uint64_t>{3, 3});
    CHECK_THROWS_AS(classgroup::class_group_structure(-23, 10), cap_exceeded);

    for (std::int64_t D = -3; D > -3000; --D) {
        if (!fundamental(D))
            continue;
        auto s = *classgroup::class_group_structure(D).structure;
        REQUIRE(product(s) == classgroup::reduced_forms_count(D));
        for (std::size_t i = 1; i < s.size(); ++i)
            REQUIRE(s[i] % s[i - 1] == 0);
        // genus theory: 2-rank is mu - 1
        std::size_t even = std::count_if(s.begin(), s.end(), [](std::uint64_t x) { return x % 2 == 0; });
        REQUIRE(even == prime_discriminant_count(D) - 1);
    }
}

TEST_CASE("cyclic p-parts")
{
    CHECK(classgroup::is_p_part_cyclic(-23, 3));
    CHECK(classgroup::is_p_part_cyclic(-84, 3));
    CHECK_FALSE(classgroup::is_p_part_cyclic(-4027, 3));
    CHECK(classgroup::is_p_part_cyclic(-3299, 5));
    CHECK_FALSE(classgroup::is_p_part_cyclic(-3299, 3));
    auto s = *classgroup::class_group_structure(-4027).structure;
    std::size_t rank = std::count_if(s.begin(), s.end(), [](std::uint64_t x) { return x % 3 == 0; });
    CHECK(classgroup::is_p_part_cyclic(-4027, 3) == (rank <= 1));
}

TEST_CASE("narrow class numbers and real class numbers")
{
    CHECK(classgroup::narrow_class_number(8) == 1);
    CHECK(classgroup::narrow_class_number(12) == 2);
    CHECK(classgroup::narrow_class_number(60) == 4);

    auto c = classgroup::class_number_real(8);
    CHECK(c.h == 1);
    CHECK(*c.h_narrow == 1);
    CHECK(*c.unit_norm == -1);
    c = classgroup::class_number_real(60);
    CHECK(c.h == 2);
    CHECK(*c.h_narrow == 4);
    CHECK(*c.unit_norm == 1);
    c = classgroup::class_number_real(140);
    CHECK(c.h == 2);
    CHECK(*c.unit_norm == 1);
    CHECK(classgroup::class_number_real(229).h == 3);
    CHECK(classgroup::class_number_real(4 * 79).h == 3);
    CHECK_THROWS_AS(classgroup::narrow_class_number(-23), precondition_error);

    for (std::int64_t D = 5; D < 6000; ++D) {
        if (!fundamental(D))
            continue;
        auto data = classgroup::class_number_real(D);
        auto hn = *data.h_narrow;
        REQUIRE((hn == data.h || hn == 2 * data.h));
        REQUIRE((hn == data.h) == (*data.unit_norm == -1));
        for (std::uint64_t p : {3, 5, 7, 11})
            REQUIRE((data.h % p == 0) == (hn % p == 0));
        // genus theory: 2^(mu-1) divides the narrow class number
        REQUIRE(hn % (std::uint64_t(1) << (prime_discriminant_count(D) - 1)) == 0);
    }
}

TEST_CASE("class data goes through the store")
{
    classgroup::memory_store store;
    auto a = classgroup::class_data(-23, &store);
    CHECK(a.h == 3);
    CHECK_FALSE(a.structure);
    CHECK(store.size() == 1);
    auto b = classgroup::class_data(-23, &store, true);
    CHECK(*b.structure == std::vector<std::uint64_t>{3});
    CHECK(store.find(-23)->structure);
    auto c = classgroup::class_data(60, &store);
    CHECK(*c.h_narrow == 4);
    CHECK(store.find(60) == c);
}

TEST_CASE("long enumerations honour cancellation")
{
    cancel_token token;
    token.cancel_after(std::chrono::milliseconds(20));
    auto t0 = std::chrono::steady_clock::now();
    CHECK_THROWS_AS(classgroup::reduced_forms_count(-4 * 1000000000001LL, &token), cancelled);
    CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::milliseconds(500));
}
}
