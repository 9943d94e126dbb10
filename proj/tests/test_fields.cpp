#include <doctest.h>

#include <algorithm>
#include <set>

#include "prat/arith.hpp"
#include "prat/errors.hpp"
#include "prat/fields.hpp"

using namespace prat;

namespace {

std::set<std::int64_t> as_set(std::vector<std::int64_t> const & v)
{
    return {v.begin(), v.end()};
}

multiquadratic_field mq(std::vector<std::int64_t> g)
{
    return fields::make_multiquadratic(g);
}

} // namespace

TEST_SUITE("fields")
{
TEST_CASE("quadratic descriptors")
{
    auto F = fields::make_quadratic(63);
    CHECK(F.d == 7);
    CHECK(F.discriminant == 28);
    CHECK(F.is_real);
    F = fields::make_quadratic(-23);
    CHECK(F.d == -23);
    CHECK(F.discriminant == -23);
    CHECK_FALSE(F.is_real);
    CHECK_THROWS_AS(fields::make_quadratic(4), square_input_error);
    CHECK_THROWS_AS(fields::make_quadratic(1), square_input_error);
    CHECK_THROWS_AS(fields::make_quadratic(0), precondition_error);
    CHECK(fields::make_quadratic(-4).d == -1);
}

TEST_CASE("prime splitting")
{
    auto s = fields::splitting(fields::make_quadratic(5), 7);
    CHECK(s.e == 1);
    CHECK(s.f == 2);
    CHECK(s.q == 49);
    s = fields::splitting(fields::make_quadratic(35), 5);
    CHECK(s.e == 2);
    CHECK(s.f == 1);
    CHECK(s.q == 5);
    s = fields::splitting(fields::make_quadratic(5), 11);
    CHECK(s.e == 1);
    CHECK(s.f == 1);
    CHECK(s.g == 2);
    CHECK(s.q == 11);
    // 2 splits in Q(sqrt -7), is inert in Q(sqrt 5), ramifies in Q(sqrt 3)
    CHECK(fields::splitting(fields::make_quadratic(-7), 2).g == 2);
    CHECK(fields::splitting(fields::make_quadratic(5), 2).f == 2);
    CHECK(fields::splitting(fields::make_quadratic(3), 2).e == 2);
    CHECK_THROWS_AS(fields::splitting(fields::make_quadratic(5), 9), precondition_error);

    for (std::int64_t d = -300; d <= 300; ++d) {
        if (d == 0 || d == 1 || !arith::is_squarefree(d))
            continue;
        auto F = fields::make_quadratic(d);
        for (auto p : arith::primes_in(2, 60)) {
            auto t = fields::splitting(F, p);
            REQUIRE(t.e * t.f * t.g == 2);
            REQUIRE(t.q == arith::ipow(p, t.f));
            REQUIRE(t.ramified() == (F.discriminant % static_cast<std::int64_t>(p) == 0));
        }
    }
}

TEST_CASE("mirror fields")
{
    CHECK(fields::mirror(fields::make_quadratic(15)).d == -5);
    CHECK(fields::mirror(fields::make_quadratic(6)).d == -2);
    CHECK(fields::mirror(fields::make_quadratic(-23)).d == 69);
    CHECK_THROWS_AS(fields::mirror(fields::make_quadratic(-3)), precondition_error);
    for (std::int64_t d = -2000; d <= 2000; ++d) {
        if (d == 0 || d == 1 || d % 3 == 0 || !arith::is_squarefree(d))
            continue;
        auto F = fields::make_quadratic(d);
        REQUIRE(fields::mirror(fields::mirror(F)) == F);
    }
}

TEST_CASE("multi-quadratic subfields")
{
    CHECK(as_set(mq({35, 21}).subfield_ds) == std::set<std::int64_t>{35, 21, 15});
    CHECK(as_set(mq({-3, -5, -7}).subfield_ds) == std::set<std::int64_t>{-3, -5, -7, 15, 21, 35, -105});
    CHECK_THROWS_AS(mq({2, 8}), precondition_error);
    CHECK_THROWS_AS(mq({2, 3, 6}), precondition_error);
    CHECK_THROWS_AS(mq({2, 3, 5, 7, 11, 13, 17}), precondition_error);
    CHECK_THROWS_AS(mq({9}), square_input_error);
    CHECK_THROWS_AS(mq({}), precondition_error);

    // subset-size order: generators first
    auto M = mq({-1, 2, -3});
    CHECK(std::vector<std::int64_t>(M.subfield_ds.begin(), M.subfield_ds.begin() + 3)
          == std::vector<std::int64_t>{-1, 2, -3});
    CHECK(M.subfield_ds.back() == 6);

    for (auto gens : std::vector<std::vector<std::int64_t>>{{2, 3}, {-1, 5, 7}, {-3, 2, 5, 11}, {2, 3, 5, 7, 11, 13}}) {
        auto N = mq(gens);
        auto S = as_set(N.subfield_ds);
        REQUIRE(N.subfield_ds.size() == (std::size_t(1) << gens.size()) - 1);
        REQUIRE(S.size() == N.subfield_ds.size());
        for (auto a : N.subfield_ds)
            for (auto b : N.subfield_ds)
                if (a != b)
                    REQUIRE(S.count(fields::squarefree_product(a, b)) == 1);
    }
}

TEST_CASE("canonical order")
{
    CHECK(fields::canonical_order({35, -5, -7, 5, 2, -1}) == std::vector<std::int64_t>{-1, 2, -5, 5, -7, 35});
}
}
