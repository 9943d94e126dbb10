#include "prat/fields.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "prat/arith.hpp"
#include "prat/errors.hpp"

namespace prat::fields {

quadratic_field make_quadratic(std::int64_t n)
{
    if (n == 0)
        throw precondition_error("make_quadratic: n = 0");
    std::int64_t d = arith::squarefree_part(n);
    if (d == 1)
        throw square_input_error("make_quadratic: " + std::to_string(n) + " is a perfect square");
    return {d, arith::fundamental_discriminant(d), d > 0};
}

prime_splitting splitting(quadratic_field const & F, std::uint64_t p)
{
    if (!arith::is_prime(p))
        throw precondition_error("splitting: p must be prime");
    auto P = static_cast<std::int64_t>(p);
    if (F.discriminant % P == 0)
        return {p, 2, 1, 1, p};
    if (arith::kronecker(F.discriminant, P) == 1)
        return {p, 1, 1, 2, p};
    return {p, 1, 2, 1, p * p};
}

quadratic_field mirror(quadratic_field const & F)
{
    if (F.d == -3)
        throw precondition_error("mirror: d = -3 has mirror Q");
    return make_quadratic(squarefree_product(-3, F.d));
}

std::int64_t squarefree_product(std::int64_t a, std::int64_t b)
{
    std::int64_t g = std::gcd(a, b);
    return (a / g) * (b / g);
}

multiquadratic_field make_multiquadratic(std::span<std::int64_t const> gens, std::size_t max_rank)
{
    if (gens.empty())
        throw precondition_error("make_multiquadratic: no generators");
    if (gens.size() > max_rank)
        throw precondition_error("make_multiquadratic: rank exceeds cap of "
                                 + std::to_string(max_rank));
    multiquadratic_field M;
    for (auto g : gens)
        M.generators.push_back(make_quadratic(g).d);

    std::size_t t = M.generators.size();
    std::vector<std::int64_t> by_mask(std::size_t(1) << t, 1);
    for (std::size_t mask = 1; mask < by_mask.size(); ++mask) {
        std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
        by_mask[mask] = squarefree_product(by_mask[mask & (mask - 1)], M.generators[low]);
    }
    std::vector<std::size_t> masks(by_mask.size() - 1);
    std::iota(masks.begin(), masks.end(), 1);
    std::stable_sort(masks.begin(), masks.end(), [](std::size_t a, std::size_t b) {
        int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
        if (pa != pb)
            return pa < pb;
        // lexicographic on the chosen generator indices
        for (std::size_t i = 0; i < 64; ++i) {
            bool ia = (a >> i) & 1, ib = (b >> i) & 1;
            if (ia != ib)
                return ia;
        }
        return false;
    });
    std::set<std::int64_t> seen;
    for (auto mask : masks) {
        std::int64_t d = by_mask[mask];
        if (d == 1 || !seen.insert(d).second)
            throw precondition_error("make_multiquadratic: generators are dependent modulo squares");
        M.subfield_ds.push_back(d);
    }
    return M;
}

bool canonical_less(std::int64_t a, std::int64_t b)
{
    auto ua = a < 0 ? -a : a, ub = b < 0 ? -b : b;
    if (ua != ub)
        return ua < ub;
    return a < b;
}

std::vector<std::int64_t> canonical_order(std::vector<std::int64_t> ds)
{
    std::sort(ds.begin(), ds.end(), canonical_less);
    return ds;
}

} // namespace prat::fields
