#ifndef PRAT_FIELDS_HPP
#define PRAT_FIELDS_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace prat {

/* Q(sqrt d) for squarefree d not in {0, 1}. */
struct quadratic_field
{
    std::int64_t d;
    std::int64_t discriminant;
    bool is_real;

    auto operator<=>(quadratic_field const &) const = default;
};

struct prime_splitting
{
    std::uint64_t p;
    int e; // ramification index
    int f; // residue degree
    int g; // number of primes above p
    std::uint64_t q; // p^f

    bool ramified() const { return e == 2; }
};

struct multiquadratic_field
{
    std::vector<std::int64_t> generators;
    /* 2^t - 1 squarefree parts of nonempty subset products, by subset size */
    std::vector<std::int64_t> subfield_ds;

    std::size_t rank() const { return generators.size(); }
};

namespace fields {

constexpr std::size_t default_max_rank = 6;

/* Normalizes n to its squarefree part; throws square_input_error if n is a
 * perfect square. */
quadratic_field make_quadratic(std::int64_t n);

prime_splitting splitting(quadratic_field const & F, std::uint64_t p);

/* Q(sqrt(-3d)); throws for d = -3. */
quadratic_field mirror(quadratic_field const & F);

/* squarefree part of a*b for squarefree a, b, without overflow */
std::int64_t squarefree_product(std::int64_t a, std::int64_t b);

multiquadratic_field make_multiquadratic(std::span<std::int64_t const> gens,
                                         std::size_t max_rank = default_max_rank);

/* ascending |d|, negative before positive on ties */
bool canonical_less(std::int64_t a, std::int64_t b);
std::vector<std::int64_t> canonical_order(std::vector<std::int64_t> ds);

} // namespace fields
} // namespace prat

#endif
