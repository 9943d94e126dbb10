#ifndef PRAT_LSERIES_HPP
#define PRAT_LSERIES_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "prat/arith.hpp"
#include "prat/fields.hpp"

namespace prat {

/* B_0 .. B_kmax reduced mod p. */
struct bernoulli_table
{
    std::uint64_t p;
    std::vector<std::uint64_t> values;
};

struct gen_bernoulli
{
    std::int64_t character_discriminant;
    unsigned n;
    std::optional<rational> exact;
    std::optional<std::uint64_t> residue_mod_p;
};

namespace lseries {

constexpr std::int64_t default_conductor_cap = 1'000'000;
constexpr unsigned max_exact_index = 30;

bernoulli_table bernoulli_mod_p(std::uint64_t p, unsigned kmax);

/* Exact B_n with B_1 = -1/2. */
rational bernoulli_number(unsigned n);

/* chi(-1) == (-1)^n, otherwise B_{n,chi} vanishes */
bool parity_matches(std::int64_t D, unsigned n);

/* B_{n,chi_D} for the primitive character of the fundamental discriminant D. */
rational gen_bernoulli_exact(std::int64_t D, unsigned n,
                             std::int64_t conductor_cap = default_conductor_cap);

/* B_{n,chi_D} mod p without forming the exact value; p must not divide D. */
std::uint64_t gen_bernoulli_mod_p(std::int64_t D, unsigned n, std::uint64_t p);

/* L_p(1, chi_F) is a p-adic unit, read off B_{(p-1)/2, chi_K} for the
 * quadratic field K paired with F; F real with p | d, p >= 5, K != Q. */
bool lp_unit_criterion(quadratic_field const & F, std::uint64_t p);

/* p-part of w_2(F) */
std::uint64_t w2_p_part(quadratic_field const & F, std::uint64_t p);

/* zeta_F(-1) = B_{2,chi}/24 for real F */
rational zeta_minus_one(quadratic_field const & F);

bool is_p_regular_real_quadratic(quadratic_field const & F, std::uint64_t p);
bool is_p_regular_multiquadratic(multiquadratic_field const & M, std::uint64_t p);

} // namespace lseries
} // namespace prat

#endif
