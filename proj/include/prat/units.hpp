#ifndef PRAT_UNITS_HPP
#define PRAT_UNITS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prat/arith.hpp"
#include "prat/cancel.hpp"
#include "prat/fields.hpp"

namespace prat {

namespace classgroup {
class class_number_store;
}

/* Expansion of sqrt(d), or of (1 + sqrt d)/2 when d == 1 (mod 4). */
struct continued_fraction
{
    std::int64_t d;
    bool half_integer_basis;
    std::int64_t a0;
    std::vector<std::int64_t> period;

    std::size_t length() const { return period.size(); }
};

/* eps = (x + y sqrt d) / sigma > 1, the fundamental unit of the maximal order. */
struct exact_unit
{
    bigint x, y;
    int sigma;
    int norm;

    bigint trace() const { return sigma == 1 ? bigint(2 * x) : x; }
};

struct unit_residue
{
    std::int64_t d;
    bigint modulus;
    bigint x, y;      // residues mod sigma * modulus
    int sigma;
    bigint trace_mod; // Tr(eps) mod modulus
    int norm;
};

enum class local_power_method { fibonacci, direct_power, ramified_val, hensel_bruteforce };

std::string to_string(local_power_method m);

struct local_power_result
{
    bool is_pth_power;
    /* valuation of eps^(q-1) - 1 at the prime above p, in units of that
     * prime; at_least means the working precision only gives a lower bound */
    unsigned pi_valuation;
    bool at_least;
    local_power_method method;
    std::optional<std::uint64_t> fibonacci_residue; // F_q mod p^2, unramified p only
};

namespace units {

constexpr std::size_t default_period_cap = 10'000'000;
constexpr std::size_t default_exact_cap = 100'000;

continued_fraction cf_expand(std::int64_t d, std::size_t period_cap = default_period_cap,
                             cancel_token const * cancel = nullptr);

/* Convergent at the end of the first period; throws cap_exceeded when the
 * period is longer than period_cap. */
exact_unit fundamental_unit_exact(std::int64_t d, std::size_t period_cap = default_exact_cap,
                                  cancel_token const * cancel = nullptr);

/* Same unit with the convergent recurrences run modulo sigma * m. */
unit_residue fundamental_unit_residue(std::int64_t d, bigint const & m,
                                      cancel_token const * cancel = nullptr);

/* U_n(T, N) mod m: U_0 = 0, U_1 = 1, U_{n+2} = T U_{n+1} - N U_n. */
std::uint64_t lucas_u(std::uint64_t T, std::int64_t N, std::uint64_t n, std::uint64_t m);

/* F_q mod p^2 for the unit of a real quadratic field, p odd and unramified. */
std::uint64_t generalized_fibonacci(quadratic_field const & F, std::uint64_t p,
                                    cancel_token const * cancel = nullptr);

/* Is the fundamental unit a p-th power in the completion at a prime above p? */
local_power_result local_pth_power_test(quadratic_field const & F, std::uint64_t p,
                                        cancel_token const * cancel = nullptr);

/* v_p of the order of the Z_p-torsion of the maximal abelian pro-p
 * extension unramified outside p, for a real quadratic field. */
unsigned torsion_valuation_real_quadratic(quadratic_field const & F, std::uint64_t p,
                                          classgroup::class_number_store * store = nullptr,
                                          cancel_token const * cancel = nullptr);

} // namespace units
} // namespace prat

#endif
