#ifndef PRAT_VERDICT_HPP
#define PRAT_VERDICT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "prat/cancel.hpp"
#include "prat/classgroup.hpp"
#include "prat/fields.hpp"

namespace prat {

enum class status { rational, not_rational, indeterminate };

std::string to_string(status s);
status status_from_string(std::string const & s);

/* One step of a decision: what was computed, on what, and what came out.
 * Replaying name on inputs reproduces outcome. */
struct criterion_record
{
    std::string name;
    nlohmann::json inputs;
    std::string outcome;
    std::string reference;
};

struct verdict
{
    std::vector<std::int64_t> field; // generators
    std::uint64_t p = 0;
    status st = status::indeterminate;
    std::vector<criterion_record> trail;
    std::string reason; // set when indeterminate
};

/* What verdict computations may share: a cancel token and class-data memo. */
struct environment
{
    cancel_token const * cancel = nullptr;
    classgroup::class_number_store * store = nullptr;
};

namespace verdicts {

verdict is_p_rational_quadratic(quadratic_field const & F, std::uint64_t p, environment const & env = {});

/* Rational iff every quadratic subfield is; subfields in canonical order. */
verdict is_p_rational_multiquadratic(multiquadratic_field const & M, std::uint64_t p,
                                     environment const & env = {});

/* Is M(sqrt -3) still 3-rational? For real M: iff no quadratic subfield of M
 * has d == 1 (mod 3), checked against the direct verdict. Other M get the
 * direct verdict alone. M must be 3-rational. */
bool check_sqrt_minus3_adjunction(multiquadratic_field const & M, environment const & env = {});

/* L = F(sqrt -delta) for real multi-quadratic F that is p-rational. */
verdict cm_going_up(std::vector<std::int64_t> const & F_gens, std::int64_t delta, std::uint64_t p,
                    environment const & env = {});

bool two_rational_by_list(std::int64_t d);
bool two_rational_by_ramification(std::int64_t d);

/* Recomputes a record from its name and inputs; returns the fresh outcome. */
std::string replay(criterion_record const & r, environment const & env = {});

/* Every record replays to its outcome and the field gives the same status again. */
bool replays(verdict const & v, environment const & env = {});

nlohmann::json to_json(criterion_record const & r);
nlohmann::json to_json(verdict const & v);

} // namespace verdicts
} // namespace prat

#endif
