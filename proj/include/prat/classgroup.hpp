#ifndef PRAT_CLASSGROUP_HPP
#define PRAT_CLASSGROUP_HPP

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "prat/cancel.hpp"

namespace prat {

/* Binary quadratic form a x^2 + b x y + c y^2. */
struct form
{
    std::int64_t a, b, c;

    std::int64_t discriminant() const { return b * b - 4 * a * c; }
    auto operator<=>(form const &) const = default;
};

struct form_class_data
{
    std::int64_t discriminant = 0;
    std::uint64_t h = 0;
    std::optional<std::uint64_t> h_narrow;       // real only
    std::optional<std::vector<std::uint64_t>> structure; // imaginary only, d1 | d2 | ...
    std::optional<int> unit_norm;                 // real only

    bool operator==(form_class_data const &) const = default;
};

namespace classgroup {

/* Size at which class_number_imaginary switches from the Landau sum to
 * reduced-form enumeration. */
constexpr std::int64_t landau_limit = 10'000'000;
constexpr std::int64_t default_structure_cap = 10'000'000'000;

/* Landau's Kronecker-symbol sum. D fundamental, D < 0. */
std::uint64_t landau_class_number(std::int64_t D, cancel_token const * cancel = nullptr);

/* Number of primitive reduced positive definite forms of discriminant D < 0. */
std::uint64_t reduced_forms_count(std::int64_t D, cancel_token const * cancel = nullptr);

std::vector<form> reduced_forms(std::int64_t D, cancel_token const * cancel = nullptr);

/* Dispatches between the two counting methods by |D|. */
std::uint64_t class_number_imaginary(std::int64_t D, cancel_token const * cancel = nullptr);

form reduce_definite(form f);
form compose(form const & f, form const & g);
form principal_form(std::int64_t D);
form power(form const & f, std::uint64_t e);

/* Elementary divisors of the form class group, sorted by divisibility. */
form_class_data class_group_structure(std::int64_t D,
                                      std::int64_t cap = default_structure_cap,
                                      cancel_token const * cancel = nullptr);

bool is_p_part_cyclic(std::vector<std::uint64_t> const & structure, std::uint64_t p);
bool is_p_part_cyclic(std::int64_t D, std::uint64_t p);

/* Reduced indefinite forms: 0 < b < sqrt D, sqrt D - b < 2|a| < sqrt D + b. */
std::vector<form> reduced_indefinite_forms(std::int64_t D, cancel_token const * cancel = nullptr);
form rho(form const & f, std::int64_t D);

/* Number of rho-cycles of reduced indefinite forms. D fundamental, D > 0. */
std::uint64_t narrow_class_number(std::int64_t D, cancel_token const * cancel = nullptr);

form_class_data class_number_real(std::int64_t D, cancel_token const * cancel = nullptr);

/* Source of memoised class data; the CLI provides a persistent one. */
class class_number_store
{
  public:
    virtual ~class_number_store() = default;
    virtual std::optional<form_class_data> find(std::int64_t D) const = 0;
    virtual void record(form_class_data const & data) = 0;
};

class memory_store : public class_number_store
{
    mutable std::mutex lock;
    std::map<std::int64_t, form_class_data> entries;

  public:
    std::optional<form_class_data> find(std::int64_t D) const override;
    void record(form_class_data const & data) override;
    std::size_t size() const;
};

/* Class data for the field of discriminant D, through the store when given.
 * Imaginary entries include the structure only when want_structure is set
 * (and then replace a structure-less entry). */
form_class_data class_data(std::int64_t D, class_number_store * store,
                           bool want_structure = false,
                           cancel_token const * cancel = nullptr);

} // namespace classgroup
} // namespace prat

#endif
