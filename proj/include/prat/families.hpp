#ifndef PRAT_FAMILIES_HPP
#define PRAT_FAMILIES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "prat/verdict.hpp"

namespace prat {

struct identity_check
{
    std::string name;
    nlohmann::json expected;
    nlohmann::json actual;
    bool holds;
};

struct family_report
{
    std::string family;
    std::uint64_t p = 0;
    std::vector<verdict> components;
    std::vector<identity_check> identities;
    status overall = status::indeterminate;
    nlohmann::json extra = nlohmann::json::object();
};

struct scan_record
{
    std::int64_t parameter = 0;
    status st = status::indeterminate;
    std::optional<std::uint64_t> h;
    nlohmann::json witness = nlohmann::json::object();
    double seconds = 0;
};

struct scan_summary
{
    std::string scan;
    std::uint64_t p = 0;
    std::int64_t bound = 0;
    std::vector<scan_record> records;
    std::size_t rational = 0, not_rational = 0, indeterminate = 0;
    /* parameters where an independent criterion disagreed with the verdict */
    std::vector<std::int64_t> mismatches;

    double density() const
    {
        return records.empty() ? 0.0 : double(rational) / double(records.size());
    }
};

struct scan_options
{
    unsigned jobs = 1;
    environment env;
};

namespace families {

/* Q(sqrt(p(p+2))) at p, with the unit p+1+sqrt(p(p+2)) and h < p checked. */
family_report family_p_p2(std::uint64_t p, environment const & env = {});

/* Q(sqrt(p(p+2)), sqrt(p(p-2))), whose third subfield is Q(sqrt(p^2-4)). */
family_report family_real_biquadratic(std::uint64_t p, environment const & env = {});

/* Q(sqrt -(p+2), sqrt -p, sqrt -(p-2)). */
family_report family_triquadratic(std::uint64_t p, environment const & env = {});

scan_summary question_sqrt_p(std::uint64_t bound, scan_options const & opt = {});
scan_summary scan_biquadratic_3rational(std::int64_t bound, scan_options const & opt = {});
scan_summary scan_real_ramified(std::uint64_t p, std::int64_t D_bound, scan_options const & opt = {});
scan_summary scan_imaginary(std::uint64_t p, std::int64_t bound, scan_options const & opt = {});

/* First field of rank t (generators |d| <= bound, canonical order) whose
 * quadratic subfields are all p-rational, containing the required
 * generators. */
std::optional<verdict> greenberg_search(std::uint64_t p, unsigned t, std::int64_t bound,
                                        std::vector<std::int64_t> const & required = {},
                                        environment const & env = {});

/* Class number and witness columns of a scan record, from a verdict trail. */
scan_record record_from_verdict(std::int64_t parameter, verdict const & v);

nlohmann::json to_json(family_report const & r);
nlohmann::json to_json(scan_record const & r, bool timing = false);

} // namespace families
} // namespace prat

#endif
