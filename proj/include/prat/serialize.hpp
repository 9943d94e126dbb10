#ifndef PRAT_SERIALIZE_HPP
#define PRAT_SERIALIZE_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "prat/families.hpp"

namespace prat::serialize {

constexpr char const * csv_header = "parameter,status,h,witness";

/* witness object flattened to key=value;key=value, keys in sorted order */
std::string witness_string(nlohmann::json const & witness);

std::string csv_row(scan_record const & r);
std::string csv_quote(std::string const & field);
/* splits one CSV line, undoing the quoting of csv_quote */
std::vector<std::string> parse_csv_line(std::string const & line);

nlohmann::json summary_json(scan_summary const & s);

/* fixed-width human tables */
std::string verdict_table(verdict const & v);
std::string family_table(family_report const & r);
std::string scan_table(scan_summary const & s, bool timing = false);

} // namespace prat::serialize

#endif
