#ifndef PRAT_CACHE_HPP
#define PRAT_CACHE_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <mutex>
#include <string>

#include "prat/classgroup.hpp"

namespace prat {

constexpr char const * cache_version = "prat-1";

/* Class data persisted as JSON lines, one object per discriminant, appended
 * as they are computed. Lines with another version tag or that fail to parse
 * are skipped on load. */
class jsonl_store : public classgroup::class_number_store
{
    mutable std::mutex lock;
    std::map<std::int64_t, form_class_data> entries;
    std::ofstream sink;
    std::string path_;

  public:
    explicit jsonl_store(std::string path);

    std::optional<form_class_data> find(std::int64_t D) const override;
    void record(form_class_data const & data) override;

    std::size_t size() const;
    std::string const & path() const { return path_; }
};

std::string cache_line(form_class_data const & data);
std::optional<form_class_data> parse_cache_line(std::string const & line);

} // namespace prat

#endif
