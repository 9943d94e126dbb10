#include "prat/cache.hpp"

#include <json.hpp>

#include "prat/errors.hpp"

namespace prat {

using nlohmann::json;

std::string cache_line(form_class_data const & data)
{
    json j = {{"v", cache_version}, {"D", data.discriminant}, {"h", data.h}};
    if (data.h_narrow)
        j["h_narrow"] = *data.h_narrow;
    if (data.unit_norm)
        j["unit_norm"] = *data.unit_norm;
    if (data.structure)
        j["structure"] = *data.structure;
    return j.dump();
}

std::optional<form_class_data> parse_cache_line(std::string const & line)
{
    auto j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        return std::nullopt;
    if (!j.contains("v") || j["v"] != cache_version || !j.contains("D") || !j.contains("h"))
        return std::nullopt;
    try {
        form_class_data d;
        d.discriminant = j["D"].get<std::int64_t>();
        d.h = j["h"].get<std::uint64_t>();
        if (j.contains("h_narrow"))
            d.h_narrow = j["h_narrow"].get<std::uint64_t>();
        if (j.contains("unit_norm"))
            d.unit_norm = j["unit_norm"].get<int>();
        if (j.contains("structure"))
            d.structure = j["structure"].get<std::vector<std::uint64_t>>();
        return d;
    } catch (json::exception const &) {
        return std::nullopt;
    }
}

jsonl_store::jsonl_store(std::string path) : path_(std::move(path))
{
    {
        std::ifstream in(path_);
        std::string line;
        while (std::getline(in, line)) {
            auto d = parse_cache_line(line);
            if (!d)
                continue;
            auto & slot = entries[d->discriminant];
            if (slot.h == 0 || (d->structure && !slot.structure))
                slot = *d;
        }
    }
    sink.open(path_, std::ios::app);
    if (!sink)
        throw precondition_error("cannot open cache file '" + path_ + "'");
}

std::optional<form_class_data> jsonl_store::find(std::int64_t D) const
{
    std::lock_guard<std::mutex> g(lock);
    auto it = entries.find(D);
    if (it == entries.end())
        return std::nullopt;
    return it->second;
}

void jsonl_store::record(form_class_data const & data)
{
    std::lock_guard<std::mutex> g(lock);
    auto & slot = entries[data.discriminant];
    if (slot.h != 0 && (slot.structure || !data.structure))
        return;
    slot = data;
    // whole line in one write, flushed, so a crash leaves at most a torn last line
    sink << cache_line(data) + "\n" << std::flush;
}

std::size_t jsonl_store::size() const
{
    std::lock_guard<std::mutex> g(lock);
    return entries.size();
}

} // namespace prat
