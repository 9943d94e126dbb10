#ifndef PRAT_CANCEL_HPP
#define PRAT_CANCEL_HPP

#include <atomic>
#include <chrono>

#include "prat/errors.hpp"

namespace prat {

/* Cooperative cancellation shared between a coordinator and its workers.
 * Long loops call check() every few thousand iterations. */
class cancel_token
{
    using clock = std::chrono::steady_clock;

    std::atomic<bool> flag{false};
    std::atomic<clock::rep> deadline{clock::time_point::max().time_since_epoch().count()};

  public:
    void request() { flag.store(true, std::memory_order_relaxed); }

    void cancel_after(std::chrono::milliseconds ms)
    {
        deadline.store((clock::now() + ms).time_since_epoch().count(),
                       std::memory_order_relaxed);
    }

    bool requested() const
    {
        if (flag.load(std::memory_order_relaxed))
            return true;
        return clock::now().time_since_epoch().count()
               >= deadline.load(std::memory_order_relaxed);
    }

    void check() const
    {
        if (requested())
            throw cancelled();
    }
};

inline void check_cancel(cancel_token const * token)
{
    if (token)
        token->check();
}

} // namespace prat

#endif
