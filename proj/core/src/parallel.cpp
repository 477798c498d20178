#include "colldec/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace colldec
{

std::size_t worker_count()
{
    if (char const* env = std::getenv("COLLDEC_THREADS"))
    {
        try
        {
            auto const n = std::stoul(env);
            if (n > 0)
            {
                return n;
            }
        }
        catch (std::exception const&)
        {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void for_each_block(std::size_t n_blocks,
                    std::function<void(std::size_t)> const& fn)
{
    std::size_t const n_workers = std::min(worker_count(), n_blocks);
    if (n_workers <= 1)
    {
        for (std::size_t b = 0; b < n_blocks; ++b)
        {
            fn(b);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (std::size_t b = next++; b < n_blocks; b = next++)
        {
            try
            {
                fn(b);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error)
                {
                    error = std::current_exception();
                }
                next = n_blocks;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(n_workers - 1);
    for (std::size_t i = 1; i < n_workers; ++i)
    {
        pool.emplace_back(work);
    }
    work();
    for (auto& t : pool)
    {
        t.join();
    }
    if (error)
    {
        std::rethrow_exception(error);
    }
}

}  // namespace colldec
