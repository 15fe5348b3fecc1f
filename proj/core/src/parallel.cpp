#include "lmorse/parallel.hpp"

#include "lmorse/error.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace lmorse {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

unsigned resolve_workers(std::optional<unsigned> requested) {
    if (requested && *requested > 0) return *requested;
    if (const char* env = std::getenv("LMORSE_WORKERS"); env != nullptr && *env != '\0') {
        unsigned v = 0;
        const auto* end = env + std::strlen(env);
        const auto [ptr, ec] = std::from_chars(env, end, v);
        if (ec != std::errc{} || ptr != end || v == 0) {
            throw Error(std::string("LMORSE_WORKERS must be a positive integer, got '") + env + "'");
        }
        return v;
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

void parallel_for_chunks(std::size_t chunks, unsigned workers,
                         const std::function<void(std::size_t)>& fn) {
    if (chunks == 0) return;
    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1U, workers), chunks));
    if (threads == 1) {
        for (std::size_t c = 0; c < chunks; ++c) fn(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t c = next.fetch_add(1);
                if (c >= chunks) return;
                try {
                    fn(c);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next.store(chunks);
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

}  // namespace lmorse
