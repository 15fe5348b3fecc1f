#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>

namespace lmorse {

/// Worker count: explicit value if given, else the LMORSE_WORKERS environment
/// variable, else hardware concurrency. Always at least 1.
unsigned resolve_workers(std::optional<unsigned> requested = std::nullopt);

/// Runs fn(chunk) for chunk in [0, chunks) on up to `workers` threads. Chunks
/// are claimed dynamically; fn must only write state owned by its chunk.
/// The first exception thrown by any chunk is rethrown after all threads join.
void parallel_for_chunks(std::size_t chunks, unsigned workers,
                         const std::function<void(std::size_t)>& fn);

/// Deterministic stream for (seed, stream) pairs.
class SeededRng {
public:
    SeededRng(std::uint64_t seed, std::uint64_t stream);

    /// Uniform in [0, 1) from the top 53 bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace lmorse
