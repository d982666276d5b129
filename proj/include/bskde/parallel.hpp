#pragma once

#include <cstddef>
#include <functional>

namespace bskde {

/// Number of worker threads used when a caller passes 0.
std::size_t default_parallelism();

/// Runs fn(i) for every i in [0, count). Each index must write only its own
/// outputs; results are then bitwise independent of the thread count.
/// threads == 0 picks default_parallelism(), threads == 1 runs inline.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace bskde
