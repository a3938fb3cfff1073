#ifndef SURROMIX_PARALLEL_HPP
#define SURROMIX_PARALLEL_HPP

#include <cstddef>
#include <functional>
#include <span>

namespace surromix {

// Runs fn(i) for i in [0, count) on up to `threads` workers (0 = hardware
// concurrency). Tasks must write only to their own slots; the call rethrows
// the first task exception (by lowest index, so failures are deterministic
// too).
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn);

// Pairwise (cascade) summation: order-independent accumulation error and a
// result that depends only on the slot values, never on scheduling.
double pairwise_sum(std::span<const double> values);

}  // namespace surromix

#endif
