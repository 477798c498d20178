#pragma once

#include <cstddef>
#include <functional>

namespace colldec
{

/*!
 * Run fn(block) for block in [0, n_blocks) on a pool of worker threads.
 *
 * Callers write results into per-block slots and reduce them in block order
 * afterwards; the output is then independent of the worker count. The first
 * exception thrown by any block is rethrown here.
 */
void for_each_block(std::size_t n_blocks,
                    std::function<void(std::size_t)> const& fn);

/// Worker count used by for_each_block (hardware concurrency, at least 1).
/// COLLDEC_THREADS overrides it.
std::size_t worker_count();

}  // namespace colldec
