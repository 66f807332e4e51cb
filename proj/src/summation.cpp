#include "gaussdens/summation.hpp"

namespace gaussdens {

unsigned default_workers() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

CompensatedSum reduce_blocks(std::int64_t first, std::int64_t last, std::int64_t block_size, unsigned workers,
                             const std::function<CompensatedSum(std::int64_t, std::int64_t)>& body) {
    CompensatedSum total;
    for (const auto& p : map_blocks<CompensatedSum>(first, last, block_size, workers, body)) total += p;
    return total;
}

}  // namespace gaussdens
