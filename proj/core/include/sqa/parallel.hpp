#ifndef SQA_PARALLEL_HPP
#define SQA_PARALLEL_HPP

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace sqa {

// Runs fn(i) for i in [0, count) on up to `threads` workers. Work items
// must be independent; output determinism comes from indexing results by
// i, never by completion order.
inline void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    };
    std::vector<std::thread> pool;
    const int k = std::min(threads, count);
    pool.reserve(k);
    for (int t = 0; t < k; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace sqa

#endif
