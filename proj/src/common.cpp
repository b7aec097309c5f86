#include "sigmapart/common.hpp"

#include <atomic>

namespace sigmapart {

namespace {
std::atomic<unsigned> g_workers{1};
}

void set_worker_count(unsigned workers) { g_workers.store(workers == 0 ? 1 : workers); }

unsigned worker_count() { return g_workers.load(); }

}  // namespace sigmapart
