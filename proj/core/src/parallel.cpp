#include "chdyn/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace chdyn {

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void for_each_tile(int width, int height, int workers,
                   const std::function<void(const Tile&)>& body) {
  if (width <= 0 || height <= 0) return;
  const int tiles_x = (width + kTileSize - 1) / kTileSize;
  const int tiles_y = (height + kTileSize - 1) / kTileSize;
  const int total = tiles_x * tiles_y;
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (int t = next.fetch_add(1); t < total; t = next.fetch_add(1)) {
      const int tx = t % tiles_x;
      const int ty = t / tiles_x;
      const Tile tile{tx * kTileSize, ty * kTileSize, std::min(width, (tx + 1) * kTileSize),
                      std::min(height, (ty + 1) * kTileSize)};
      try {
        body(tile);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(total);
      }
    }
  };

  const int count = std::min(resolve_workers(workers), total);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(count > 0 ? count - 1 : 0));
  for (int i = 1; i < count; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace chdyn
