#pragma once

#include <functional>

namespace chdyn {

inline constexpr int kTileSize = 64;

struct Tile {
  int x0, y0, x1, y1;  // half-open pixel ranges [x0, x1) x [y0, y1)
};

/// Number of worker threads to use for `requested` (0 means one per hardware thread).
int resolve_workers(int requested);

/// Calls body once per 64x64 tile of a width x height raster, on up to
/// `workers` threads. Tiles are handed out from a shared counter; the body must
/// only write to pixels inside its tile. The first exception is rethrown.
void for_each_tile(int width, int height, int workers, const std::function<void(const Tile&)>& body);

}  // namespace chdyn
