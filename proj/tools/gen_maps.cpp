/*
 * Copyright 2026 The hybrid-rrt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Writes the bundled benchmark maps: open, corridor and cluttered.
// Usage: gen_maps <out_dir> [size] [seed]

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <queue>
#include <string>
#include <vector>

#include "hybrid_rrt/grid.hpp"
#include "hybrid_rrt/rng.hpp"

namespace {

using Cells = std::vector<std::uint8_t>;

void fill_rect(Cells& c, int size, int c0, int r0, int w, int h) {
  for (int r = std::max(0, r0); r < std::min(size, r0 + h); ++r)
    for (int col = std::max(0, c0); col < std::min(size, c0 + w); ++col)
      c[static_cast<std::size_t>(r * size + col)] = 1;
}

// Closes every free pocket except the largest 4-connected one.
void keep_largest_component(Cells& c, int size) {
  std::vector<int> label(c.size(), -1);
  std::vector<int> sizes;
  for (std::size_t start = 0; start < c.size(); ++start) {
    if (c[start] || label[start] >= 0) continue;
    const int id = static_cast<int>(sizes.size());
    sizes.push_back(0);
    std::queue<std::size_t> q;
    q.push(start);
    label[start] = id;
    while (!q.empty()) {
      const auto i = q.front();
      q.pop();
      ++sizes.back();
      const int r = static_cast<int>(i) / size, col = static_cast<int>(i) % size;
      const int nr[4] = {r - 1, r + 1, r, r}, nc[4] = {col, col, col - 1, col + 1};
      for (int k = 0; k < 4; ++k) {
        if (nr[k] < 0 || nc[k] < 0 || nr[k] >= size || nc[k] >= size) continue;
        const auto j = static_cast<std::size_t>(nr[k] * size + nc[k]);
        if (c[j] || label[j] >= 0) continue;
        label[j] = id;
        q.push(j);
      }
    }
  }
  int best = 0;
  for (int i = 1; i < static_cast<int>(sizes.size()); ++i)
    if (sizes[static_cast<std::size_t>(i)] > sizes[static_cast<std::size_t>(best)]) best = i;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c[i] && label[i] != best) c[i] = 1;
}

Cells corridor(int size) {
  Cells c(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), 0);
  // Serpentine: horizontal walls with the gap alternating between the ends.
  const int walls = 3, thick = std::max(1, size / 64), gap = std::max(2, size / 8);
  for (int w = 1; w <= walls; ++w) {
    const int row = w * size / (walls + 1);
    if (w % 2) {
      fill_rect(c, size, 0, row, size - gap, thick);
    } else {
      fill_rect(c, size, gap, row, size - gap, thick);
    }
  }
  return c;
}

Cells cluttered(int size, std::uint64_t seed) {
  Cells c(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), 0);
  hrrt::Rng rng(seed);
  const int blocks = size * size / 1100;
  for (int i = 0; i < blocks; ++i) {
    const int w = static_cast<int>(rng.uniform_int(size / 64 + 1, size / 12));
    const int h = static_cast<int>(rng.uniform_int(size / 64 + 1, size / 12));
    fill_rect(c, size, static_cast<int>(rng.uniform_int(0, size - 1)), static_cast<int>(rng.uniform_int(0, size - 1)),
              w, h);
  }
  keep_largest_component(c, size);
  return c;
}

void save(const std::filesystem::path& path, const Cells& c, int size) {
  const hrrt::OccupancyGrid grid(size, size, c);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hrrt::IoError("cannot write '" + path.string() + "'");
  out << grid.to_text();
  std::cout << path.string() << ": " << grid.free_count() << " free cells\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: gen_maps <out_dir> [size] [seed]\n";
    return 1;
  }
  try {
    const std::filesystem::path dir(argv[1]);
    const int size = argc > 2 ? std::atoi(argv[2]) : 256;
    const std::uint64_t seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 7;
    if (size < 16) throw hrrt::InvalidArgument("size must be at least 16");
    std::filesystem::create_directories(dir);
    save(dir / "open.map", Cells(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), 0), size);
    save(dir / "corridor.map", corridor(size), size);
    save(dir / "cluttered.map", cluttered(size, seed), size);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
