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

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "hybrid_rrt/error.hpp"

namespace hrrt {

struct Cell {
  int col = 0;
  int row = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// 2-D occupancy map, row-major with the origin at the top-left cell.
class OccupancyGrid {
 public:
  OccupancyGrid(int width, int height, std::vector<std::uint8_t> obstacles, double cell_size = 1.0)
      : width_(width), height_(height), cell_size_(cell_size), obstacles_(std::move(obstacles)) {
    if (width_ < 1 || height_ < 1) throw InvalidArgument("grid: dimensions must be positive");
    if (!(cell_size_ > 0.0)) throw InvalidArgument("grid: cell_size must be positive");
    if (obstacles_.size() != static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_))
      throw InvalidArgument("grid: cell count does not match dimensions");
    free_count_ = static_cast<int>(std::count(obstacles_.begin(), obstacles_.end(), std::uint8_t{0}));
    if (free_count_ == 0) throw InvalidArgument("grid: needs at least one free cell");
  }

  /// All-free grid.
  static OccupancyGrid empty(int width, int height, double cell_size = 1.0) {
    return OccupancyGrid(width, height,
                         std::vector<std::uint8_t>(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0),
                         cell_size);
  }

  /// Builds from rows of '.' (free) and '#' (obstacle).
  static OccupancyGrid from_rows(const std::vector<std::string>& rows, double cell_size = 1.0) {
    if (rows.empty()) throw MapLoadError("grid: no rows");
    const auto width = rows.front().size();
    std::vector<std::uint8_t> cells;
    cells.reserve(width * rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != width) throw MapLoadError("grid: row " + std::to_string(r) + " has a different width");
      for (char c : rows[r]) {
        if (c == '.') {
          cells.push_back(0);
        } else if (c == '#') {
          cells.push_back(1);
        } else {
          throw MapLoadError(std::string("grid: unexpected character '") + c + "' in row " + std::to_string(r));
        }
      }
    }
    try {
      return OccupancyGrid(static_cast<int>(width), static_cast<int>(rows.size()), std::move(cells), cell_size);
    } catch (const InvalidArgument& e) {
      throw MapLoadError(e.what());
    }
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  double cell_size() const noexcept { return cell_size_; }
  int free_count() const noexcept { return free_count_; }
  std::size_t cell_count() const noexcept { return obstacles_.size(); }

  /// Map area covered by free cells.
  double free_area() const noexcept { return free_count_ * cell_size_ * cell_size_; }
  double extent_x() const noexcept { return width_ * cell_size_; }
  double extent_y() const noexcept { return height_ * cell_size_; }

  bool in_bounds(Cell c) const noexcept { return c.col >= 0 && c.row >= 0 && c.col < width_ && c.row < height_; }

  std::size_t index(Cell c) const {
    if (!in_bounds(c)) throw InvalidArgument("grid: cell out of range");
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(c.col);
  }
  Cell cell_at(std::size_t idx) const noexcept {
    return Cell{static_cast<int>(idx % static_cast<std::size_t>(width_)), static_cast<int>(idx / static_cast<std::size_t>(width_))};
  }

  bool is_obstacle(Cell c) const { return obstacles_[index(c)] != 0; }
  bool is_free(Cell c) const { return !is_obstacle(c); }

  /// Cell containing a point in map units; may be out of bounds.
  Cell cell_of(double x, double y) const noexcept {
    return Cell{static_cast<int>(std::floor(x / cell_size_)), static_cast<int>(std::floor(y / cell_size_))};
  }

  std::string to_text() const {
    std::string out;
    out.reserve(obstacles_.size() + static_cast<std::size_t>(height_));
    for (int r = 0; r < height_; ++r) {
      for (int c = 0; c < width_; ++c) out.push_back(obstacles_[index({c, r})] ? '#' : '.');
      out.push_back('\n');
    }
    return out;
  }

 private:
  int width_;
  int height_;
  double cell_size_;
  std::vector<std::uint8_t> obstacles_;
  int free_count_ = 0;
};

namespace detail {

inline OccupancyGrid parse_pgm(std::istream& in, double cell_size, const std::string& origin) {
  auto token = [&]() {
    std::string t;
    char c;
    while (in.get(c)) {
      if (c == '#') {
        std::string skip;
        std::getline(in, skip);
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (!t.empty()) break;
        continue;
      }
      t.push_back(c);
    }
    return t;
  };
  if (token() != "P5") throw MapLoadError(origin + ": not a binary PGM");
  int w = 0, h = 0, maxval = 0;
  try {
    w = std::stoi(token());
    h = std::stoi(token());
    maxval = std::stoi(token());
  } catch (const std::exception&) {
    throw MapLoadError(origin + ": malformed PGM header");
  }
  if (w < 1 || h < 1 || maxval < 1 || maxval > 255) throw MapLoadError(origin + ": unsupported PGM header");
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (auto& cell : cells) {
    char px;
    if (!in.get(px)) throw MapLoadError(origin + ": truncated PGM data");
    cell = static_cast<unsigned char>(px) < 128 ? 1 : 0;
  }
  try {
    return OccupancyGrid(w, h, std::move(cells), cell_size);
  } catch (const InvalidArgument& e) {
    throw MapLoadError(origin + ": " + e.what());
  }
}

}  // namespace detail

/// Loads a text map ('.'/'#' rows) or a binary PGM (P5, pixel < 128 is an obstacle).
inline OccupancyGrid load_grid(const std::string& path, double cell_size = 1.0) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MapLoadError("cannot open map '" + path + "'");
  if (in.peek() == 'P') {
    return detail::parse_pgm(in, cell_size, path);
  }
  std::vector<std::string> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(line);
  }
  try {
    return OccupancyGrid::from_rows(rows, cell_size);
  } catch (const MapLoadError& e) {
    throw MapLoadError(path + ": " + e.what());
  }
}

}  // namespace hrrt
