#pragma once

#include <map>
#include <memory>
#include <utility>

#include "phf/voronoi.hpp"

// Enumerations shared between tests of one binary; each lattice runs once.
inline const phf::EnumerationResult& cached_run(std::int64_t d, int cls, int n = 2) {
  static std::map<std::tuple<std::int64_t, int, int>, std::unique_ptr<phf::EnumerationResult>> cache;
  auto& slot = cache[{d, cls, n}];
  if (!slot) {
    phf::QuadField k(d);
    auto g = std::make_shared<const phf::ClassGroup>(phf::class_group(k));
    slot = std::make_unique<phf::EnumerationResult>(
        phf::enumerate_perfect(phf::OKLattice::standard(k, g, cls, n)));
  }
  return *slot;
}

// Every dimension-2 lattice of the small tables plus the free n = 3, d = 15 one.
inline std::vector<const phf::EnumerationResult*> property_runs() {
  std::vector<const phf::EnumerationResult*> out;
  for (auto [d, h] : {std::pair{15, 2}, {5, 2}, {23, 3}, {6, 2}, {10, 2}})
    for (int c = 0; c < h; ++c)
      if (d != 23 || c == 0) out.push_back(&cached_run(d, c));
  out.push_back(&cached_run(15, 0, 3));
  return out;
}
