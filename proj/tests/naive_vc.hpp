#pragma once

// Brute-force VC dimension over plain vectors: enumerate every subset of
// the ground set and count distinct traces. Shares no code with the library.

#include <cstdint>
#include <set>
#include <vector>

namespace naive {

using Family = std::vector<std::vector<bool>>;

inline bool shattered(const Family& fam, const std::vector<int>& pts) {
  std::set<std::vector<bool>> traces;
  for (const auto& member : fam) {
    std::vector<bool> t;
    for (int p : pts) t.push_back(member[static_cast<std::size_t>(p)]);
    traces.insert(t);
  }
  return traces.size() == (std::size_t{1} << pts.size());
}

inline int vc_dimension(const Family& fam, int n) {
  if (fam.empty()) return -1;
  int best = 0;
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    std::vector<int> pts;
    for (int i = 0; i < n; ++i)
      if (s >> i & 1U) pts.push_back(i);
    if (static_cast<int>(pts.size()) > best && shattered(fam, pts)) best = static_cast<int>(pts.size());
  }
  return best;
}

/// Largest k such that some k members cut the ground set into all 2^k cells.
inline int dual_vc_dimension(const Family& fam, int n) {
  std::set<std::vector<bool>> uniq(fam.begin(), fam.end());
  const Family f(uniq.begin(), uniq.end());
  const int m = static_cast<int>(f.size());
  int best = 0;
  for (std::uint32_t s = 0; s < (1U << m); ++s) {
    std::vector<int> chosen;
    for (int i = 0; i < m; ++i)
      if (s >> i & 1U) chosen.push_back(i);
    if (static_cast<int>(chosen.size()) <= best) continue;
    std::set<std::vector<bool>> cells;
    for (int x = 0; x < n; ++x) {
      std::vector<bool> c;
      for (int i : chosen) c.push_back(f[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)]);
      cells.insert(c);
    }
    if (cells.size() == (std::size_t{1} << chosen.size())) best = static_cast<int>(chosen.size());
  }
  return best;
}

}  // namespace naive
