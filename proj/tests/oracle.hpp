#pragma once

// Test-side reference implementations. They share nothing with the library
// beyond the value types: moves are generated from bitmasks, positions are
// plain vectors, and memo tables are std::map.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using Heights = std::vector<std::uint64_t>;

inline bool size_allowed(const std::vector<int>& moves, int k) {
  return std::find(moves.begin(), moves.end(), k) != moves.end();
}

// Every legal child of h (labeled, unsorted).
inline std::vector<Heights> children(const Heights& h, const std::vector<int>& moves) {
  std::vector<Heights> out;
  const std::size_t n = h.size();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (!size_allowed(moves, __builtin_popcount(mask))) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      if ((mask >> i & 1) && h[i] == 0) ok = false;
    if (!ok) continue;
    Heights c = h;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) --c[i];
    out.push_back(std::move(c));
  }
  return out;
}

inline Heights sorted(Heights h) {
  std::sort(h.begin(), h.end());
  return h;
}

// Normal play: true when the player to move wins.
class Outcomes {
public:
  explicit Outcomes(std::vector<int> moves) : moves_(std::move(moves)) {}
  bool next_wins(const Heights& raw) {
    const Heights h = sorted(raw);
    if (auto it = memo_.find(h); it != memo_.end()) return it->second;
    bool win = false;
    for (const Heights& c : children(h, moves_))
      if (!next_wins(c)) {
        win = true;
        break;
      }
    memo_[h] = win;
    return win;
  }
  char cls(const Heights& h) { return next_wins(h) ? 'N' : 'P'; }

private:
  std::vector<int> moves_;
  std::map<Heights, bool> memo_;
};

// u_i: the least height stack i can be brought to by any legal sequence.
inline Heights unplayable(const Heights& start, const std::vector<int>& moves) {
  std::set<Heights> seen{start};
  std::vector<Heights> todo{start};
  Heights lowest = start;
  while (!todo.empty()) {
    Heights h = todo.back();
    todo.pop_back();
    for (std::size_t i = 0; i < h.size(); ++i) lowest[i] = std::min(lowest[i], h[i]);
    for (Heights& c : children(h, moves))
      if (seen.insert(c).second) todo.push_back(std::move(c));
  }
  return lowest;
}

// All non-decreasing length-n vectors with entries <= hmax.
inline std::vector<Heights> canonical(int n, std::uint64_t hmax) {
  std::vector<Heights> out;
  Heights cur(static_cast<std::size_t>(n), 0);
  while (true) {
    out.push_back(cur);
    int i = n - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == hmax) --i;
    if (i < 0) break;
    const std::uint64_t v = cur[static_cast<std::size_t>(i)] + 1;
    for (int j = i; j < n; ++j) cur[static_cast<std::size_t>(j)] = v;
  }
  return out;
}

}  // namespace oracle
