#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace orth {

// Sets of possibilities are 64-bit masks; frames are capped at 64 points.
using Mask = std::uint64_t;

constexpr int kMaxPoints = 64;

inline Mask bit(int i) { return Mask{1} << i; }
inline bool has(Mask m, int i) { return (m >> i) & 1u; }
inline int count(Mask m) { return std::popcount(m); }
inline Mask full(int n) { return n >= 64 ? ~Mask{0} : (bit(n) - 1); }
inline bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

// Visit set bits in increasing order.
template <class F>
inline void each(Mask m, F&& f) {
  while (m) {
    int i = std::countr_zero(m);
    f(i);
    m &= m - 1;
  }
}

inline std::vector<int> members(Mask m) {
  std::vector<int> out;
  each(m, [&](int i) { out.push_back(i); });
  return out;
}

}  // namespace orth
