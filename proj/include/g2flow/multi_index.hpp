#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace g2flow {

/// A strictly increasing multi-index over basis indices 1..n (n <= 8),
/// packed as a bitmask: bit (i-1) set  <=>  index i present.
using Mask = unsigned;

inline int mask_degree(Mask m) { return std::popcount(m); }

inline Mask full_mask(int dim) { return (1u << dim) - 1u; }

/// Lexicographic order of the expanded increasing index tuples.  For masks
/// of equal degree this is the canonical term order used everywhere
/// (serialization, printed output, coefficient vectors).
struct MaskLexLess {
  bool operator()(Mask a, Mask b) const {
    while (a != 0 && b != 0) {
      const int la = std::countr_zero(a);
      const int lb = std::countr_zero(b);
      if (la != lb) return la < lb;
      a &= a - 1;
      b &= b - 1;
    }
    return b != 0;  // strict prefix counts as smaller
  }
};

/// Sign of e^A wedge e^B relative to the sorted merge e^{A u B}:
/// 0 if A and B overlap, else (-1)^{#inversions between A and B}.
inline int merge_sign(Mask a, Mask b) {
  if ((a & b) != 0) return 0;
  int inversions = 0;
  Mask rest = b;
  while (rest != 0) {
    const int i = std::countr_zero(rest);
    inversions += std::popcount(a >> (i + 1));
    rest &= rest - 1;
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

/// Sign of the permutation taking (A, complement-of-A) to (1, ..., n).
inline int complement_sign(Mask a, int dim) {
  return merge_sign(a, full_mask(dim) & ~a);
}

std::vector<int> mask_to_indices(Mask m);

/// Builds a mask from 1-based indices; requires them strictly increasing
/// and within 1..dim.
Mask mask_from_indices(const std::vector<int>& idx, int dim);

/// All degree-k masks over dim, in canonical (lexicographic tuple) order.
std::vector<Mask> masks_of_degree(int dim, int k);

}  // namespace g2flow
