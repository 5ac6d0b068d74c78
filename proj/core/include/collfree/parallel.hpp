#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace collfree {

/// Number of threads to use: `requested`, or the hardware concurrency when 0.
unsigned resolve_workers(unsigned requested);

/// Calls fn(block) exactly once for every block in [0, blocks), spreading the
/// blocks over up to `workers` threads. Callers keep one result slot per block
/// and reduce in block order, which keeps results independent of `workers`.
void for_each_block(std::size_t blocks, unsigned workers,
                    const std::function<void(std::size_t)>& fn);

/// Minimum over index pairs with lexicographic tie-breaking, so that the
/// reduction order never changes the reported witness.
struct PairMinimum {
  double value = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  std::size_t j = 0;
  bool found = false;

  void offer(double v, std::size_t a, std::size_t b) {
    if (!found || v < value || (v == value && (a < i || (a == i && b < j)))) {
      value = v;
      i = a;
      j = b;
      found = true;
    }
  }
  void merge(const PairMinimum& other) {
    if (other.found) offer(other.value, other.i, other.j);
  }
};

/// SplitMix64 step; used to derive independent per-block seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 1));
}

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

inline constexpr std::size_t kPairBlocks = 64;

/// Minimum of value(i, j) over all 0 <= i < j < n. Rows are dealt to
/// kPairBlocks interleaved blocks; the result does not depend on `workers`.
template <typename F>
PairMinimum minimize_over_pairs(std::size_t n, unsigned workers, F&& value) {
  std::vector<PairMinimum> partial(kPairBlocks);
  for_each_block(kPairBlocks, workers, [&](std::size_t block) {
    PairMinimum local;
    for (std::size_t i = block; i < n; i += kPairBlocks)
      for (std::size_t j = i + 1; j < n; ++j) local.offer(value(i, j), i, j);
    partial[block] = local;
  });
  PairMinimum total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

}  // namespace collfree
