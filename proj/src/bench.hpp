#pragma once

#include <cstdint>
#include <string>

namespace ilog {

// Deterministic 64-bit generator (SplitMix64, Steele/Lea/Flood). Chosen so
// every benchmark input is a pure function of the seed: all space counts in a
// row reproduce exactly across runs and machines; only cpu_ms varies.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound), bound > 0. Rejection sampling keeps it unbiased.
  uint64_t below(uint64_t bound) {
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }
};

struct BenchRow {
  std::string bench;
  uint64_t n = 0;
  std::string mode;  // "intern" or "plain"
  double cpu_ms = 0.0;
  uint64_t trie_nodes = 0;      // symbol nodes over all call + answer tries
  uint64_t table_bytes = 0;     // nodes * 4 slots * 8 bytes
  uint64_t intern_records = 0;
  uint64_t intern_bytes = 0;    // records * (slots + 2) * 8 + bucket arrays
  std::string result;           // "recognized", "rejected", or a count
  bool exceeded = false;        // table budget hit; columns render as xx
};

// Runs one benchmark on a fresh engine and returns the filled row.
//   intern_list  time to intern a list of n distinct integers; result = the
//                number of canonical records created
//   islist       proper-list check over n distinct integers
//   epal         even-palindrome grammar over n/2 random integers in
//                [1, 10^7] appended to their reverse
//   lr           left-recursive grammar over n random symbols from {1,2,3}
//   find         binary search over the interned sorted list of the n even
//                integers 0..2n-2, probed with 100 odd keys (all absent)
// mode selects whether the table declarations carry `as intern`. Exceeding
// max_table_nodes marks the row instead of aborting.
BenchRow run_bench(const std::string& name, uint64_t n, const std::string& mode,
                   uint64_t seed, uint64_t max_table_nodes);

std::string bench_csv_header();
std::string bench_row_csv(const BenchRow& row);

}  // namespace ilog
