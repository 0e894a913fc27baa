#pragma once

#include <functional>
#include <vector>

#include "romanoff/numtheory.hpp"

namespace romanoff {

/// The finite set of summands f_{k^2} <= x, ascending in k (and in value).
struct SummandTable {
    u64 limit = 0;
    std::vector<std::pair<u64, u64>> entries; // (k, f_{k^2})
};

SummandTable build_summands(u64 x);

/// r(n): number of pairs k1 <= k2 from the table with n - f_{k1^2} - f_{k2^2}
/// prime (and >= 2). Preconditions: n <= sieve.limit(), tab.limit >= n.
u64 r_count(u64 n, const PrimeSieve& sieve, const SummandTable& tab);

/// Counts of n in [1, x] by r(n), with r(1) = 0 by convention (there is no
/// prime <= -1). count_r0 + count_r1 + count_r2plus = x.
struct ReprHistogram {
    u64 x = 0;
    u64 count_r0 = 0;
    u64 count_r1 = 0;
    u64 count_r2plus = 0;
    u64 sum_r = 0;
    u64 sum_r2 = 0;
    u64 prefix_cap = 0;
    std::vector<u64> nonrep_prefix; // all n <= min(x, prefix_cap) with r(n) = 0
};

struct RepresentOptions {
    unsigned threads = 0;
    std::function<void(u64, u64)> progress;
};

ReprHistogram histogram(u64 x, u64 prefix_cap, const PrimeSieve& sieve,
                        const RepresentOptions& options = {});

/// Convenience overload that builds its own sieve up to x.
ReprHistogram histogram(u64 x, u64 prefix_cap, const RepresentOptions& options = {});

/// Packed bits over [0, size).
class BitArray {
public:
    explicit BitArray(u64 size) : size_(size), words_((size >> 6) + 1, 0) {}

    bool test(u64 i) const { return ((words_[i >> 6] >> (i & 63)) & 1u) != 0; }
    u64 size() const { return size_; }
    std::vector<u64>& words() { return words_; }
    const std::vector<u64>& words() const { return words_; }

private:
    u64 size_;
    std::vector<u64> words_;
};

/// bit(n) = true iff n = p + a sum of `terms` summands (zeros allowed, so
/// t-representable implies t+1-representable). Computed by OR-ing the prime
/// bitset shifted by each multiset sum. Preconditions: terms in [1, 8],
/// x <= 1e9, sieve.limit() >= x.
BitArray representable_with_terms(u64 x, unsigned terms, const PrimeSieve& sieve,
                                  const RepresentOptions& options = {});

struct Counterexamples {
    std::vector<u64> values; // ascending n in (1, x] not representable
    bool exhausted = false;  // whole range scanned, fewer than `count` found
};

Counterexamples least_counterexamples(u64 x, unsigned terms, u64 count, const PrimeSieve& sieve,
                                      const RepresentOptions& options = {});

/// Mean of r over [1, x] as an exact integer ratio.
struct MeanR {
    u64 sum = 0;
    u64 x = 0;

    double value() const { return static_cast<double>(sum) / static_cast<double>(x); }
};

MeanR mean_r(u64 x, const PrimeSieve& sieve, const RepresentOptions& options = {});

} // namespace romanoff
