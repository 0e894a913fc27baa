#include "romanoff/represent.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

#include "romanoff/errors.hpp"
#include "romanoff/fib.hpp"
#include "romanoff/parallel.hpp"

namespace romanoff {

SummandTable build_summands(u64 x) {
    SummandTable tab;
    tab.limit = x;
    // f_100, the first candidate past index 81, already exceeds 2^64, so
    // every representable x stops at k <= 9.
    for (u64 k = 0; k * k <= kMaxExactFibIndex; ++k) {
        u64 value = fib_exact(k * k);
        if (value > x) break;
        tab.entries.emplace_back(k, value);
    }
    return tab;
}

u64 r_count(u64 n, const PrimeSieve& sieve, const SummandTable& tab) {
    if (n > sieve.limit()) throw std::domain_error("r_count: n exceeds sieve limit");
    if (tab.limit < n) throw std::domain_error("r_count: summand table too small");
    if (n < 2) return 0;
    u64 count = 0;
    const std::size_t k = tab.entries.size();
    for (std::size_t i = 0; i < k; ++i) {
        const u64 vi = tab.entries[i].second;
        if (vi + 2 > n) break;
        for (std::size_t j = i; j < k; ++j) {
            const u64 s = vi + tab.entries[j].second;
            if (s + 2 > n) break;
            if (sieve.is_prime(n - s)) ++count;
        }
    }
    return count;
}

ReprHistogram histogram(u64 x, u64 prefix_cap, const PrimeSieve& sieve,
                        const RepresentOptions& options) {
    if (x < 2) throw std::domain_error("histogram: x must be >= 2");
    if (x > sieve.limit()) throw std::domain_error("histogram: x exceeds sieve limit");
    const SummandTable tab = build_summands(x);

    struct Partial {
        u64 c0 = 0, c1 = 0, c2 = 0, sum = 0, sum2 = 0;
        std::vector<u64> nonrep;
    };

    unsigned workers = options.threads == 0 ? default_thread_count() : options.threads;
    std::vector<Partial> partials(workers);
    std::atomic<u64> processed{0};
    ProgressMeter meter(options.progress, x);

    const u64 chunk = (x + workers - 1) / workers;
    run_workers(workers, [&](unsigned w, unsigned) {
        Partial& out = partials[w];
        const u64 lo = std::max<u64>(2, 1 + w * chunk);
        const u64 hi = std::min(x, (w + 1) * chunk);
        for (u64 n = lo; n <= hi; ++n) {
            u64 r = r_count(n, sieve, tab);
            if (r == 0) {
                ++out.c0;
                if (n <= prefix_cap) out.nonrep.push_back(n);
            } else if (r == 1) {
                ++out.c1;
            } else {
                ++out.c2;
            }
            out.sum += r;
            out.sum2 += r * r;
            if ((n & 0xffff) == 0) {
                u64 done = processed.fetch_add(0x10000) + 0x10000;
                if (w == 0) meter.tick(done);
            }
        }
    });

    ReprHistogram h;
    h.x = x;
    h.prefix_cap = prefix_cap;
    h.count_r0 = 1; // n = 1: no prime <= -1 exists
    if (prefix_cap >= 1) h.nonrep_prefix.push_back(1);
    for (const Partial& part : partials) {
        h.count_r0 += part.c0;
        h.count_r1 += part.c1;
        h.count_r2plus += part.c2;
        h.sum_r += part.sum;
        h.sum_r2 += part.sum2;
        h.nonrep_prefix.insert(h.nonrep_prefix.end(), part.nonrep.begin(), part.nonrep.end());
    }
    return h;
}

ReprHistogram histogram(u64 x, u64 prefix_cap, const RepresentOptions& options) {
    PrimeSieve sieve = sieve_primes(std::max<u64>(x, 2), u64{1} << 20, options.threads);
    return histogram(x, prefix_cap, sieve, options);
}

namespace {

// Distinct multiset sums of `terms` summand values, ascending, capped at max_sum.
std::vector<u64> multiset_sums(const std::vector<u64>& values, unsigned terms, u64 max_sum) {
    std::vector<u64> sums;
    std::vector<u64> stack;
    auto rec = [&](auto&& self, std::size_t start, unsigned left, u64 acc) -> void {
        if (left == 0) {
            sums.push_back(acc);
            return;
        }
        for (std::size_t i = start; i < values.size(); ++i) {
            u64 next = acc + values[i];
            if (next > max_sum) break;
            self(self, i, left - 1, next);
        }
    };
    rec(rec, 0, terms, 0);
    std::sort(sums.begin(), sums.end());
    sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
    return sums;
}

} // namespace

BitArray representable_with_terms(u64 x, unsigned terms, const PrimeSieve& sieve,
                                  const RepresentOptions& options) {
    if (terms < 1 || terms > 8) throw std::domain_error("representable_with_terms: terms must be in [1, 8]");
    if (x > 1'000'000'000) throw resource_error("representable_with_terms: x exceeds 1e9");
    if (x > sieve.limit()) throw std::domain_error("representable_with_terms: x exceeds sieve limit");

    std::vector<u64> values;
    for (const auto& [k, v] : build_summands(x).entries) values.push_back(v);
    const std::vector<u64> sums = x >= 2 ? multiset_sums(values, terms, x - 2) : std::vector<u64>{};

    BitArray result(x + 1);
    const std::vector<u64>& prime_words = sieve.words();
    const std::size_t word_count = result.words().size();
    std::atomic<u64> words_done{0};
    ProgressMeter meter(options.progress, word_count);

    // Each worker owns a contiguous word range of the result; all shifted
    // prime words are OR-ed into it. No merge step needed.
    unsigned workers = options.threads == 0 ? default_thread_count() : options.threads;
    run_workers(workers, [&](unsigned w, unsigned nw) {
        const std::size_t lo = word_count * w / nw;
        const std::size_t hi = word_count * (w + 1) / nw;
        u64* out = result.words().data();
        for (std::size_t word = lo; word < hi; ++word) {
            u64 acc = 0;
            for (u64 s : sums) {
                const u64 q = s >> 6;
                const unsigned r = static_cast<unsigned>(s & 63);
                if (word < q) break; // sums ascend; the rest shift past this word
                u64 v = prime_words[word - q];
                if (r != 0) {
                    v <<= r;
                    if (word - q >= 1) v |= prime_words[word - q - 1] >> (64 - r);
                }
                acc |= v;
            }
            out[word] = acc;
            if ((word & 0x3ff) == 0) {
                u64 done = words_done.fetch_add(0x400) + 0x400;
                if (w == 0) meter.tick(done);
            }
        }
    });

    // clear slack bits past x
    const u64 tail = x & 63;
    if (tail != 63) result.words().back() &= (u64{2} << tail) - 1;
    return result;
}

Counterexamples least_counterexamples(u64 x, unsigned terms, u64 count, const PrimeSieve& sieve,
                                      const RepresentOptions& options) {
    const BitArray rep = representable_with_terms(x, terms, sieve, options);
    Counterexamples result;
    if (count == 0) return result;
    for (u64 n = 2; n <= x; ++n) {
        if (!rep.test(n)) {
            result.values.push_back(n);
            if (result.values.size() >= count) return result;
        }
    }
    result.exhausted = true;
    return result;
}

MeanR mean_r(u64 x, const PrimeSieve& sieve, const RepresentOptions& options) {
    if (x < 2) throw std::domain_error("mean_r: x must be >= 2");
    ReprHistogram h = histogram(x, 0, sieve, options);
    return MeanR{h.sum_r, x};
}

} // namespace romanoff
