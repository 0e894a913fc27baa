#include "romanoff/pisano.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

#include "romanoff/errors.hpp"
#include "romanoff/fib.hpp"

namespace romanoff {

namespace {

bool is_prime_u64_small(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2))
        if (n % d == 0) return false;
    return true;
}

// Insert-only memo table: concurrent readers, serialized insertion.
class PisanoCache {
public:
    std::optional<u64> get(u64 q) const {
        std::shared_lock lock(mutex_);
        auto it = map_.find(q);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }

    void put(u64 q, u64 period) {
        std::unique_lock lock(mutex_);
        map_.emplace(q, period);
    }

private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<u64, u64> map_;
};

PisanoCache& cache() {
    static PisanoCache c;
    return c;
}

} // namespace

u64 pisano_period(u64 q) {
    if (q > 10'000'000) throw resource_error("pisano_period: q exceeds supported bound 1e7");
    if (auto hit = cache().get(q)) return *hit;
    if (!is_prime_u64_small(q)) throw std::domain_error("pisano_period: q must be prime");

    const u64 cap = 6 * q + 2;
    u64 a = 0, b = 1;
    for (u64 i = 1; i <= cap; ++i) {
        u64 c = (a + b) % q;
        a = b;
        b = c;
        if (a == 0 && b == 1) {
            cache().put(q, i);
            return i;
        }
    }
    throw std::logic_error("pisano_period: exceeded 6q+2 iterations");
}

std::optional<u64> period_at_most(u64 p, u64 n) {
    if (p < 2) throw std::domain_error("period_at_most: modulus must be >= 2");
    u64 a = 0, b = 1;
    for (u64 i = 1; i <= n; ++i) {
        u64 c = (a + b) % p;
        a = b;
        b = c;
        if (a == 0 && b == 1) return i;
    }
    return std::nullopt;
}

u64 v_of(u64 d) {
    if (d == 0) throw std::domain_error("v_of: d must be >= 1");
    if (d > 1'000'000'000'000ULL) throw resource_error("v_of: d exceeds factoring budget 1e12");
    if (d == 1) return 1;
    u64 best = 0;
    for (const auto& [p, e] : factorize(d)) best = std::max(best, pisano_period(p));
    return best;
}

u64 fib_residue_count(u64 p, u64 c) {
    if (p > 100'000) throw resource_error("fib_residue_count: p exceeds supported bound 1e5");
    if (c >= p) throw std::domain_error("fib_residue_count: residue must be < p");
    const u64 period = pisano_period(p);
    u64 count = 0;
    u64 a = 0, b = 1;
    for (u64 l = 0; l < period; ++l) {
        if (a == c) ++count;
        u64 t = (a + b) % p;
        a = b;
        b = t;
    }
    return count;
}

std::vector<u64> fib_residue_histogram(u64 p) {
    if (p > 100'000) throw resource_error("fib_residue_histogram: p exceeds supported bound 1e5");
    const u64 period = pisano_period(p);
    std::vector<u64> counts(p, 0);
    u64 a = 0, b = 1;
    for (u64 l = 0; l < period; ++l) {
        ++counts[a];
        u64 t = (a + b) % p;
        a = b;
        b = t;
    }
    return counts;
}

std::vector<u64> primes_with_period_upto(u64 n) {
    if (n < 2) throw std::domain_error("primes_with_period_upto: n must be >= 2");
    if (n > 60) throw resource_error("primes_with_period_upto: n exceeds supported bound 60");

    std::set<u64> candidates;
    for (u64 k = 1; k <= n; ++k)
        for (const auto& [p, e] : factorize(fib_exact(k))) candidates.insert(p);

    std::vector<u64> result;
    for (u64 p : candidates) {
        auto u = period_at_most(p, n);
        if (u.has_value()) result.push_back(p);
    }
    return result;
}

} // namespace romanoff
