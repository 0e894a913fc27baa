#pragma once

#include <optional>
#include <vector>

#include "romanoff/numtheory.hpp"

namespace romanoff {

/// A prime together with its Pisano period u(q).
struct PisanoRecord {
    u64 q;
    u64 period;
};

/// Least u >= 1 with (f_u, f_{u+1}) = (0, 1) mod q, by iterating the pair
/// recurrence. Results are memoized in a process-wide insert-only cache.
/// Preconditions: q prime, q <= 1e7. The iteration cap 6q+2 encodes the
/// classical period bound; hitting it signals an arithmetic bug.
u64 pisano_period(u64 q);

/// u(p) if u(p) <= n, otherwise nullopt; decided in at most n steps.
/// Works for any modulus p >= 2, however large.
std::optional<u64> period_at_most(u64 p, u64 n);

/// v(d) = max u(p) over primes p | d, with v(1) = 1.
/// Factoring budget d <= 1e12 (trial division).
u64 v_of(u64 d);

/// Number of l in [0, u(p)) with f_l = c (mod p). Preconditions: p prime
/// <= 1e5, c < p.
u64 fib_residue_count(u64 p, u64 c);

/// Fiber sizes for every residue class at once: result[c] = number of
/// l in [0, u(p)) with f_l = c (mod p). One pass over the period.
std::vector<u64> fib_residue_histogram(u64 p);

/// S_n = { p prime : u(p) <= n }, for 2 <= n <= 60. Candidates are the
/// prime factors of f_1..f_n (every p with u(p) <= n divides f_{u(p)}),
/// filtered by the period probe.
std::vector<u64> primes_with_period_upto(u64 n);

} // namespace romanoff
