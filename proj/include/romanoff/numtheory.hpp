#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace romanoff {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// A value modulo a modulus, kept reduced into [0, modulus).
struct Residue {
    mpz_class modulus;
    mpz_class value;

    Residue(mpz_class mod, mpz_class val);

    bool operator==(const Residue&) const = default;
};

/// An ordered list of congruences with pairwise coprime moduli.
struct CongruenceSystem {
    std::vector<Residue> congruences;

    explicit CongruenceSystem(std::vector<Residue> rs);
};

/// Packed primality table over [0, limit], one bit per integer.
/// Immutable once built; safe to share across threads read-only.
class PrimeSieve {
public:
    PrimeSieve() = default;

    u64 limit() const { return limit_; }

    bool is_prime(u64 n) const {
        return n <= limit_ && ((words_[n >> 6] >> (n & 63)) & 1u) != 0;
    }

    /// Number of primes <= limit.
    u64 count() const { return count_; }

    const std::vector<u64>& words() const { return words_; }

private:
    friend PrimeSieve sieve_primes(u64, u64, unsigned, u64);

    u64 limit_ = 0;
    u64 count_ = 0;
    std::vector<u64> words_;
};

/// Segmented sieve of Eratosthenes. segment_size is in integers and must be
/// a power of two; segments are sieved independently across `threads`
/// workers (0 = all available). Throws resource_error if limit > max_limit.
PrimeSieve sieve_primes(u64 limit, u64 segment_size = u64{1} << 20, unsigned threads = 0,
                        u64 max_limit = u64{4'000'000'000});

/// Combines two congruences with coprime moduli into one modulo the product.
/// Throws std::domain_error if the moduli share a factor.
Residue crt_pair(const Residue& r1, const Residue& r2);

/// Left fold of crt_pair over a nonempty system.
Residue crt_system(const CongruenceSystem& sys);

/// Trial-division factorization, (prime, exponent) pairs in ascending order.
std::vector<std::pair<u64, u32>> factorize(u64 n);

/// Mobius function.
int mobius(u64 n);

/// Largest prime divisor of n; 0 for n = 1.
u64 largest_prime_factor(u64 n);

/// Number of y in [0, K) with y^2 = a (mod K), by enumerating every y.
/// Throws resource_error if K exceeds the enumeration budget.
u64 count_sqrt_solutions(u64 a, u64 k, u64 budget = 1'000'000);

} // namespace romanoff
