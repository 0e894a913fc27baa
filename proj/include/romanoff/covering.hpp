#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "romanoff/numtheory.hpp"

namespace romanoff {

/// The explicit constants of the covering argument: the 16 primes whose
/// product is M, the CRT residue systems defining n0 and p0, and the
/// 15-prime exclusion list.
struct CoveringConstants {
    std::array<u64, 16> primes_m;
    std::array<u64, 16> n0_residues; // n0 mod primes_m[i]
    std::array<u64, 16> p0_residues; // p0 mod primes_m[i]
    std::array<u64, 15> exclusion_primes; // primes_m minus 4481
    mpz_class m;
    mpz_class n0;
    mpz_class p0;
    mpz_class m1; // 769 * m
};

/// Constants constructed from the embedded residue systems and verified
/// against the embedded decimal expansions (throws integrity_error on any
/// mismatch). Cached; the returned reference is immutable and shareable.
const CoveringConstants& load_constants();

/// True iff one index class is 0 (mod 192) and the other is 64 or 128
/// (mod 192), in either order.
bool allowed_pair(u64 a, u64 b);

/// One residue-class pair of the quadratic scan.
struct ClassPair {
    u32 a;
    u32 b;
};

struct Eq2Report {
    u64 pairs_checked = 0;
    // (a, b, rho) with rho = (58 - f_{a^2} - f_{b^2}) mod 4481 hitting an
    // excluded prime's residue; must stay empty.
    std::vector<std::array<u64, 3>> counterexamples;

    bool ok() const { return counterexamples.empty(); }
};

/// Scans all (a, b) in [0, 64]^2 and checks that 58 - f_{a^2} - f_{b^2}
/// mod 4481 never lands on an exclusion-prime residue.
Eq2Report verify_eq2_exclusion();

struct CoveringReport;
struct CoveringOptions;

/// Per-prime tables T_q[i] = f_{(i^2 mod u(q))} mod q for i in [0, P),
/// interleaved so one index touches a single cache line. P must be 18432
/// (the reduced option, checked against the full 36864 table before use)
/// or a positive multiple of 36864.
class CoveringTables {
public:
    explicit CoveringTables(u64 check_modulus);

    u64 modulus() const { return modulus_; }
    bool reduced_checked() const { return reduced_checked_; }

    /// T_q[i] for the prime at `prime_index` in the primes_m order.
    u32 residue(unsigned prime_index, u64 i) const { return rows_[i].v[prime_index]; }

    /// Least prime q (in primes_m order) with n0 - T_q[a] - T_q[b] = 0
    /// (mod q), or nullopt if no prime of M divides it.
    std::optional<u64> least_witness(u64 a, u64 b) const;

    /// First prime (primes_m order) where f_{a^2} + f_{b^2} = n0 - p0
    /// (mod q) fails, or nullopt if the congruence holds for all 16.
    std::optional<u64> first_congruence_miss(u64 a, u64 b) const;

private:
    friend CoveringReport verify_theorem2_covering(u64, const CoveringOptions&);

    struct alignas(64) Row {
        u32 v[16];
    };

    u64 modulus_ = 0;
    bool reduced_checked_ = false;
    std::vector<Row> rows_;
    std::array<u32, 16> n0_mod_;  // n0 mod q
    std::array<u32, 16> diff_mod_; // (n0 - p0) mod q
    std::array<u32, 16> primes_;
};

struct CoveringReport {
    u64 check_modulus = 0;
    u64 pairs_scanned = 0;  // ordered pairs, = check_modulus^2
    u64 allowed_pairs = 0;
    // Ordered-pair counts of excluded pairs covered, primes_m order.
    std::array<u64, 16> witness_histogram{};
    u64 failure_count = 0;         // excluded pairs with no witness
    u64 allowed_failure_count = 0; // allowed pairs where some congruence fails
    // Ordered-pair counts of allowed pairs missing each prime's congruence.
    std::array<u64, 16> allowed_miss_histogram{};
    // Row-major samples, capped; counts above carry the full totals.
    std::vector<ClassPair> failures;
    std::vector<ClassPair> allowed_failures;
    bool reduced_table_checked = false;

    bool valid() const { return failure_count == 0 && allowed_failure_count == 0; }
};

struct CoveringOptions {
    unsigned threads = 0; // 0 = all available
    std::size_t sample_cap = 32;
    std::function<void(u64, u64)> progress; // (pairs done, pairs total)
};

/// Exhaustive residue-class scan over a <= b < P. Excluded pairs must have
/// a witness prime; allowed pairs are checked against the n0 - p0
/// congruence for all 16 primes. Failures are recorded, never thrown.
CoveringReport verify_theorem2_covering(u64 check_modulus = 36864,
                                        const CoveringOptions& options = {});

struct Theorem1Report {
    u64 u769 = 0;
    bool period_ok = false;      // u(769) = 192
    bool congruence_ok = false;  // 501 - f_0 - f_64 = 0 (mod 769)
    bool mod7_ok = false;        // 769 mod 7 = 6 differs from p0 mod 7 = 3
    bool coprime_ok = false;     // gcd(769, M) = 1
    bool projection_ok = false;  // n1 mod M = n0
    mpz_class n1;
    mpz_class m1;
    std::vector<std::string> failed_checks;

    bool ok() const { return failed_checks.empty(); }
};

/// Checks the 769-extension that produces the arithmetic progression
/// n1 (mod 769*M) of non-representable integers.
Theorem1Report verify_theorem1_extension();

} // namespace romanoff
