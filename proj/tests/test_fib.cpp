#include <doctest.h>

#include <cmath>
#include <random>

#include "romanoff/fib.hpp"

using namespace romanoff;

namespace {

// recurrence oracle, independent of fib_exact's loop shape
std::vector<u64> first_fibs(u64 upto) {
    std::vector<u64> f{0, 1};
    while (f.size() <= upto) f.push_back(f[f.size() - 1] + f[f.size() - 2]);
    return f;
}

} // namespace

TEST_CASE("fib_exact: definitional values and overflow guard") {
    CHECK(fib_exact(0) == 0);
    CHECK(fib_exact(1) == 1);
    auto oracle = first_fibs(92);
    CHECK(fib_exact(36) == oracle[36]);
    CHECK(fib_exact(36) == 14930352);
    for (u64 n = 0; n <= 92; ++n) CHECK(fib_exact(n) == oracle[n]);
    CHECK_THROWS_AS(fib_exact(93), std::overflow_error);
}

TEST_CASE("fib_pair_mod: examples") {
    FibPairMod base = fib_pair_mod(0, 97);
    CHECK(base.a == 0);
    CHECK(base.b == 1);

    CHECK(fib_pair_mod(16, 19).a == 18);
    CHECK(fib_pair_mod(10, 11).a == 0); // f_10 = 55

    CHECK_THROWS_AS(fib_pair_mod(5, 0), std::domain_error);
    CHECK_THROWS_AS(fib_pair_mod(5, 1), std::domain_error);
}

TEST_CASE("fib_mod: residues used by the covering cases") {
    CHECK(fib_mod(40, 17) == 3);
    CHECK(fib_mod(64, 107) == 86);
    CHECK((fib_mod(1 << 10, 12289) + fib_mod((1 << 10) + (1 << 13), 12289)) % 12289 == 5881);
    CHECK((fib_mod(1 << 12, 6143) + fib_mod((1 << 10) + (1 << 13), 6143)) % 6143 == 3107);
}

TEST_CASE("fib_mod agrees with fib_exact for all n <= 92, sampled moduli") {
    std::mt19937 rng(42);
    auto oracle = first_fibs(92);
    for (int round = 0; round < 200; ++round) {
        u64 m = 2 + rng() % 9999;
        for (u64 n = 0; n <= 92; ++n) CHECK(fib_mod(n, m) == oracle[n] % m);
    }
}

TEST_CASE("pair recurrence: b is the next value") {
    std::mt19937 rng(99);
    for (int round = 0; round < 500; ++round) {
        u64 n = rng() % 1'000'000;
        u64 m = 2 + rng() % 100'000;
        FibPairMod cur = fib_pair_mod(n, m);
        FibPairMod next = fib_pair_mod(n + 1, m);
        CHECK(next.a == cur.b);
        CHECK(next.b == (cur.a + cur.b) % m);
    }
}

TEST_CASE("Binet cross-check for n <= 70") {
    const long double alpha = (1.0L + std::sqrt(5.0L)) / 2.0L;
    const long double sqrt5 = std::sqrt(5.0L);
    long double power = 1.0L;
    for (u64 n = 0; n <= 70; ++n) {
        long double approx = power / sqrt5;
        long double exact = static_cast<long double>(fib_exact(n));
        CHECK(std::abs(exact - approx) < 1.0L);
        power *= alpha;
    }
}

TEST_CASE("periodicity over the 16 covering primes") {
    struct {
        u64 q;
        u64 period;
    } table[] = {{2, 3},      {3, 8},      {7, 16},     {17, 36},    {19, 18},    {47, 32},
                 {107, 72},   {127, 256},  {1087, 128}, {2207, 64},  {4481, 128}, {6143, 12288},
                 {12289, 6144}, {21503, 2048}, {34303, 1024}, {119809, 512}};
    std::mt19937_64 rng(20250810);
    for (const auto& entry : table) {
        for (int round = 0; round < 64; ++round) {
            u64 n = rng() % 1'000'000'000'000ULL;
            CHECK(fib_mod(n + entry.period, entry.q) == fib_mod(n, entry.q));
        }
    }
}

TEST_CASE("fast doubling handles moduli near 2^64") {
    // residues mod huge m are exact values while f_n fits
    const u64 m = ~u64{0} - 58; // 2^64 - 59, prime
    for (u64 n = 0; n <= 92; ++n) CHECK(fib_mod(n, m) == fib_exact(n));
    // and stay consistent under the recurrence beyond the exact range
    u64 a = fib_mod(200, m), b = fib_mod(201, m), c = fib_mod(202, m);
    CHECK(c == (static_cast<u128>(a) + b) % m);
}
