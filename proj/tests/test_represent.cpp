#include <doctest.h>

#include <random>

#include "romanoff/errors.hpp"
#include "romanoff/fib.hpp"
#include "romanoff/represent.hpp"

using namespace romanoff;

namespace {

bool trial_division_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// naive triple loop straight off the definition: (p, k1, k2), k1 <= k2
u64 r_oracle(u64 n) {
    u64 count = 0;
    for (u64 k1 = 0; k1 * k1 <= 92; ++k1) {
        u64 f1 = fib_exact(k1 * k1);
        if (f1 > n) break;
        for (u64 k2 = k1; k2 * k2 <= 92; ++k2) {
            u64 f2 = fib_exact(k2 * k2);
            if (f1 + f2 > n) break;
            u64 p = n - f1 - f2;
            if (trial_division_prime(p)) ++count;
        }
    }
    return count;
}

const PrimeSieve& shared_sieve() {
    static PrimeSieve sieve = sieve_primes(1'000'000);
    return sieve;
}

} // namespace

TEST_CASE("build_summands") {
    SummandTable t100 = build_summands(100);
    REQUIRE(t100.entries.size() == 4);
    CHECK(t100.entries[0] == std::pair<u64, u64>{0, 0});
    CHECK(t100.entries[1] == std::pair<u64, u64>{1, 1});
    CHECK(t100.entries[2] == std::pair<u64, u64>{2, 3});
    CHECK(t100.entries[3] == std::pair<u64, u64>{3, 34});

    SummandTable t1e8 = build_summands(100'000'000);
    CHECK(t1e8.entries.size() == 7);
    CHECK(t1e8.entries.back() == std::pair<u64, u64>{6, 14930352});

    SummandTable t0 = build_summands(0);
    REQUIRE(t0.entries.size() == 1);
    CHECK(t0.entries[0] == std::pair<u64, u64>{0, 0});

    // strictly increasing values
    SummandTable big = build_summands(~u64{0});
    for (std::size_t i = 1; i < big.entries.size(); ++i)
        CHECK(big.entries[i - 1].second < big.entries[i].second);
}

TEST_CASE("r_count: anchors") {
    const PrimeSieve& sieve = shared_sieve();
    SummandTable tab = build_summands(1000);
    CHECK(r_count(28, sieve, tab) == 0);
    CHECK(r_count(2, sieve, tab) == 1);  // p = 2, k1 = k2 = 0
    CHECK(r_count(10, sieve, tab) == 1); // p = 7, k1 = 0, k2 = 2
    CHECK(r_count(1, sieve, tab) == 0);
}

TEST_CASE("r_count equals the naive triple loop up to 2000") {
    const PrimeSieve& sieve = shared_sieve();
    SummandTable tab = build_summands(2000);
    for (u64 n = 1; n <= 2000; ++n) CHECK(r_count(n, sieve, tab) == r_oracle(n));
}

TEST_CASE("histogram at 206 reproduces the non-representable prefix") {
    ReprHistogram h = histogram(206, 206, shared_sieve());
    CHECK(h.nonrep_prefix == std::vector<u64>{1, 28, 122, 125, 156, 178, 189, 190, 206});
    CHECK(h.count_r0 == 9);
    CHECK(h.count_r0 + h.count_r1 + h.count_r2plus == 206);
    CHECK(h.sum_r2 >= h.sum_r);
}

TEST_CASE("histogram: small-x counts") {
    ReprHistogram h10 = histogram(10, 10, shared_sieve());
    CHECK(h10.count_r0 == 1); // only n = 1
    CHECK(h10.nonrep_prefix == std::vector<u64>{1});

    ReprHistogram h1000 = histogram(1000, 1000, shared_sieve());
    CHECK(h1000.count_r0 == 100);
    CHECK(h1000.count_r0 + h1000.count_r1 + h1000.count_r2plus == 1000);

    CHECK_THROWS_AS(histogram(1, 1, shared_sieve()), std::domain_error);
}

TEST_CASE("histogram: sum_r agrees with r_count on a random sample") {
    ReprHistogram h = histogram(50'000, 0, shared_sieve());
    SummandTable tab = build_summands(50'000);
    u64 direct = 0;
    for (u64 n = 1; n <= 50'000; ++n) direct += r_count(n, shared_sieve(), tab);
    CHECK(h.sum_r == direct);

    // partial sums are partition-independent
    RepresentOptions one_thread;
    one_thread.threads = 1;
    ReprHistogram h1 = histogram(50'000, 0, shared_sieve(), one_thread);
    CHECK(h1.count_r0 == h.count_r0);
    CHECK(h1.sum_r == h.sum_r);
    CHECK(h1.sum_r2 == h.sum_r2);
}

TEST_CASE("representable_with_terms: t = 2 matches r_count positivity") {
    const PrimeSieve& sieve = shared_sieve();
    const u64 x = 100'000;
    BitArray bits = representable_with_terms(x, 2, sieve);
    SummandTable tab = build_summands(x);
    for (u64 n = 2; n <= x; ++n) CHECK(bits.test(n) == (r_count(n, sieve, tab) > 0));
    CHECK_FALSE(bits.test(0));
    CHECK_FALSE(bits.test(1));
}

TEST_CASE("representable_with_terms: t = 1 anchor and monotonicity in t") {
    const PrimeSieve& sieve = shared_sieve();
    BitArray t1 = representable_with_terms(100'000, 1, sieve);
    CHECK(t1.test(4)); // 4 = 3 + f_1
    CHECK_FALSE(t1.test(1));

    BitArray prev = std::move(t1);
    for (unsigned t = 2; t <= 6; ++t) {
        BitArray next = representable_with_terms(100'000, t, sieve);
        for (u64 n = 2; n <= 100'000; ++n)
            if (prev.test(n)) CHECK(next.test(n)); // zero summand keeps n representable
        prev = std::move(next);
    }

    CHECK_THROWS_AS(representable_with_terms(100, 0, sieve), std::domain_error);
    CHECK_THROWS_AS(representable_with_terms(100, 9, sieve), std::domain_error);
}

TEST_CASE("least_counterexamples") {
    const PrimeSieve& sieve = shared_sieve();
    Counterexamples c = least_counterexamples(206, 2, 3, sieve);
    CHECK(c.values == std::vector<u64>{28, 122, 125});
    CHECK_FALSE(c.exhausted);

    Counterexamples all = least_counterexamples(206, 2, 1'000, sieve);
    CHECK(all.values == std::vector<u64>{28, 122, 125, 156, 178, 189, 190, 206});
    CHECK(all.exhausted);

    // six terms cover everything this small
    Counterexamples none = least_counterexamples(100'000, 6, 1, sieve);
    CHECK(none.values.empty());
    CHECK(none.exhausted);
}

TEST_CASE("mean_r at 100: exact rational against the naive oracle") {
    PrimeSieve sieve = sieve_primes(100);
    MeanR m = mean_r(100, sieve);
    u64 direct = 0;
    for (u64 n = 1; n <= 100; ++n) direct += r_oracle(n);
    CHECK(m.sum == direct);
    CHECK(m.x == 100);
    CHECK(m.value() == doctest::Approx(static_cast<double>(direct) / 100.0));
}
