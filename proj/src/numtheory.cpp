#include "romanoff/numtheory.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "romanoff/errors.hpp"
#include "romanoff/parallel.hpp"

namespace romanoff {

Residue::Residue(mpz_class mod, mpz_class val) : modulus(std::move(mod)), value(std::move(val)) {
    if (modulus < 1) throw std::domain_error("Residue: modulus must be >= 1");
    mpz_mod(value.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t());
}

CongruenceSystem::CongruenceSystem(std::vector<Residue> rs) : congruences(std::move(rs)) {
    for (std::size_t i = 0; i < congruences.size(); ++i) {
        for (std::size_t j = i + 1; j < congruences.size(); ++j) {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), congruences[i].modulus.get_mpz_t(),
                    congruences[j].modulus.get_mpz_t());
            if (g != 1) throw std::domain_error("CongruenceSystem: moduli not pairwise coprime");
        }
    }
}

namespace {

u64 isqrt_u64(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Plain byte sieve for the base primes up to `limit`.
std::vector<u64> base_primes(u64 limit) {
    std::vector<unsigned char> mark(limit + 1, 1);
    mark[0] = 0;
    if (limit >= 1) mark[1] = 0;
    for (u64 i = 2; i * i <= limit; ++i)
        if (mark[i])
            for (u64 j = i * i; j <= limit; j += i) mark[j] = 0;
    std::vector<u64> primes;
    for (u64 i = 2; i <= limit; ++i)
        if (mark[i]) primes.push_back(i);
    return primes;
}

} // namespace

PrimeSieve sieve_primes(u64 limit, u64 segment_size, unsigned threads, u64 max_limit) {
    if (limit < 2) throw std::domain_error("sieve_primes: limit must be >= 2");
    if (limit > max_limit) throw resource_error("sieve_primes: limit exceeds memory budget");
    if (segment_size == 0 || (segment_size & (segment_size - 1)) != 0 || segment_size % 64 != 0)
        throw std::domain_error("sieve_primes: segment size must be a power of two >= 64");

    PrimeSieve sieve;
    sieve.limit_ = limit;
    sieve.words_.assign((limit >> 6) + 1, ~u64{0});

    const auto primes = base_primes(isqrt_u64(limit));
    const u64 segments = (limit + segment_size) / segment_size;

    std::atomic<u64> next{0};
    run_workers(threads, [&](unsigned, unsigned) {
        for (;;) {
            u64 seg = next.fetch_add(1);
            if (seg >= segments) break;
            const u64 lo = seg * segment_size;
            const u64 hi = std::min(lo + segment_size - 1, limit);
            u64* words = sieve.words_.data();
            for (u64 p : primes) {
                u64 start = std::max(p * p, ((lo + p - 1) / p) * p);
                for (u64 j = start; j <= hi; j += p) words[j >> 6] &= ~(u64{1} << (j & 63));
            }
        }
    });

    // 0 and 1 are not prime; clear the slack bits past `limit`.
    sieve.words_[0] &= ~u64{3};
    const u64 tail = limit & 63;
    if (tail != 63) sieve.words_.back() &= (u64{2} << tail) - 1;

    u64 count = 0;
    for (u64 w : sieve.words_) count += static_cast<u64>(std::popcount(w));
    sieve.count_ = count;
    return sieve;
}

Residue crt_pair(const Residue& r1, const Residue& r2) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r1.modulus.get_mpz_t(), r2.modulus.get_mpz_t());
    if (g != 1) throw std::domain_error("crt_pair: moduli not coprime");

    // x = v1 + m1*t with t = (v2 - v1) * m1^{-1} (mod m2)
    mpz_class t{0};
    if (r2.modulus != 1) {
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), r1.modulus.get_mpz_t(), r2.modulus.get_mpz_t()) == 0)
            throw std::domain_error("crt_pair: modulus not invertible");
        t = (r2.value - r1.value) * inv;
        mpz_mod(t.get_mpz_t(), t.get_mpz_t(), r2.modulus.get_mpz_t());
    }
    return Residue(r1.modulus * r2.modulus, r1.value + r1.modulus * t);
}

Residue crt_system(const CongruenceSystem& sys) {
    if (sys.congruences.empty()) throw std::domain_error("crt_system: empty system");
    Residue acc = sys.congruences.front();
    for (std::size_t i = 1; i < sys.congruences.size(); ++i) acc = crt_pair(acc, sys.congruences[i]);
    return acc;
}

std::vector<std::pair<u64, u32>> factorize(u64 n) {
    if (n == 0) throw std::domain_error("factorize: n must be >= 1");
    std::vector<std::pair<u64, u32>> factors;
    for (u64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d != 0) continue;
        u32 e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        factors.emplace_back(d, e);
    }
    if (n > 1) factors.emplace_back(n, 1);
    return factors;
}

int mobius(u64 n) {
    if (n == 0) throw std::domain_error("mobius: n must be >= 1");
    auto factors = factorize(n);
    for (const auto& [p, e] : factors)
        if (e > 1) return 0;
    return factors.size() % 2 == 0 ? 1 : -1;
}

u64 largest_prime_factor(u64 n) {
    if (n == 0) throw std::domain_error("largest_prime_factor: n must be >= 1");
    if (n == 1) return 0;
    return factorize(n).back().first;
}

u64 count_sqrt_solutions(u64 a, u64 k, u64 budget) {
    if (k == 0) throw std::domain_error("count_sqrt_solutions: K must be >= 1");
    if (k > budget) throw resource_error("count_sqrt_solutions: K exceeds enumeration budget");
    a %= k;
    u64 count = 0;
    for (u64 y = 0; y < k; ++y)
        if ((y * y) % k == a) ++count;
    return count;
}

} // namespace romanoff
