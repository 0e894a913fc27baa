#include "romanoff/covering.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

#include "romanoff/errors.hpp"
#include "romanoff/fib.hpp"
#include "romanoff/parallel.hpp"
#include "romanoff/pisano.hpp"

namespace romanoff {

namespace {

constexpr std::array<u64, 16> kPrimesM = {2,    3,    7,    17,    19,    47,    107,   127,
                                          1087, 2207, 4481, 6143,  12289, 21503, 34303, 119809};

constexpr std::array<u64, 16> kN0Residues = {0,   1,   3,    1,    9,    6,     15,   80,
                                             887, 987, 58,   3107, 5881, 15722, 2489, 115550};

constexpr std::array<u64, 16> kP0Residues = {1,   1,   3,    15,   10,    6,     36,   80,
                                             887, 987, 58,   4227, 11762, 15722, 2489, 115550};

constexpr const char* kMDecimal = "621386267972593776074029725204132260351094";
constexpr const char* kN0Decimal = "145090702762087107496178817377891453382310";
constexpr const char* kP0Decimal = "612271766655191184669165916436108277668671";

CoveringConstants build_constants() {
    CoveringConstants c;
    c.primes_m = kPrimesM;
    c.n0_residues = kN0Residues;
    c.p0_residues = kP0Residues;

    std::size_t j = 0;
    for (u64 q : kPrimesM)
        if (q != 4481) c.exclusion_primes[j++] = q;

    c.m = 1;
    for (u64 q : kPrimesM) c.m *= mpz_class(static_cast<unsigned long>(q));

    std::vector<Residue> sys0, sys1;
    for (std::size_t i = 0; i < 16; ++i) {
        mpz_class q(static_cast<unsigned long>(kPrimesM[i]));
        sys0.emplace_back(q, mpz_class(static_cast<unsigned long>(kN0Residues[i])));
        sys1.emplace_back(q, mpz_class(static_cast<unsigned long>(kP0Residues[i])));
    }
    Residue n0 = crt_system(CongruenceSystem(sys0));
    Residue p0 = crt_system(CongruenceSystem(sys1));

    if (c.m != mpz_class(kMDecimal)) throw integrity_error("constants: prime product differs from M");
    if (n0.modulus != c.m || n0.value != mpz_class(kN0Decimal))
        throw integrity_error("constants: CRT of the n0 system differs from n0");
    if (p0.modulus != c.m || p0.value != mpz_class(kP0Decimal))
        throw integrity_error("constants: CRT of the p0 system differs from p0");

    c.n0 = n0.value;
    c.p0 = p0.value;
    c.m1 = 769 * c.m;

    mpz_class g;
    mpz_class extension_prime(769);
    mpz_gcd(g.get_mpz_t(), extension_prime.get_mpz_t(), c.m.get_mpz_t());
    if (g != 1) throw integrity_error("constants: 769 shares a factor with M");
    return c;
}

// Fibonacci values over one full period mod q.
std::vector<u32> fib_period_values(u64 q) {
    const u64 u = pisano_period(q);
    std::vector<u32> values(u);
    u64 a = 0, b = 1;
    for (u64 l = 0; l < u; ++l) {
        values[l] = static_cast<u32>(a);
        u64 t = (a + b) % q;
        a = b;
        b = t;
    }
    return values;
}

unsigned index_class(u64 i) {
    u64 r = i % 192;
    if (r == 0) return 0;
    if (r == 64 || r == 128) return 1;
    return 2;
}

} // namespace

const CoveringConstants& load_constants() {
    static const CoveringConstants constants = build_constants();
    return constants;
}

bool allowed_pair(u64 a, u64 b) {
    return (index_class(a) ^ index_class(b)) == 1;
}

Eq2Report verify_eq2_exclusion() {
    const CoveringConstants& c = load_constants();

    // u(4481) = 128, so f_{a^2} mod 4481 only depends on a^2 mod 128.
    std::vector<u32> f4481 = fib_period_values(4481);

    std::array<bool, 4481> excluded{};
    for (u64 q : c.exclusion_primes) excluded[q % 4481] = true;

    Eq2Report report;
    for (u64 a = 0; a <= 64; ++a) {
        for (u64 b = 0; b <= 64; ++b) {
            u64 rho = (58 + 2 * 4481 - f4481[(a * a) % 128] - f4481[(b * b) % 128]) % 4481;
            ++report.pairs_checked;
            if (excluded[rho]) report.counterexamples.push_back({a, b, rho});
        }
    }
    return report;
}

CoveringTables::CoveringTables(u64 check_modulus) {
    const bool reduced = check_modulus == 18432;
    if (check_modulus == 0 || (!reduced && check_modulus % 36864 != 0))
        throw std::domain_error("CoveringTables: modulus must be 18432 or a multiple of 36864");

    const CoveringConstants& c = load_constants();
    const u64 build_size = reduced ? 36864 : check_modulus;

    std::array<std::vector<u32>, 16> period_values;
    std::array<u64, 16> periods;
    for (unsigned j = 0; j < 16; ++j) {
        period_values[j] = fib_period_values(c.primes_m[j]);
        periods[j] = period_values[j].size();
        primes_[j] = static_cast<u32>(c.primes_m[j]);
        n0_mod_[j] = static_cast<u32>(mpz_class(c.n0 % c.primes_m[j]).get_ui());
        mpz_class diff = c.n0 - c.p0;
        mpz_mod_ui(diff.get_mpz_t(), diff.get_mpz_t(), static_cast<unsigned long>(c.primes_m[j]));
        diff_mod_[j] = static_cast<u32>(diff.get_ui());
    }

    rows_.resize(build_size);
    for (u64 i = 0; i < build_size; ++i) {
        const u64 sq = i * i;
        for (unsigned j = 0; j < 16; ++j) rows_[i].v[j] = period_values[j][sq % periods[j]];
    }

    if (reduced) {
        // i and i + 18432 agree in every table because (i + 18432)^2 = i^2
        // (mod 36864) and every period divides 36864.
        for (u64 i = 0; i < 18432; ++i)
            for (unsigned j = 0; j < 16; ++j)
                if (rows_[i].v[j] != rows_[i + 18432].v[j])
                    throw integrity_error("CoveringTables: 18432 reduction does not hold");
        rows_.resize(18432);
        reduced_checked_ = true;
    }
    modulus_ = check_modulus;
}

std::optional<u64> CoveringTables::least_witness(u64 a, u64 b) const {
    const Row& ra = rows_[a];
    const Row& rb = rows_[b];
    for (unsigned j = 0; j < 16; ++j) {
        u32 s = ra.v[j] + rb.v[j];
        if (s == n0_mod_[j] || s == n0_mod_[j] + primes_[j]) return primes_[j];
    }
    return std::nullopt;
}

std::optional<u64> CoveringTables::first_congruence_miss(u64 a, u64 b) const {
    const Row& ra = rows_[a];
    const Row& rb = rows_[b];
    for (unsigned j = 0; j < 16; ++j) {
        u32 s = ra.v[j] + rb.v[j];
        if (s != diff_mod_[j] && s != diff_mod_[j] + primes_[j]) return primes_[j];
    }
    return std::nullopt;
}

namespace {

struct PartialReport {
    std::array<u64, 16> witness_histogram{};
    std::array<u64, 16> allowed_miss_histogram{};
    u64 allowed_pairs = 0;
    u64 failure_count = 0;
    u64 allowed_failure_count = 0;
    std::vector<ClassPair> failures;
    std::vector<ClassPair> allowed_failures;
};

} // namespace

CoveringReport verify_theorem2_covering(u64 check_modulus, const CoveringOptions& options) {
    const CoveringTables tables(check_modulus);
    const u64 p = tables.modulus();

    std::vector<unsigned char> cls(p);
    for (u64 i = 0; i < p; ++i) cls[i] = static_cast<unsigned char>(index_class(i));

    const u64 pair_total = p * (p + 1) / 2;
    std::atomic<u64> pairs_done{0};
    ProgressMeter meter(options.progress, pair_total);

    unsigned workers = options.threads == 0 ? default_thread_count() : options.threads;
    std::vector<PartialReport> partials(workers);

    const CoveringTables::Row* rows = tables.rows_.data();
    std::array<u32, 16> hit_lo = tables.n0_mod_;
    std::array<u32, 16> hit_hi{};
    std::array<u32, 16> cong_lo = tables.diff_mod_;
    std::array<u32, 16> cong_hi{};
    for (unsigned j = 0; j < 16; ++j) {
        hit_hi[j] = hit_lo[j] + tables.primes_[j];
        cong_hi[j] = cong_lo[j] + tables.primes_[j];
    }

    run_workers(workers, [&](unsigned w, unsigned nw) {
        PartialReport& out = partials[w];
        // rows interleaved across workers for balance (row a has p - a pairs)
        for (u64 a = w; a < p; a += nw) {
            const unsigned char ca = cls[a];
            const CoveringTables::Row ra = rows[a];
            for (u64 b = a; b < p; ++b) {
                const CoveringTables::Row& rb = rows[b];
                const u64 weight = (a == b) ? 1 : 2;
                if ((ca ^ cls[b]) == 1) {
                    out.allowed_pairs += weight;
                    bool missed = false;
                    for (unsigned j = 0; j < 16; ++j) {
                        u32 s = ra.v[j] + rb.v[j];
                        if (s != cong_lo[j] && s != cong_hi[j]) {
                            out.allowed_miss_histogram[j] += weight;
                            missed = true;
                        }
                    }
                    if (missed) {
                        out.allowed_failure_count += weight;
                        if (out.allowed_failures.size() < options.sample_cap)
                            out.allowed_failures.push_back({static_cast<u32>(a), static_cast<u32>(b)});
                    }
                } else {
                    int witness = -1;
                    for (unsigned j = 0; j < 16; ++j) {
                        u32 s = ra.v[j] + rb.v[j];
                        if (s == hit_lo[j] || s == hit_hi[j]) {
                            witness = static_cast<int>(j);
                            break;
                        }
                    }
                    if (witness >= 0) {
                        out.witness_histogram[static_cast<unsigned>(witness)] += weight;
                    } else {
                        out.failure_count += weight;
                        if (out.failures.size() < options.sample_cap)
                            out.failures.push_back({static_cast<u32>(a), static_cast<u32>(b)});
                    }
                }
            }
            u64 done = pairs_done.fetch_add(p - a) + (p - a);
            if (w == 0) meter.tick(done);
        }
    });

    CoveringReport report;
    report.check_modulus = p;
    report.pairs_scanned = p * p;
    report.reduced_table_checked = tables.reduced_checked();
    for (const PartialReport& part : partials) {
        report.allowed_pairs += part.allowed_pairs;
        report.failure_count += part.failure_count;
        report.allowed_failure_count += part.allowed_failure_count;
        for (unsigned j = 0; j < 16; ++j) {
            report.witness_histogram[j] += part.witness_histogram[j];
            report.allowed_miss_histogram[j] += part.allowed_miss_histogram[j];
        }
        report.failures.insert(report.failures.end(), part.failures.begin(), part.failures.end());
        report.allowed_failures.insert(report.allowed_failures.end(), part.allowed_failures.begin(),
                                       part.allowed_failures.end());
    }
    auto row_major = [](const ClassPair& lhs, const ClassPair& rhs) {
        return lhs.a != rhs.a ? lhs.a < rhs.a : lhs.b < rhs.b;
    };
    std::sort(report.failures.begin(), report.failures.end(), row_major);
    std::sort(report.allowed_failures.begin(), report.allowed_failures.end(), row_major);
    if (report.failures.size() > options.sample_cap) report.failures.resize(options.sample_cap);
    if (report.allowed_failures.size() > options.sample_cap)
        report.allowed_failures.resize(options.sample_cap);
    return report;
}

Theorem1Report verify_theorem1_extension() {
    const CoveringConstants& c = load_constants();
    Theorem1Report report;

    report.u769 = pisano_period(769);
    report.period_ok = report.u769 == 192;
    if (!report.period_ok) report.failed_checks.push_back("u(769) != 192");

    u64 s = (501 + 2 * 769 - fib_mod(0, 769) - fib_mod(64, 769)) % 769;
    report.congruence_ok = s == 0;
    if (!report.congruence_ok) report.failed_checks.push_back("501 - f_0 - f_64 != 0 (mod 769)");

    u64 p0_mod7 = mpz_class(c.p0 % 7).get_ui();
    report.mod7_ok = (769 % 7 == 6) && (p0_mod7 == 3) && (769 % 7 != p0_mod7);
    if (!report.mod7_ok) report.failed_checks.push_back("769 mod 7 collides with p0 mod 7");

    mpz_class g;
    mpz_class extension_prime(769);
    mpz_gcd(g.get_mpz_t(), extension_prime.get_mpz_t(), c.m.get_mpz_t());
    report.coprime_ok = g == 1;
    if (!report.coprime_ok) report.failed_checks.push_back("gcd(769, M) != 1");

    Residue n1 = crt_pair(Residue(c.m, c.n0), Residue(769, 501));
    report.n1 = n1.value;
    report.m1 = c.m1;
    report.projection_ok = mpz_class(n1.value % c.m) == c.n0 && n1.modulus == c.m1;
    if (!report.projection_ok) report.failed_checks.push_back("n1 does not project to n0 mod M");

    return report;
}

} // namespace romanoff
