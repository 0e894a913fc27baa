#include "romanoff/analysis.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "romanoff/errors.hpp"
#include "romanoff/pisano.hpp"

namespace romanoff {

SeriesPartialSum lemma4_partial_sum(u64 d_max) {
    if (d_max < 1) throw std::domain_error("lemma4_partial_sum: d_max must be >= 1");
    if (d_max > 100'000) throw resource_error("lemma4_partial_sum: d_max exceeds 1e5");

    long double sum = 0.0L;
    long double comp = 0.0L; // Kahan carry
    u64 terms = 0;
    for (u64 d = 1; d <= d_max; ++d) {
        bool squarefree = true;
        u64 v = 1;
        for (const auto& [p, e] : factorize(d)) {
            if (e > 1) {
                squarefree = false;
                break;
            }
            v = std::max(v, pisano_period(p));
        }
        if (!squarefree) continue;
        const u64 l = std::lcm(u64{36864}, v);
        const long double term =
            1.0L / (static_cast<long double>(d) * std::sqrt(static_cast<long double>(l)));
        const long double y = term - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        ++terms;
    }
    return SeriesPartialSum{d_max, static_cast<double>(sum), terms};
}

double period_restricted_sum(u64 n) {
    if (n < 7 || n > 60) throw std::domain_error("period_restricted_sum: n must be in [7, 60]");
    long double product = 1.0L;
    for (u64 p : primes_with_period_upto(n)) product *= 1.0L + 1.0L / static_cast<long double>(p);
    return static_cast<double>(product);
}

double period_sum_envelope(u64 n) {
    return 2.0 * kExpEulerGamma * std::log(static_cast<double>(n));
}

double lemma3_constant_check(u64 prime_bound) {
    if (prime_bound < 3) throw std::domain_error("lemma3_constant_check: bound must be >= 3");
    std::vector<unsigned char> mark(prime_bound + 1, 1);
    mark[0] = mark[1] = 0;
    for (u64 i = 2; i * i <= prime_bound; ++i)
        if (mark[i])
            for (u64 j = i * i; j <= prime_bound; j += i) mark[j] = 0;

    long double product = 1.0L;
    for (u64 p = 3; p <= prime_bound; p += 2) {
        if (!mark[p]) continue;
        const long double pp = static_cast<long double>(p) * static_cast<long double>(p);
        product *= 1.0L / (1.0L - 1.0L / pp);
    }
    return static_cast<double>(product);
}

ConstantsReport constants_report() {
    ConstantsReport r;
    r.alpha = (1.0 + std::sqrt(5.0)) / 2.0;
    r.log_alpha = std::log(r.alpha);
    r.inv_two_log_alpha = 1.0 / (2.0 * r.log_alpha);
    r.theorem3_margin = 9.0 * r.log_alpha - 0.2322 * std::numbers::pi * std::numbers::pi;
    r.euler_gamma = kEulerGamma;
    r.pi_sq_over_8 = std::numbers::pi * std::numbers::pi / 8.0;

    if (std::abs(r.alpha * r.alpha - r.alpha - 1.0) > 1e-12)
        throw integrity_error("constants_report: alpha^2 != alpha + 1");
    if (!(r.theorem3_margin > 2.0))
        throw integrity_error("constants_report: theorem3 margin not above 2");
    if (!(r.inv_two_log_alpha > 1.0390 && r.inv_two_log_alpha < 1.0391))
        throw integrity_error("constants_report: 1/(2 ln alpha) outside (1.0390, 1.0391)");
    return r;
}

} // namespace romanoff
