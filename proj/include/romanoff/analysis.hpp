#pragma once

#include "romanoff/numtheory.hpp"

namespace romanoff {

/// The series bound the partial sums are checked against.
inline constexpr double kSeriesBound = 0.23219;

/// e^gamma, gamma the Euler-Mascheroni constant, 30 significant digits.
inline constexpr double kExpEulerGamma = 1.78107241799019798523650410311;

/// gamma itself, 30 significant digits.
inline constexpr double kEulerGamma = 0.577215664901532860606512090082;

struct SeriesPartialSum {
    u64 d_max = 0;
    double value = 0.0;
    u64 terms_counted = 0; // squarefree d contributing
};

/// Partial sum over squarefree d <= d_max of 1/(d * sqrt(lcm(36864, v(d)))),
/// compensated accumulation in extended precision. d_max <= 1e5.
SeriesPartialSum lemma4_partial_sum(u64 d_max);

/// Sum over squarefree d with v(d) <= n of 1/d, evaluated exactly as the
/// finite product of (1 + 1/p) over p in S_n. 7 <= n <= 60.
double period_restricted_sum(u64 n);

/// 2 e^gamma ln n, the envelope period_restricted_sum must stay under.
double period_sum_envelope(u64 n);

/// Partial product over odd primes p <= prime_bound of (1 - 1/p^2)^{-1};
/// increases toward pi^2/8. prime_bound >= 3.
double lemma3_constant_check(u64 prime_bound);

struct ConstantsReport {
    double alpha = 0.0;             // (1 + sqrt 5)/2
    double log_alpha = 0.0;         // ln alpha
    double inv_two_log_alpha = 0.0; // 1/(2 ln alpha)
    double theorem3_margin = 0.0;   // 9 ln alpha - 0.2322 pi^2
    double euler_gamma = 0.0;
    double pi_sq_over_8 = 0.0;
};

/// Computes the scalar constants and asserts theorem3_margin > 2 and
/// inv_two_log_alpha in (1.0390, 1.0391); throws integrity_error otherwise.
ConstantsReport constants_report();

} // namespace romanoff
