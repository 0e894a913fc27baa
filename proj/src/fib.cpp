#include "romanoff/fib.hpp"

#include <bit>
#include <stdexcept>

namespace romanoff {

u64 fib_exact(u64 n) {
    if (n > kMaxExactFibIndex) throw std::overflow_error("fib_exact: f_n exceeds 64 bits");
    u64 a = 0, b = 1;
    for (u64 i = 0; i < n; ++i) {
        u64 c = a + b;
        a = b;
        b = c;
    }
    return a;
}

FibPairMod fib_pair_mod(u64 n, u64 m) {
    if (m < 2) throw std::domain_error("fib_pair_mod: modulus must be >= 2");
    u64 a = 0, b = 1; // (f_0, f_1)
    if (n > 0) {
        // f_{2k} = f_k (2 f_{k+1} - f_k), f_{2k+1} = f_k^2 + f_{k+1}^2
        for (int bit = 63 - std::countl_zero(n); bit >= 0; --bit) {
            u64 two_b_minus_a = static_cast<u64>((u128{b} * 2 + m - a) % m);
            u64 c = static_cast<u64>(u128{a} * two_b_minus_a % m);
            u64 d = static_cast<u64>((u128{a} * a + u128{b} * b) % m);
            if ((n >> bit) & 1) {
                a = d;
                b = static_cast<u64>((u128{c} + d) % m);
            } else {
                a = c;
                b = d;
            }
        }
    }
    return FibPairMod{n, m, a, b};
}

u64 fib_mod(u64 n, u64 m) {
    return fib_pair_mod(n, m).a;
}

} // namespace romanoff
