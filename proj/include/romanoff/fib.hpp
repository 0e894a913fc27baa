#pragma once

#include "romanoff/numtheory.hpp"

namespace romanoff {

/// Largest index whose Fibonacci number fits in 64 bits.
inline constexpr u64 kMaxExactFibIndex = 92;

/// Exact f_n by iteration. Throws std::overflow_error for n > 92.
u64 fib_exact(u64 n);

/// Consecutive Fibonacci values modulo m.
struct FibPairMod {
    u64 index;
    u64 modulus;
    u64 a; // f_index mod m
    u64 b; // f_{index+1} mod m
};

/// (f_n, f_{n+1}) mod m by fast doubling, O(log n) multiplications with
/// 128-bit intermediates. Throws std::domain_error for m < 2.
FibPairMod fib_pair_mod(u64 n, u64 m);

/// f_n mod m.
u64 fib_mod(u64 n, u64 m);

} // namespace romanoff
