#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "grouplab/error.hpp"

namespace grouplab {

using Int = std::int64_t;

inline Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
}

inline Int checked_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
    return r;
}

inline Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
}

/// Floor division and the matching nonnegative remainder for m > 0.
inline Int floor_div(Int a, Int m) {
    Int q = a / m;
    if ((a % m != 0) && ((a < 0) != (m < 0))) --q;
    return q;
}

inline Int mod_floor(Int a, Int m) {
    Int r = a % m;
    return r < 0 ? r + m : r;
}

inline Int gcd_abs(Int a, Int b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

/// Extended Euclid: returns g = gcd(a, b) >= 0 with g = x*a + y*b.
inline Int ext_gcd(Int a, Int b, Int& x, Int& y) {
    Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    x = old_s;
    y = old_t;
    return old_r;
}

inline Int lcm_checked(Int a, Int b) {
    if (a == 0 || b == 0) return 0;
    return checked_mul(a / gcd_abs(a, b), b < 0 ? -b : b);
}

/// Primes dividing |n| in increasing order.
inline std::vector<Int> prime_divisors(Int n) {
    std::vector<Int> out;
    if (n < 0) n = -n;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline bool is_prime(Int n) {
    if (n < 2) return false;
    for (Int p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

}  // namespace grouplab
