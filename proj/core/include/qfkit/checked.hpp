#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace qfkit {

using Int = std::int64_t;

namespace checked {

inline Int add(Int x, Int y) {
    Int r;
    if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("integer overflow in addition");
    return r;
}

inline Int sub(Int x, Int y) {
    Int r;
    if (__builtin_sub_overflow(x, y, &r)) throw std::overflow_error("integer overflow in subtraction");
    return r;
}

inline Int mul(Int x, Int y) {
    Int r;
    if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("integer overflow in multiplication");
    return r;
}

inline Int mul(Int x, Int y, Int z) { return mul(mul(x, y), z); }

inline Int neg(Int x) { return sub(0, x); }

}  // namespace checked

// Floor division for b != 0.
inline Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Nonnegative residue of a modulo m > 0.
inline Int mod_pos(Int a, Int m) {
    Int r = a % m;
    return r < 0 ? r + m : r;
}

inline Int gcd(Int a, Int b) { return std::gcd(a, b); }

}  // namespace qfkit
