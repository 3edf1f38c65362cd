// Low-level kernels on little-endian arrays of 32-bit limbs.
// Everything here is exact integer arithmetic; rounding policy lives in
// the floating layer on top.

#pragma once

#include <cstdint>
#include <vector>

namespace mp::limbs {

using Limb = std::uint32_t;
using Wide = std::uint64_t;
using Vec = std::vector<Limb>;

inline constexpr int kLimbBits = 32;
inline constexpr int kKaratsubaThreshold = 32;  // limbs

// Single-word multiply/add tallies, for cost-growth measurements.
struct WorkCounter {
    std::uint64_t mults = 0;
    std::uint64_t adds = 0;
};

// Strips high zero limbs in place.
void trim(Vec& a);

bool is_zero(const Vec& a);
std::int64_t bit_length(const Vec& a);

// -1 / 0 / +1 as a < b / a == b / a > b.
int compare(const Vec& a, const Vec& b);

Vec add(const Vec& a, const Vec& b);
// Requires a >= b.
Vec sub(const Vec& a, const Vec& b);

Vec shift_left_bits(const Vec& a, std::int64_t k);
Vec shift_right_bits(const Vec& a, std::int64_t k);

Vec mul_word(const Vec& a, Limb w);
// Quotient of a by w; *rem receives the remainder when non-null.
Vec div_word(const Vec& a, Limb w, Limb* rem = nullptr);

Vec mul_school(const Vec& a, const Vec& b, WorkCounter* work = nullptr);
Vec mul_karatsuba(const Vec& a, const Vec& b, WorkCounter* work = nullptr,
                  int threshold = kKaratsubaThreshold);
// Dispatches on operand size; bit-identical to mul_school.
Vec mul(const Vec& a, const Vec& b, WorkCounter* work = nullptr,
        int threshold = kKaratsubaThreshold);

// Bit i of a (little-endian bit order), zero beyond the array.
bool test_bit(const Vec& a, std::int64_t i);

}  // namespace mp::limbs
