#pragma once

// Jaro match kernels over byte-encoded token sequences (Token::code()).
//
// Both kernels implement the same procedure: tokens of `a` are matched left
// to right against the earliest unconsumed equal token of `b` inside the
// match window, and transpositions are counted by walking the two matched
// subsequences in order. The scalar kernel is the reference; the AVX2
// kernel builds per-token equality bitmasks with 32-byte compares and
// resolves matches with bit arithmetic.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace vizsim::kernels {

struct MatchCounts {
    std::size_t matches = 0;
    /// Matched positions whose tokens differ between the two matched
    /// subsequences (twice the Jaro transposition count).
    std::size_t half_transpositions = 0;

    friend bool operator==(const MatchCounts&, const MatchCounts&) = default;
};

enum class Kind { Scalar, Avx2 };

std::string_view kind_name(Kind k) noexcept;

/// Longest sequence the bitmask kernels handle; longer inputs use the scalar kernel.
inline constexpr std::size_t max_simd_length = 64;

MatchCounts match_scalar(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

/// Only callable when avx2_supported(); both spans must be at most max_simd_length.
MatchCounts match_avx2(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

bool avx2_supported() noexcept;

/// Fastest kernel available on this CPU, detected once.
Kind best_available() noexcept;

/// Runs kernel `k`, falling back to the scalar one when `k` cannot handle the input.
MatchCounts match(Kind k, std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

} // namespace vizsim::kernels
