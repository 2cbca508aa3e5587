#include "vizsim/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#define VIZSIM_HAVE_X86 1
#include <immintrin.h>
#endif

#include <bit>
#include <cstring>

namespace vizsim::kernels {

#ifdef VIZSIM_HAVE_X86

namespace {

// Bits [lo, hi) set; hi <= 64.
inline std::uint64_t bit_range(std::size_t lo, std::size_t hi) noexcept
{
    const std::uint64_t upto_hi = hi >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << hi) - 1;
    const std::uint64_t below_lo = (std::uint64_t{1} << lo) - 1;
    return upto_hi & ~below_lo;
}

__attribute__((target("avx2"))) inline std::uint64_t
equal_mask(__m256i lo, __m256i hi, std::uint8_t code) noexcept
{
    const __m256i needle = _mm256_set1_epi8(static_cast<char>(code));
    const auto m_lo = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(lo, needle)));
    const auto m_hi = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(hi, needle)));
    return (static_cast<std::uint64_t>(m_hi) << 32) | m_lo;
}

} // namespace

__attribute__((target("avx2"))) MatchCounts match_avx2(std::span<const std::uint8_t> a,
                                                        std::span<const std::uint8_t> b)
{
    MatchCounts out;
    if (a.empty() || b.empty()) {
        return out;
    }
    const std::size_t longest = a.size() > b.size() ? a.size() : b.size();
    const std::size_t window = longest / 2 > 0 ? longest / 2 - 1 : 0;

    // Padding past b.size() is excluded by every window mask.
    alignas(32) std::uint8_t padded[64] = {};
    std::memcpy(padded, b.data(), b.size());
    const __m256i b_lo = _mm256_load_si256(reinterpret_cast<const __m256i*>(padded));
    const __m256i b_hi = _mm256_load_si256(reinterpret_cast<const __m256i*>(padded + 32));

    std::uint64_t a_matched = 0;
    std::uint64_t b_matched = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::size_t lo = i > window ? i - window : 0;
        const std::size_t hi = i + window + 1 < b.size() ? i + window + 1 : b.size();
        if (lo >= hi) {
            continue;
        }
        const std::uint64_t candidates =
            equal_mask(b_lo, b_hi, a[i]) & bit_range(lo, hi) & ~b_matched;
        if (candidates != 0) {
            b_matched |= candidates & (~candidates + 1);
            a_matched |= std::uint64_t{1} << i;
        }
    }

    out.matches = static_cast<std::size_t>(std::popcount(a_matched));
    while (a_matched != 0) {
        const int i = std::countr_zero(a_matched);
        const int j = std::countr_zero(b_matched);
        if (a[static_cast<std::size_t>(i)] != b[static_cast<std::size_t>(j)]) {
            ++out.half_transpositions;
        }
        a_matched &= a_matched - 1;
        b_matched &= b_matched - 1;
    }
    return out;
}

bool avx2_supported() noexcept
{
    static const bool supported = [] {
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") != 0;
    }();
    return supported;
}

#else

MatchCounts match_avx2(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b)
{
    return match_scalar(a, b);
}

bool avx2_supported() noexcept
{
    return false;
}

#endif

} // namespace vizsim::kernels
