#include "vizsim/kernels.hpp"

namespace vizsim::kernels {

std::string_view kind_name(Kind k) noexcept
{
    switch (k) {
    case Kind::Scalar:
        return "scalar";
    case Kind::Avx2:
        return "avx2";
    }
    return "unknown";
}

Kind best_available() noexcept
{
    static const Kind kind = avx2_supported() ? Kind::Avx2 : Kind::Scalar;
    return kind;
}

MatchCounts match(Kind k, std::span<const std::uint8_t> a, std::span<const std::uint8_t> b)
{
    if (k == Kind::Avx2 && avx2_supported() && a.size() <= max_simd_length &&
        b.size() <= max_simd_length) {
        return match_avx2(a, b);
    }
    return match_scalar(a, b);
}

} // namespace vizsim::kernels
