#include "vizsim/kernels.hpp"

#include <algorithm>
#include <vector>

namespace vizsim::kernels {

MatchCounts match_scalar(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b)
{
    MatchCounts out;
    if (a.empty() || b.empty()) {
        return out;
    }
    const std::size_t longest = std::max(a.size(), b.size());
    const std::size_t window = longest / 2 > 0 ? longest / 2 - 1 : 0;

    std::vector<bool> a_matched(a.size(), false);
    std::vector<bool> b_matched(b.size(), false);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::size_t lo = i > window ? i - window : 0;
        const std::size_t hi = std::min(b.size(), i + window + 1);
        for (std::size_t j = lo; j < hi; ++j) {
            if (!b_matched[j] && a[i] == b[j]) {
                a_matched[i] = true;
                b_matched[j] = true;
                ++out.matches;
                break;
            }
        }
    }

    std::size_t j = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a_matched[i]) {
            continue;
        }
        while (!b_matched[j]) {
            ++j;
        }
        if (a[i] != b[j]) {
            ++out.half_transpositions;
        }
        ++j;
    }
    return out;
}

} // namespace vizsim::kernels
