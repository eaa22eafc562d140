#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

namespace pdc::detail {

/// Point subsets as bit vectors.
using Mask = std::vector<std::uint64_t>;

inline bool mask_empty(const Mask& m) {
    return std::all_of(m.begin(), m.end(), [](std::uint64_t w) { return w == 0; });
}

inline bool mask_subset(const Mask& a, const Mask& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

inline Mask mask_and(const Mask& a, const Mask& b) {
    Mask r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] & b[i];
    return r;
}

inline Mask mask_minus(const Mask& a, const Mask& b) {
    Mask r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] & ~b[i];
    return r;
}

inline std::size_t mask_count(const Mask& m) {
    std::size_t c = 0;
    for (auto w : m) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

inline Mask mask_of(std::size_t bits, const std::vector<int>& ids) {
    Mask m((bits + 63) / 64, 0);
    for (int i : ids) m[i / 64] |= std::uint64_t{1} << (i % 64);
    return m;
}

inline Mask mask_full(std::size_t bits) {
    std::vector<int> ids(bits);
    for (std::size_t i = 0; i < bits; ++i) ids[i] = static_cast<int>(i);
    return mask_of(bits, ids);
}

inline std::vector<int> mask_ids(const Mask& m) {
    std::vector<int> out;
    for (std::size_t w = 0; w < m.size(); ++w)
        for (std::uint64_t x = m[w]; x; x &= x - 1)
            out.push_back(static_cast<int>(w * 64 + std::countr_zero(x)));
    return out;
}

}  // namespace pdc::detail
