#pragma once

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace aperture_forge {

// Number of times each spacing 0..L appears among element pairs (index 0 unused).
inline std::vector<int> spacing_counts(const std::vector<int>& positions) {
    int L = 0;
    for (int p : positions) {
        if (p < 0) throw std::invalid_argument("positions must be nonnegative");
        L = std::max(L, p);
    }
    std::vector<int> c(static_cast<size_t>(L) + 1, 0);
    for (size_t a = 0; a < positions.size(); ++a)
        for (size_t b = a + 1; b < positions.size(); ++b) ++c[static_cast<size_t>(std::abs(positions[a] - positions[b]))];
    return c;
}

// True if every spacing 1..max(positions) occurs at least once.
inline bool covers_all_spacings(const std::vector<int>& positions) {
    const auto c = spacing_counts(positions);
    for (size_t d = 1; d < c.size(); ++d)
        if (c[d] == 0) return false;
    return true;
}

// Pairs beyond the first that realise a spacing: n (n - 1) / 2 - L for a complete cover.
inline int redundancy(const std::vector<int>& positions) {
    int r = 0;
    for (int k : spacing_counts(positions))
        if (k > 1) r += k - 1;
    return r;
}

// Minimally redundant linear array in units of lambda / 2: the largest aperture L for which n
// elements on 0..L still cover every spacing 1..L, so redundancy n (n - 1) / 2 - L is minimal.
// Ties go to the lexicographically smallest position list.
inline std::vector<int> mrla_spacings(int n) {
    if (n < 2 || n > 7) throw std::invalid_argument("MRLA search supports 2 <= n <= 7 elements");
    for (int L = n * (n - 1) / 2;; --L) {
        // interior positions: choose n - 2 from 1..L-1 in lexicographic order
        std::vector<int> idx(static_cast<size_t>(n - 2));
        for (int i = 0; i < n - 2; ++i) idx[static_cast<size_t>(i)] = i + 1;
        while (true) {
            std::vector<int> pos{0};
            pos.insert(pos.end(), idx.begin(), idx.end());
            pos.push_back(L);
            if (covers_all_spacings(pos)) return pos;
            int i = n - 3;
            while (i >= 0 && idx[static_cast<size_t>(i)] == L - 1 - (n - 3 - i)) --i;
            if (i < 0) break;
            ++idx[static_cast<size_t>(i)];
            for (int k = i + 1; k < n - 2; ++k) idx[static_cast<size_t>(k)] = idx[static_cast<size_t>(k - 1)] + 1;
        }
    }
}

}  // namespace aperture_forge
