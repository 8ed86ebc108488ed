#pragma once

#include <cstdint>
#include <vector>

namespace crn {

// Calls fn(subset) for every k-subset of {0..n-1} in lexicographic order.
// fn returns false to stop early. Returns false if stopped.
template <class Fn>
bool for_each_subset(int n, int k, Fn&& fn) {
    if (k < 0 || k > n) return true;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (!fn(static_cast<const std::vector<int>&>(idx))) return false;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return true;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Sign of the permutation p (p[i] = image of i).
inline int permutation_sign(const std::vector<int>& p) {
    std::vector<bool> seen(p.size(), false);
    int sgn = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0) sgn = -sgn;
    }
    return sgn;
}

}  // namespace crn
