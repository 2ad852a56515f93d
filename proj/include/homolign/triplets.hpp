#pragma once

#include <cstddef>
#include <vector>

#include "homolign/errors.hpp"

namespace homolign {

// One unordered joint triple, indices strictly increasing, plus its position
// in the canonical lexicographic enumeration.
struct triplet_id {
    int i = 0;
    int j = 0;
    int k = 0;
    int ordinal = 0;
};

inline std::size_t triplet_count(std::size_t n) {
    return n * (n - 1) * (n - 2) / 6;
}

// All C(n,3) triples in lexicographic order: (0,1,2), (0,1,3), ...
inline std::vector<triplet_id> enumerate_triplets(std::size_t n) {
    if (n < 3) throw validation_error("triplet enumeration needs n >= 3");
    std::vector<triplet_id> out;
    out.reserve(triplet_count(n));
    int ord = 0;
    for (int i = 0; i + 2 < static_cast<int>(n); ++i)
        for (int j = i + 1; j + 1 < static_cast<int>(n); ++j)
            for (int k = j + 1; k < static_cast<int>(n); ++k)
                out.push_back({i, j, k, ord++});
    return out;
}

// Ordinal of (i,j,k) with i<j<k in the lexicographic enumeration over n
// joints.  Inverse of enumerate_triplets[ordinal].
inline int triplet_ordinal(int i, int j, int k, int n) {
    if (!(0 <= i && i < j && j < k && k < n))
        throw validation_error("triplet indices must satisfy 0 <= i < j < k < n");
    auto c3 = [](long long m) { return m >= 3 ? m * (m - 1) * (m - 2) / 6 : 0; };
    auto c2 = [](long long m) { return m >= 2 ? m * (m - 1) / 2 : 0; };
    long long skipped = c3(n) - c3(n - i) +  // triples starting below i
                        c2(n - i - 1) - c2(n - j) +
                        (k - j - 1);
    return static_cast<int>(skipped);
}

}  // namespace homolign
