#pragma once

#include "fatmod/rational.hpp"

#include <stdexcept>

namespace fatmod {

// C_m = binom(2m, m) / (m + 1): rooted trivalent planar trees with m
// internal vertices, i.e. maximal expansions of an (m+2)-valent vertex.
inline Integer catalan(long m) {
    if (m < 0) throw std::invalid_argument("catalan: negative index");
    return binomial(2 * m, m) / (m + 1);
}

// C_{5,k-4} = binom(2k-6, k-5): expansions of a k-valent vertex (k >= 5)
// into one 5-valent vertex and k-5 trivalent ones.
inline Integer catalan5(long k) {
    if (k < 5) throw std::invalid_argument("catalan5: k must be at least 5");
    return binomial(2 * k - 6, k - 5);
}

}  // namespace fatmod
