#pragma once

// Kontsevich's 2-form on a cell with one boundary cycle.
//
// Walk the boundary cycle, recording the edge of every half-edge slot:
// e_1, ..., e_{2E} (each edge occurs twice). Then
//     omega = sum_{i<j} dl(e_i) ^ dl(e_j),
// collected into an antisymmetric E x E matrix M (M[a][b] is the
// coefficient of dl_a ^ dl_b, a < b). On the slice sum_e l_e = 1/2 one edge
// length z is eliminated, dl_z = -sum_{e != z} dl_e, giving A = P^T M P in
// the remaining 2d = E - 1 coordinates, and
//     omega^d = d! Pf(A) dl_1 ^ ... ^ dl_{2d}.
// The slice is the simplex {l > 0, sum l < 1/2} of volume 1/(2^{2d}(2d)!).
//
// Whether the last slot is included in the double sum, and where the walk
// starts, only changes omega by multiples of d(sum l), which vanishes on
// the slice; |Pf| is independent of the eliminated edge for the same reason.

#include "fatmod/errors.hpp"
#include "fatmod/fatgraph.hpp"
#include "fatmod/rational.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace fatmod {

using Matrix = std::vector<std::vector<Rational>>;

inline Matrix zero_matrix(int n) { return Matrix(n, std::vector<Rational>(n, Rational(0))); }

struct SkewForm {
    int dim = 0;
    Matrix a;                     // antisymmetric, dim x dim
    int eliminated_edge = -1;     // -1 if nothing was eliminated
    std::vector<int> coordinates;  // edge id of each row/column
};

// Omega in edge variables, before restricting to the slice.
inline Matrix omega_edge_matrix(const Fatgraph& g) {
    if (g.num_boundaries() != 1) {
        throw WrongBoundaryCount("omega needs one boundary cycle, got " + std::to_string(g.num_boundaries()));
    }
    const int edges = g.num_edges();
    Matrix m = zero_matrix(edges);
    const auto& cycle = g.faces()[0];
    // prefix[a] = how many earlier slots carry edge a
    std::vector<long> prefix(edges, 0);
    for (HalfEdge h : cycle) {
        const int b = g.edge_of(h);
        for (int a = 0; a < edges; ++a) {
            if (a == b || prefix[a] == 0) continue;
            m[a][b] += prefix[a];
            m[b][a] -= prefix[a];
        }
        ++prefix[b];
    }
    return m;
}

// Restrict an edge-variable form to the slice by eliminating edge z.
inline SkewForm restrict_to_slice(const Matrix& m, int z) {
    const int edges = static_cast<int>(m.size());
    if (z < 0 || z >= edges) throw MalformedGraph("no edge " + std::to_string(z) + " to eliminate");
    SkewForm f;
    f.dim = edges - 1;
    f.eliminated_edge = z;
    for (int e = 0; e < edges; ++e) {
        if (e != z) f.coordinates.push_back(e);
    }
    // A[i][j] = sum_{a,b} P[a][i] M[a][b] P[b][j], P = identity on kept
    // coordinates with a row of -1 for z.
    f.a = zero_matrix(f.dim);
    for (int i = 0; i < f.dim; ++i) {
        const int ei = f.coordinates[i];
        for (int j = 0; j < f.dim; ++j) {
            const int ej = f.coordinates[j];
            f.a[i][j] = m[ei][ej] - m[z][ej] - m[ei][z] + m[z][z];
        }
    }
    return f;
}

inline SkewForm omega_matrix(const Fatgraph& g, int eliminated_edge) {
    return restrict_to_slice(omega_edge_matrix(g), eliminated_edge);
}

// Eliminates the last edge.
inline SkewForm omega_matrix(const Fatgraph& g) { return omega_matrix(g, g.num_edges() - 1); }

inline bool is_antisymmetric(const Matrix& a) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (a[i][j] != -a[j][i]) return false;
        }
    }
    return true;
}

// Exact Pfaffian by skew-symmetric Gaussian elimination: pivot on a
// nonzero a[k][k+1] (swapping indices if needed, which flips the sign) and
// replace the trailing block by its Schur complement, which stays
// antisymmetric. Odd dimension gives 0.
inline Rational pfaffian(Matrix a) {
    const int n = static_cast<int>(a.size());
    if (n % 2 == 1) return 0;
    Rational pf = 1;
    for (int k = 0; k < n; k += 2) {
        int pivot = -1;
        for (int j = k + 1; j < n; ++j) {
            if (a[k][j] != 0) {
                pivot = j;
                break;
            }
        }
        if (pivot < 0) return 0;
        if (pivot != k + 1) {
            std::swap(a[k + 1], a[pivot]);
            for (auto& row : a) std::swap(row[k + 1], row[pivot]);
            pf = -pf;
        }
        const Rational p = a[k][k + 1];
        pf *= p;
        for (int i = k + 2; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                a[i][j] += (a[k + 1][i] * a[k][j] - a[k][i] * a[k + 1][j]) / p;
                a[j][i] = -a[i][j];
            }
        }
    }
    return pf;
}

inline Rational pfaffian(const SkewForm& f) { return pfaffian(f.a); }

inline Rational determinant(Matrix a) {
    const int n = static_cast<int>(a.size());
    Rational det = 1;
    for (int k = 0; k < n; ++k) {
        int pivot = k;
        while (pivot < n && a[pivot][k] == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != k) {
            std::swap(a[pivot], a[k]);
            det = -det;
        }
        det *= a[k][k];
        for (int i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            const Rational f = a[i][k] / a[k][k];
            for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return det;
}

struct CellVolume {
    Rational value;     // |integral of omega^d over the normalized cell|
    int d = 0;          // half-dimension
    Rational pfaffian;  // signed Pf(A) in the chosen coordinates
};

// d! |Pf| / (2^{2d} (2d)!)
inline Rational volume_from_pfaffian(const Rational& pf, int d) {
    return Rational(factorial(d)) * abs(pf) / Rational(pow2(2 * d) * factorial(2 * d));
}

inline CellVolume cell_volume(const SkewForm& f) {
    if (f.dim % 2 != 0) throw WrongType("slice of odd dimension " + std::to_string(f.dim) + " carries no volume form");
    const Rational pf = pfaffian(f);
    return CellVolume{volume_from_pfaffian(pf, f.dim / 2), f.dim / 2, pf};
}

inline CellVolume cell_volume(const Fatgraph& g) {
    if (g.num_edges() % 2 == 0) {
        throw WrongType("cell with " + std::to_string(g.num_edges()) + " edges has odd dimension");
    }
    return cell_volume(omega_matrix(g));
}

// Monte Carlo estimate of the cell volume: hit-or-miss sampling of the
// slice simplex inside the cube [0, 1/2]^{2d}, times the floating-point
// density d! sqrt|det A|.
inline double monte_carlo_cell_volume(const SkewForm& f, std::uint64_t samples, std::uint64_t seed) {
    const int n = f.dim;
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = f.a[i][j].convert_to<double>();
    }
    double det = 1;
    for (int k = 0; k < n; ++k) {
        int pivot = k;
        for (int i = k + 1; i < n; ++i) {
            if (std::abs(a[i][k]) > std::abs(a[pivot][k])) pivot = i;
        }
        if (a[pivot][k] == 0) return 0;
        if (pivot != k) {
            std::swap(a[pivot], a[k]);
            det = -det;
        }
        det *= a[k][k];
        for (int i = k + 1; i < n; ++i) {
            const double m = a[i][k] / a[k][k];
            for (int j = k; j < n; ++j) a[i][j] -= m * a[k][j];
        }
    }
    double density = std::sqrt(std::abs(det));
    for (int i = 2; i <= n / 2; ++i) density *= i;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(0.0, 0.5);
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        double sum = 0;
        for (int i = 0; i < n && sum < 0.5; ++i) sum += coord(rng);
        if (sum < 0.5) ++hits;
    }
    const double cube = std::pow(0.5, n);
    return density * cube * static_cast<double>(hits) / static_cast<double>(samples);
}

}  // namespace fatmod
