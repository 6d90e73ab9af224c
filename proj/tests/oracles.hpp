#pragma once

// Test-only oracles, deliberately independent of the library's elimination
// code paths: determinantal divisors for SNF diagonals, and plain box
// enumeration for solvability and lattice membership.

#include "etkk/int_matrix.hpp"

#include <optional>
#include <vector>

namespace etkk::oracle {

inline Int det_recursive(const IntMatrix& a) {
    std::size_t n = a.rows();
    if (n == 0)
        return 1;
    if (n == 1)
        return a.at(0, 0);
    Int d = 0;
    int sign = 1;
    for (std::size_t j = 0; j < n; ++j) {
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j)
                    continue;
                minor.at(r - 1, cc++) = a.at(r, c);
            }
        }
        d += sign * a.at(0, j) * det_recursive(minor);
        sign = -sign;
    }
    return d;
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> cur(k);
    auto rec = [&](auto&& self, std::size_t start, std::size_t depth) -> void {
        if (depth == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i + (k - depth) <= n; ++i) {
            cur[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
}

// Invariant factors via determinantal divisors: g_k = gcd of all k x k
// minors, s_k = g_k / g_{k-1}. Exponential, fine for the small shapes used
// in tests.
inline IntVec snf_diagonal_by_minors(const IntMatrix& a) {
    std::size_t n = std::min(a.rows(), a.cols());
    IntVec diag(n, Int(0));
    Int prev = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::vector<std::size_t>> rsets, csets;
        subsets(a.rows(), k, rsets);
        subsets(a.cols(), k, csets);
        Int g = 0;
        for (const auto& rs : rsets)
            for (const auto& cs : csets) {
                IntMatrix sub(k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j)
                        sub.at(i, j) = a.at(rs[i], cs[j]);
                Int d = det_recursive(sub);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
            }
        if (g == 0)
            break; // all further divisors vanish
        diag[k - 1] = g / prev;
        prev = g;
    }
    return diag;
}

// Exhaustive search for x in [-bound, bound]^cols with A x = b.
inline std::optional<IntVec> box_solve(const IntMatrix& a, const IntVec& b, long bound) {
    std::size_t n = a.cols();
    IntVec x(n, Int(-bound));
    if (n == 0)
        return vec_is_zero(b) ? std::optional<IntVec>(IntVec{}) : std::nullopt;
    while (true) {
        if (a * x == b)
            return x;
        std::size_t i = 0;
        while (i < n) {
            x[i] += 1;
            if (x[i] <= bound)
                break;
            x[i] = -bound;
            ++i;
        }
        if (i == n)
            return std::nullopt;
    }
}

} // namespace etkk::oracle
