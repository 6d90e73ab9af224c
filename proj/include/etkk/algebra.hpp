#pragma once

#include "etkk/zlinalg.hpp"

#include <string>

namespace etkk {

// Finite presentation (p, k, l, h, alpha, beta) of a unital one-dimensional
// NCCW complex: F1 has p matrix blocks of sizes k, F2 has l interval blocks
// of sizes h, and the two endpoint embeddings F1 -> F2 have multiplicity
// matrices alpha and beta (l x p, entries >= 0). Unitality forces
// alpha * k = h = beta * k.
struct AlgebraPresentation {
    std::size_t p = 0;
    IntVec k;
    std::size_t l = 0;
    IntVec h;
    IntMatrix alpha; // l x p
    IntMatrix beta;  // l x p

    std::string name; // optional label used in reports

    IntMatrix boundary() const { return alpha - beta; } // K0(F1) -> K0(F2)
    friend bool operator==(const AlgebraPresentation&, const AlgebraPresentation&) = default;
};

struct KTheoryResult {
    IntMatrix k0_basis; // p x rank, canonical kernel basis of alpha - beta
    std::size_t k0_rank = 0;
    AbelianGroup k1;
    IntVec scale; // [1_A] = k, always in the kernel
};

// Throws Error(InvalidPresentation) naming the first violated invariant.
void validate(const AlgebraPresentation& a);

KTheoryResult k_theory(const AlgebraPresentation& a);

// x are coordinates in k0_basis; true iff the ambient Z^p vector is
// componentwise nonnegative, i.e. the class lies in K0+.
bool k0_positive(const KTheoryResult& kt, const IntVec& x);

// Stock presentations used across tests and docs.
AlgebraPresentation point_algebra();          // C
AlgebraPresentation matrix_algebra(long n);   // M_n, l = 0
AlgebraPresentation circle_algebra();         // C(S^1)
AlgebraPresentation interval_algebra();       // C[0,1]: p=2, glued at both ends
AlgebraPresentation figure_eight_algebra();   // wedge of two circles
AlgebraPresentation pulled_point_algebra();   // p=3, k=(1,1,1), l=1, h=(2)

} // namespace etkk
