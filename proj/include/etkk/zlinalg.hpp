#pragma once

#include "etkk/int_matrix.hpp"

#include <optional>

namespace etkk {

// U * A * V = D with U, V unimodular and D diagonal, d1 | d2 | ... >= 0.
// Explicit integer inverses are carried so unimodularity is witnessed by
// U * u_inv == I rather than by a determinant computation.
struct SnfDecomposition {
    IntMatrix u, u_inv; // rows(A) x rows(A)
    IntMatrix v, v_inv; // cols(A) x cols(A)
    IntMatrix d;        // rows(A) x cols(A)

    std::size_t rank() const;
    // Diagonal entries, nonzero ones first.
    IntVec diagonal() const;
    bool verify(const IntMatrix& a) const;
};

// Column-style Hermite normal form: H = A * W with W unimodular, the zero
// columns of H trailing. Pivot rows are strictly increasing, pivots are
// positive, and in each pivot row the entries in earlier columns lie in
// [0, pivot). This is the canonical form used for every deterministic basis
// and coset representative in this project.
struct HnfDecomposition {
    IntMatrix h;                         // rows(A) x rank, zero columns dropped
    IntMatrix w;                         // cols(A) x cols(A), unimodular
    std::vector<std::size_t> pivot_rows; // one per column of h

    std::size_t rank() const { return pivot_rows.size(); }
};

// Finitely generated abelian group Z^free_rank + Z/t1 + Z/t2 + ...,
// invariant factors t_i >= 2 with t1 | t2 | ...
struct AbelianGroup {
    std::size_t free_rank = 0;
    IntVec torsion;

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
    std::string to_string() const;
};

SnfDecomposition snf(const IntMatrix& a);
HnfDecomposition column_hnf(const IntMatrix& a);

// Columns form a canonical (column-HNF) basis of { x : A x = 0 }. The kernel
// of an integer matrix is a saturated sublattice, so this basis extends to a
// basis of the ambient lattice.
IntMatrix kernel_basis(const IntMatrix& a);

// Z^rows(A) / column-span(A).
AbelianGroup cokernel(const IntMatrix& a);

// A solution of A x = b over Z, if any; verified by substitution.
std::optional<IntVec> solve_linear(const IntMatrix& a, const IntVec& b);

// Columnwise solve A X = B; nullopt if some column has no integer solution.
std::optional<IntMatrix> solve_linear_matrix(const IntMatrix& a, const IntMatrix& b);

struct LatticeReduction {
    IntVec residue;
    // When v - residue = L * coeffs is wanted: coefficients over the
    // original columns of L.
    IntVec coeffs;
};

// Canonical representative of v modulo the column span of L: reduce v by the
// column HNF of L, pivot rows ending in [0, pivot). Two vectors are congruent
// mod the lattice iff their residues coincide.
LatticeReduction reduce_mod_lattice(const IntMatrix& l, const IntVec& v);

} // namespace etkk
