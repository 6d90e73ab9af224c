#pragma once

#include "etkk/algebra.hpp"

#include <optional>

namespace etkk {

// An element of C(A,B): a pair of integer matrices intertwining the boundary
// maps, (alpha'-beta') * lambda0 == lambda1 * (alpha-beta). The two induced
// maps on K0 and K1 are forced by this condition and are not stored.
struct DiagramPair {
    IntMatrix lambda0; // p' x p
    IntMatrix lambda1; // l' x l

    friend bool operator==(const DiagramPair&, const DiagramPair&) = default;
};

DiagramPair diagram_add(const DiagramPair& a, const DiagramPair& b);
DiagramPair diagram_neg(const DiagramPair& a);
DiagramPair diagram_sub(const DiagramPair& a, const DiagramPair& b);
DiagramPair zero_diagram(const AlgebraPresentation& a, const AlgebraPresentation& b);

bool check_diagram(const AlgebraPresentation& a, const AlgebraPresentation& b,
                   const DiagramPair& d);

// Canonical coordinates of a KK-class: free coordinates plus torsion
// residues, each residue reduced into [0, d_i) for its invariant factor.
struct KKClass {
    IntVec free_part;
    IntVec torsion_part;

    bool is_zero() const { return vec_is_zero(free_part) && vec_is_zero(torsion_part); }
    friend bool operator==(const KKClass&, const KKClass&) = default;
    std::string to_string() const;
};

// KK(A,B) presented as C(A,B)/M(A,B). Diagram pairs are embedded in
// Z^(p'p + l'l) by row-major vec(lambda0) followed by row-major vec(lambda1);
// c_basis is the canonical kernel basis of the intertwining constraint,
// m_generators the images of the p'l matrix units mu = e_{i'j}.
class KKPresentation {
  public:
    KKPresentation(const AlgebraPresentation& a, const AlgebraPresentation& b);

    const AbelianGroup& group() const { return group_; }
    const IntMatrix& c_basis() const { return c_basis_; }
    const IntMatrix& m_generators() const { return m_generators_; }

    KKClass kk_class(const DiagramPair& d) const;
    KKClass class_add(const KKClass& x, const KKClass& y) const;

    // Representative diagrams of the group generators, torsion first.
    std::vector<std::pair<DiagramPair, Int>> generators() const; // (diagram, order; 0 = free)

    IntVec vectorize(const DiagramPair& d) const;
    DiagramPair unvectorize(const IntVec& v) const;

    const AlgebraPresentation& source() const { return a_; }
    const AlgebraPresentation& target() const { return b_; }

  private:
    AlgebraPresentation a_, b_;
    IntMatrix c_basis_;      // N x dim_C, N = p'p + l'l
    IntMatrix m_generators_; // N x p'l
    IntMatrix relations_;    // dim_C x p'l, c_basis * relations = m_generators
    SnfDecomposition rel_snf_;
    std::vector<std::size_t> torsion_idx_; // rows of U*y carrying residues
    std::vector<std::size_t> free_idx_;    // rows of U*y that stay free
    AbelianGroup group_;
};

KKPresentation diagram_group(const AlgebraPresentation& a, const AlgebraPresentation& b);

// Witness mu (p' x l) with mu * (alpha-beta) == lambda0 and
// (alpha'-beta') * mu == lambda1, when the pair lies in M(A,B).
std::optional<IntMatrix> m_membership(const AlgebraPresentation& a, const AlgebraPresentation& b,
                                      const DiagramPair& d);

// The pair induced by a p' x l matrix mu.
DiagramPair mu_diagram(const AlgebraPresentation& a, const AlgebraPresentation& b,
                       const IntMatrix& mu);

} // namespace etkk
