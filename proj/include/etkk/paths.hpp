#pragma once

#include "etkk/hom.hpp"

namespace etkk {

// A piecewise-linear spectral path over one dividing interval, linear
// between rational breakpoints. Values are positions inside the source
// interval block: 0 and 1 stand for the glued boundary symbols 0_j, 1_j.
// Theta paths are the constant evaluations at points of Sp(F1).
struct PLPath {
    bool is_theta = false;
    std::size_t index = 0;                  // theta i or source block j (0-based)
    std::vector<std::pair<Rat, Rat>> breakpoints; // (time, value); empty for theta
    Int mult = 1;

    friend bool operator==(const PLPath&, const PLPath&) = default;
};

// Path multiset of one (target block, dividing interval) cell.
struct PLHomCell {
    std::size_t block = 0; // target block j', 0-based
    std::vector<PLPath> paths;

    friend bool operator==(const PLHomCell&, const PLHomCell&) = default;
};

struct PLHom {
    std::size_t m = 1;
    IntMatrix lambda0; // p' x p
    std::vector<std::vector<PLHomCell>> cells; // [l'][m]

    friend bool operator==(const PLHom&, const PLHom&) = default;
};

// Shape and monotonicity checks on a single path; throws NotNormalizable.
void validate_path(const PLPath& p);

// The ten endpoint patterns. Theta paths are case 1; for the rest the pair
// (value at 0, value at 1) over {boundary 0, interior, boundary 1} selects
// cases 2 through 10. Paths touching a boundary at an interior breakpoint
// match no case and throw NotNormalizable.
int classify(const PLPath& p);

struct BasicForm {
    enum Kind { ThetaPoint, ConstantZero, ConstantOne, Up, Down } kind;
    std::size_t index; // theta i or block j

    friend bool operator==(const BasicForm&, const BasicForm&) = default;
};

// The homotopy moves: cases 2,3,5,7 pin to the constant 0_j, cases 4,6,8 to
// the constant 1_j, case 9 to the full traversal (t,j), case 10 to (1-t,j).
BasicForm apply_move(const PLPath& p);

// Signed full crossings per (target block, source block): 0_j -> 1_j counts
// +1, 1_j -> 0_j counts -1, equal endpoints count 0.
IntMatrix net_winding(const AlgebraPresentation& a, const AlgebraPresentation& b, const PLHom& pl);

// Replace every path by its basic form and decompose boundary constants
// into theta multiplicities (alpha row for 0_j, beta row for 1_j). Requires
// every non-theta path to run boundary-to-boundary: a path that crosses a
// dividing point at an interior spectral value would need the paper's
// global sweep, which this ingestion rules out by precondition.
MStandardHom normalize(const AlgebraPresentation& a, const AlgebraPresentation& b,
                       const PLHom& pl);

} // namespace etkk
