#pragma once

#include "etkk/diagram.hpp"

#include <optional>
#include <vector>

namespace etkk {

// Multiplicity data of one target interval block of a 1-standard
// homomorphism: counts of constant evaluations theta_i, of upward paths
// (t, j) and of downward paths (1-t, j).
struct HomBlock {
    IntVec ntheta; // length p
    IntVec nplus;  // length l
    IntVec nminus; // length l

    friend bool operator==(const HomBlock&, const HomBlock&) = default;
};

// A homomorphism A -> M_r(B) in 1-standard form, recorded by its
// multiplicity tables. lambda0 is the K0 matrix of the F1'-component;
// the tables satisfy the endpoint equations
//   ntheta + nplus*alpha + nminus*beta = alpha' * lambda0
//   ntheta + nplus*beta + nminus*alpha = beta'  * lambda0
// together with unitality lambda0 * k = r * k'. The unitary conjugation
// turning this data into an actual homomorphism is never represented.
struct StandardHom {
    Int r = 0;
    IntMatrix lambda0;            // p' x p
    std::vector<HomBlock> blocks; // length l'

    bool is_empty() const { return r == 0; }
    bool finite_dimensional_image() const;

    IntMatrix ntheta_matrix(std::size_t p) const; // l' x p
    IntMatrix nplus_matrix(std::size_t l) const;  // l' x l
    IntMatrix nminus_matrix(std::size_t l) const; // l' x l

    friend bool operator==(const StandardHom&, const StandardHom&) = default;
};

// One dividing interval of an m-standard homomorphism. The trace vectors
// are the theta-multiplicities of the fiber at the two cut points bounding
// the cell.
struct MCell {
    IntVec ntheta; // length p
    IntVec nplus;  // length l
    IntVec nminus; // length l
    IntVec left_trace;  // length p
    IntVec right_trace; // length p

    friend bool operator==(const MCell&, const MCell&) = default;
};

// m-standard form: standard on each of the m dividing intervals of every
// target interval block, with matching traces at the cuts.
struct MStandardHom {
    std::size_t m = 1;
    Int r = 0;
    IntMatrix lambda0;
    std::vector<std::vector<MCell>> cells; // [l'][m]

    friend bool operator==(const MStandardHom&, const MStandardHom&) = default;
};

void validate_standard(const AlgebraPresentation& a, const AlgebraPresentation& b,
                       const StandardHom& h);
void validate_m_standard(const AlgebraPresentation& a, const AlgebraPresentation& b,
                         const MStandardHom& h);

DiagramPair induced_diagram(const AlgebraPresentation& a, const AlgebraPresentation& b,
                            const StandardHom& h);
DiagramPair induced_diagram(const AlgebraPresentation& a, const AlgebraPresentation& b,
                            const MStandardHom& h);

StandardHom direct_sum(const AlgebraPresentation& a, const AlgebraPresentation& b,
                       const StandardHom& h1, const StandardHom& h2);

// Direct sum of an m-standard hom and a 1-standard summand. For m >= 2 the
// summand must have finite dimensional image (its fibers are constant, so it
// spreads over every cell).
MStandardHom m_direct_sum(const AlgebraPresentation& a, const AlgebraPresentation& b,
                          const MStandardHom& h, const StandardHom& s);

// View a 1-standard hom as 1-partitioned m-standard data and back.
MStandardHom as_m_standard(const AlgebraPresentation& a, const AlgebraPresentation& b,
                           const StandardHom& h);
StandardHom collapse_1_standard(const AlgebraPresentation& a, const AlgebraPresentation& b,
                                const MStandardHom& h);

// The finite-dimensional-image hom sigma_c (x) 1_B for a representation with
// theta-multiplicities c: r = sum c_i k_i, lambda0 = k' c^T, ntheta = h' c^T.
StandardHom tensor_with_unit(const AlgebraPresentation& a, const AlgebraPresentation& b,
                             const IntVec& c);

// kappa: the padding diagram (k' 1^T, 0) and its canonical realization.
DiagramPair kappa_diagram(const AlgebraPresentation& a, const AlgebraPresentation& b);
StandardHom kappa_hom(const AlgebraPresentation& a, const AlgebraPresentation& b, const Int& c);

// eta = (+)_{s=1..m-1} psi_{s/m} (x) 1_B: the cut-point fibers of psi,
// tensored with the unit of B. Finite dimensional image, induced lambda1 = 0.
StandardHom point_evaluation_stabilizer(const AlgebraPresentation& a,
                                        const AlgebraPresentation& b, const MStandardHom& psi);

// Canonical 1-standard realization of d + c*kappa: minimal traversal counts
// nplus = max(lambda1, 0), nminus = max(-lambda1, 0), ntheta solved from the
// left endpoint equations. Throws NotRealizableError when an entry comes out
// negative (monotone in c), Error(NotUnital) when lambda0 * k is not a
// multiple of k' (no padding can fix that).
StandardHom realize_diagram(const AlgebraPresentation& a, const AlgebraPresentation& b,
                            const DiagramPair& d, const Int& c, bool allow_empty = false);

// Least c such that realize_diagram succeeds (and yields r >= 1 when
// require_nonempty). The construction is monotone in c, so this is exact.
Int minimal_padding(const AlgebraPresentation& a, const AlgebraPresentation& b,
                    const DiagramPair& d, bool require_nonempty = true);

enum class StepKind { MToOne, DiagramCorrection, SameDiagram, DirectSum, Trick };

std::string step_kind_name(StepKind k);

// One lemma-backed step of a stable-homotopy certificate. `stabilizer` is
// the homomorphism summand attached to the indicated side(s); it is always
// of finite dimensional image except that a DIRECT_SUM step may attach any
// valid 1-standard hom. For M_TO_1 the `result` field holds the reduced
// 1-standard hom; for DIAGRAM_CORRECTION it holds the correction hom whose
// diagram is sign * (unit image) + padding * kappa and which is homotopic to
// the recorded kappa-stabilizer. Every step records both running diagrams
// before and after, so certificates check without replaying their producer.
struct CertStep {
    StepKind lemma = StepKind::DirectSum;
    int side = 1; // 1 or 2; 0 = both (SAME_DIAGRAM)
    StandardHom stabilizer;
    std::optional<StandardHom> result;
    std::vector<Rat> cut_points;                // M_TO_1 / TRICK
    std::size_t unit_row = 0, unit_col = 0;     // DIAGRAM_CORRECTION, 0-based
    int sign = 0;
    Int padding = 0;
    DiagramPair pre1, pre2, post1, post2;

    friend bool operator==(const CertStep&, const CertStep&) = default;
};

struct HomotopyCertificate {
    std::vector<CertStep> steps;

    friend bool operator==(const HomotopyCertificate&, const HomotopyCertificate&) = default;
};

struct ReductionResult {
    StandardHom stabilizer; // eta; empty when m = 1
    StandardHom reduced;    // rho, with d(rho) = d(psi) + d(eta)
    HomotopyCertificate certificate;
};

// Lemma "m to 1" made explicit: rho carries the cell data of psi glued end
// to end, plus the theta content left over from absorbing the stabilizer.
ReductionResult reduce_to_1_standard(const AlgebraPresentation& a, const AlgebraPresentation& b,
                                     const MStandardHom& psi);

struct DecisionResult {
    bool homotopic = false;
    KKClass kk_difference; // class of d(h1) - d(h2)
    std::optional<StandardHom> witness;
    std::optional<HomotopyCertificate> certificate;
};

DecisionResult decide_stable_homotopy(const AlgebraPresentation& a, const AlgebraPresentation& b,
                                      const MStandardHom& h1, const MStandardHom& h2);

// Mechanical re-check of a certificate against the two inputs. Arithmetic
// violations give false; structurally malformed certificates throw
// Error(MalformedCertificate).
bool verify_certificate(const AlgebraPresentation& a, const AlgebraPresentation& b,
                        const MStandardHom& h1, const MStandardHom& h2,
                        const HomotopyCertificate& cert);

struct PropertyHWitness {
    DiagramPair phi_diagram; // lambda' = (L k 1^T - I, -I)
    StandardHom phi_hom;     // 1-standard realization of lambda'
    StandardHom psi_hom;     // finite-dimensional realization of lambda + lambda'
    bool check = false;      // KK(id (+) phi) == KK(psi)
};

// Witness data for property (H): id (+) phi and psi share a KK-class, with
// psi of finite dimensional image. Throws LTooSmallError (carrying a
// sufficient L) when the realization fails at this L.
PropertyHWitness property_h_witness(const AlgebraPresentation& a, const Int& L);

// The identity homomorphism of A as 1-standard data.
StandardHom identity_hom(const AlgebraPresentation& a);
DiagramPair identity_diagram(const AlgebraPresentation& a);

} // namespace etkk
