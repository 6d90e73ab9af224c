#include "etkk/diagram.hpp"

#include "etkk/error.hpp"

#include <sstream>

namespace etkk {

DiagramPair diagram_add(const DiagramPair& a, const DiagramPair& b) {
    return DiagramPair{a.lambda0 + b.lambda0, a.lambda1 + b.lambda1};
}

DiagramPair diagram_neg(const DiagramPair& a) { return DiagramPair{-a.lambda0, -a.lambda1}; }

DiagramPair diagram_sub(const DiagramPair& a, const DiagramPair& b) {
    return diagram_add(a, diagram_neg(b));
}

DiagramPair zero_diagram(const AlgebraPresentation& a, const AlgebraPresentation& b) {
    return DiagramPair{IntMatrix::zero(b.p, a.p), IntMatrix::zero(b.l, a.l)};
}

bool check_diagram(const AlgebraPresentation& a, const AlgebraPresentation& b,
                   const DiagramPair& d) {
    if (d.lambda0.rows() != b.p || d.lambda0.cols() != a.p)
        throw Error(ErrorKind::DimensionMismatch, "lambda0 must be p' x p");
    if (d.lambda1.rows() != b.l || d.lambda1.cols() != a.l)
        throw Error(ErrorKind::DimensionMismatch, "lambda1 must be l' x l");
    return b.boundary() * d.lambda0 == d.lambda1 * a.boundary();
}

std::string KKClass::to_string() const {
    std::ostringstream os;
    os << "free " << etkk::to_string(free_part);
    if (!torsion_part.empty())
        os << " torsion " << etkk::to_string(torsion_part);
    return os.str();
}

IntVec KKPresentation::vectorize(const DiagramPair& d) const {
    IntVec v;
    v.reserve(b_.p * a_.p + b_.l * a_.l);
    for (const Int& x : d.lambda0.entries())
        v.push_back(x);
    for (const Int& x : d.lambda1.entries())
        v.push_back(x);
    return v;
}

DiagramPair KKPresentation::unvectorize(const IntVec& v) const {
    std::size_t n0 = b_.p * a_.p;
    DiagramPair d{IntMatrix(b_.p, a_.p), IntMatrix(b_.l, a_.l)};
    for (std::size_t i = 0; i < n0; ++i)
        d.lambda0.at(i / a_.p, i % a_.p) = v[i];
    for (std::size_t i = 0; i < b_.l * a_.l; ++i)
        d.lambda1.at(i / a_.l, i % a_.l) = v[n0 + i];
    return d;
}

KKPresentation::KKPresentation(const AlgebraPresentation& a, const AlgebraPresentation& b)
    : a_(a), b_(b) {
    validate(a);
    validate(b);
    const std::size_t n0 = b.p * a.p, n1 = b.l * a.l, n = n0 + n1;
    IntMatrix da = a.boundary();  // l x p
    IntMatrix db = b.boundary();  // l' x p'

    // Constraint rows indexed by (j', i): (db * lambda0 - lambda1 * da) = 0.
    IntMatrix constraint(b.l * a.p, n);
    for (std::size_t jp = 0; jp < b.l; ++jp)
        for (std::size_t i = 0; i < a.p; ++i) {
            std::size_t row = jp * a.p + i;
            for (std::size_t ip = 0; ip < b.p; ++ip)
                constraint.at(row, ip * a.p + i) = db.at(jp, ip);
            for (std::size_t j = 0; j < a.l; ++j)
                constraint.at(row, n0 + jp * a.l + j) = -da.at(j, i);
        }
    c_basis_ = kernel_basis(constraint);

    m_generators_ = IntMatrix(n, b.p * a.l);
    for (std::size_t ip = 0; ip < b.p; ++ip)
        for (std::size_t j = 0; j < a.l; ++j) {
            std::size_t colidx = ip * a.l + j;
            IntMatrix mu(b.p, a.l);
            mu.at(ip, j) = 1;
            DiagramPair g = mu_diagram(a, b, mu);
            IntVec gv = vectorize(g);
            m_generators_.set_col(colidx, gv);
        }

    // M(A,B) is a sublattice of C(A,B); the kernel basis is saturated, so
    // the generators have integral coordinates.
    auto rel = solve_linear_matrix(c_basis_, m_generators_);
    if (!rel)
        throw Error(ErrorKind::Internal, "M(A,B) generators not expressible in C(A,B) basis");
    relations_ = *rel;
    rel_snf_ = snf(relations_);

    std::size_t dim_c = c_basis_.cols();
    std::size_t r = rel_snf_.rank();
    group_.free_rank = dim_c - r;
    for (std::size_t i = 0; i < r; ++i) {
        if (rel_snf_.d.at(i, i) >= 2) {
            torsion_idx_.push_back(i);
            group_.torsion.push_back(rel_snf_.d.at(i, i));
        }
    }
    for (std::size_t i = r; i < dim_c; ++i)
        free_idx_.push_back(i);
}

KKClass KKPresentation::kk_class(const DiagramPair& d) const {
    if (!check_diagram(a_, b_, d))
        throw Error(ErrorKind::NotInC, "diagram pair does not satisfy the commuting condition");
    auto y = solve_linear(c_basis_, vectorize(d));
    if (!y)
        throw Error(ErrorKind::Internal, "commuting pair not in the C(A,B) lattice");
    IntVec z = rel_snf_.u * *y;
    KKClass cls;
    for (std::size_t i : free_idx_)
        cls.free_part.push_back(z[i]);
    for (std::size_t t = 0; t < torsion_idx_.size(); ++t) {
        Int m = group_.torsion[t];
        Int r = z[torsion_idx_[t]] % m;
        if (r < 0)
            r += m;
        cls.torsion_part.push_back(r);
    }
    return cls;
}

KKClass KKPresentation::class_add(const KKClass& x, const KKClass& y) const {
    KKClass s;
    s.free_part = vec_add(x.free_part, y.free_part);
    s.torsion_part = vec_add(x.torsion_part, y.torsion_part);
    for (std::size_t t = 0; t < s.torsion_part.size(); ++t)
        s.torsion_part[t] %= group_.torsion[t];
    return s;
}

std::vector<std::pair<DiagramPair, Int>> KKPresentation::generators() const {
    std::vector<std::pair<DiagramPair, Int>> out;
    // Coordinates z = U y; the generator with z = e_i lifts to
    // c_basis * u_inv * e_i.
    for (std::size_t t = 0; t < torsion_idx_.size(); ++t) {
        IntVec y = rel_snf_.u_inv.col_vec(torsion_idx_[t]);
        out.emplace_back(unvectorize(c_basis_ * y), group_.torsion[t]);
    }
    for (std::size_t i : free_idx_) {
        IntVec y = rel_snf_.u_inv.col_vec(i);
        out.emplace_back(unvectorize(c_basis_ * y), Int(0));
    }
    return out;
}

KKPresentation diagram_group(const AlgebraPresentation& a, const AlgebraPresentation& b) {
    return KKPresentation(a, b);
}

DiagramPair mu_diagram(const AlgebraPresentation& a, const AlgebraPresentation& b,
                       const IntMatrix& mu) {
    if (mu.rows() != b.p || mu.cols() != a.l)
        throw Error(ErrorKind::DimensionMismatch, "mu must be p' x l");
    return DiagramPair{mu * a.boundary(), b.boundary() * mu};
}

std::optional<IntMatrix> m_membership(const AlgebraPresentation& a, const AlgebraPresentation& b,
                                      const DiagramPair& d) {
    if (!check_diagram(a, b, d))
        throw Error(ErrorKind::NotInC, "diagram pair does not satisfy the commuting condition");
    // Unknowns: entries of mu, row-major. Equations: mu*(alpha-beta) = lambda0
    // then (alpha'-beta')*mu = lambda1.
    IntMatrix da = a.boundary(); // l x p
    IntMatrix db = b.boundary(); // l' x p'
    const std::size_t nvar = b.p * a.l;
    IntMatrix sys(b.p * a.p + b.l * a.l, nvar);
    IntVec rhs;
    rhs.reserve(sys.rows());
    for (std::size_t ip = 0; ip < b.p; ++ip)
        for (std::size_t i = 0; i < a.p; ++i) {
            std::size_t row = ip * a.p + i;
            for (std::size_t j = 0; j < a.l; ++j)
                sys.at(row, ip * a.l + j) = da.at(j, i);
            rhs.push_back(d.lambda0.at(ip, i));
        }
    std::size_t off = b.p * a.p;
    for (std::size_t jp = 0; jp < b.l; ++jp)
        for (std::size_t j = 0; j < a.l; ++j) {
            std::size_t row = off + jp * a.l + j;
            for (std::size_t ip = 0; ip < b.p; ++ip)
                sys.at(row, ip * a.l + j) = db.at(jp, ip);
            rhs.push_back(d.lambda1.at(jp, j));
        }
    auto x = solve_linear(sys, rhs);
    if (!x)
        return std::nullopt;
    IntMatrix mu(b.p, a.l);
    for (std::size_t ip = 0; ip < b.p; ++ip)
        for (std::size_t j = 0; j < a.l; ++j)
            mu.at(ip, j) = (*x)[ip * a.l + j];
    if (mu * da != d.lambda0 || db * mu != d.lambda1)
        throw Error(ErrorKind::Internal, "membership witness failed substitution check");
    return mu;
}

} // namespace etkk
