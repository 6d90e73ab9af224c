#include "etkk/zlinalg.hpp"

#include "etkk/error.hpp"

#include <algorithm>
#include <sstream>

namespace etkk {

std::size_t SnfDecomposition::rank() const {
    std::size_t r = 0;
    std::size_t n = std::min(d.rows(), d.cols());
    while (r < n && d.at(r, r) != 0)
        ++r;
    return r;
}

IntVec SnfDecomposition::diagonal() const {
    std::size_t n = std::min(d.rows(), d.cols());
    IntVec out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = d.at(i, i);
    return out;
}

bool SnfDecomposition::verify(const IntMatrix& a) const {
    if (u * a * v != d)
        return false;
    if (u * u_inv != IntMatrix::identity(a.rows()))
        return false;
    if (v * v_inv != IntMatrix::identity(a.cols()))
        return false;
    if (!d.is_diagonal())
        return false;
    IntVec diag = diagonal();
    for (std::size_t i = 0; i < diag.size(); ++i) {
        if (diag[i] < 0)
            return false;
        if (i + 1 < diag.size()) {
            if (diag[i] == 0 && diag[i + 1] != 0)
                return false;
            if (diag[i] != 0 && diag[i + 1] % diag[i] != 0)
                return false;
        }
    }
    return true;
}

std::string AbelianGroup::to_string() const {
    if (is_trivial())
        return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << "Z";
        if (free_rank > 1)
            os << "^" << free_rank;
        first = false;
    }
    for (const Int& t : torsion) {
        if (!first)
            os << " + ";
        os << "Z/" << t.get_str();
        first = false;
    }
    return os.str();
}

namespace {

// State for SNF elimination. Maintains d == u * a * v at every step by
// mirroring each elementary operation on the transforms and their inverses.
struct SnfWork {
    IntMatrix d, u, u_inv, v, v_inv;

    void swap_rows(std::size_t i, std::size_t j) {
        d.swap_rows(i, j);
        u.swap_rows(i, j);
        u_inv.swap_cols(i, j);
    }
    void swap_cols(std::size_t i, std::size_t j) {
        d.swap_cols(i, j);
        v.swap_cols(i, j);
        v_inv.swap_rows(i, j);
    }
    void row_axpy(std::size_t i, std::size_t j, const Int& q) {
        // row i -= q row j ; inverse transform gains col j += q col i
        d.row_axpy(i, j, q);
        u.row_axpy(i, j, q);
        u_inv.col_axpy(j, i, -q);
    }
    void col_axpy(std::size_t i, std::size_t j, const Int& q) {
        d.col_axpy(i, j, q);
        v.col_axpy(i, j, q);
        v_inv.row_axpy(j, i, -q);
    }
    void negate_row(std::size_t i) {
        d.negate_row(i);
        u.negate_row(i);
        u_inv.negate_col(i);
    }
};

// Quotient with remainder minimized in absolute value; keeps pivots shrinking
// fast during elimination.
Int nearest_div(const Int& a, const Int& b) {
    Int q, r;
    Int babs = abs(b);
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), babs.get_mpz_t());
    if (2 * r > babs)
        q += 1;
    if (b < 0)
        q = -q;
    return q;
}

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

} // namespace

SnfDecomposition snf(const IntMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    SnfWork w{a, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n),
              IntMatrix::identity(n)};

    std::size_t t = 0;
    while (t < m && t < n) {
        // Pivot: entry of least absolute value in the trailing block.
        std::size_t pi = t, pj = t;
        bool found = false;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                const Int& x = w.d.at(i, j);
                if (x == 0)
                    continue;
                if (!found || abs(x) < abs(w.d.at(pi, pj))) {
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found)
            break;
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < m; ++i)
                if (w.d.at(i, t) != 0)
                    w.row_axpy(i, t, nearest_div(w.d.at(i, t), w.d.at(t, t)));
            for (std::size_t j = t + 1; j < n; ++j)
                if (w.d.at(t, j) != 0)
                    w.col_axpy(j, t, nearest_div(w.d.at(t, j), w.d.at(t, t)));
            // A nonzero residue means the pivot shrank; move it in and redo.
            std::size_t bi = t, bj = t;
            bool resid = false;
            for (std::size_t i = t + 1; i < m && !resid; ++i)
                if (w.d.at(i, t) != 0) {
                    bi = i;
                    bj = t;
                    resid = true;
                }
            for (std::size_t j = t + 1; j < n && !resid; ++j)
                if (w.d.at(t, j) != 0) {
                    bi = t;
                    bj = j;
                    resid = true;
                }
            if (resid) {
                w.swap_rows(t, bi);
                w.swap_cols(t, bj);
                clean = false;
                continue;
            }
            // Enforce divisibility of the trailing block by the pivot.
            for (std::size_t i = t + 1; i < m && clean; ++i)
                for (std::size_t j = t + 1; j < n && clean; ++j)
                    if (w.d.at(i, j) % w.d.at(t, t) != 0) {
                        w.row_axpy(t, i, Int(-1)); // row t += row i
                        clean = false;
                    }
        }
        if (w.d.at(t, t) < 0)
            w.negate_row(t);
        ++t;
    }
    return SnfDecomposition{w.u, w.u_inv, w.v, w.v_inv, w.d};
}

HnfDecomposition column_hnf(const IntMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    IntMatrix h = a;
    IntMatrix w = IntMatrix::identity(n);
    std::vector<std::size_t> pivots;

    std::size_t t = 0; // next pivot column
    for (std::size_t i = 0; i < m && t < n; ++i) {
        // gcd-eliminate row i across columns t..n-1 into column t
        while (true) {
            std::size_t best = n;
            for (std::size_t j = t; j < n; ++j)
                if (h.at(i, j) != 0 && (best == n || abs(h.at(i, j)) < abs(h.at(i, best))))
                    best = j;
            if (best == n)
                break; // row is zero on active columns
            if (best != t) {
                h.swap_cols(t, best);
                w.swap_cols(t, best);
            }
            bool any = false;
            for (std::size_t j = t + 1; j < n; ++j)
                if (h.at(i, j) != 0) {
                    Int q = nearest_div(h.at(i, j), h.at(i, t));
                    h.col_axpy(j, t, q);
                    w.col_axpy(j, t, q);
                    if (h.at(i, j) != 0)
                        any = true;
                }
            if (!any)
                break;
        }
        if (h.at(i, t) == 0)
            continue;
        if (h.at(i, t) < 0) {
            h.negate_col(t);
            w.negate_col(t);
        }
        // Normalize earlier columns on this pivot row into [0, pivot).
        for (std::size_t s = 0; s < t; ++s) {
            Int q = floor_div(h.at(i, s), h.at(i, t));
            h.col_axpy(s, t, q);
            w.col_axpy(s, t, q);
        }
        pivots.push_back(i);
        ++t;
    }
    return HnfDecomposition{h.cols_slice(0, t), w, pivots};
}

IntMatrix kernel_basis(const IntMatrix& a) {
    HnfDecomposition hnf = column_hnf(a);
    IntMatrix raw = hnf.w.cols_slice(hnf.rank(), a.cols());
    // Canonicalize the basis of the kernel lattice itself.
    return column_hnf(raw).h;
}

AbelianGroup cokernel(const IntMatrix& a) {
    SnfDecomposition s = snf(a);
    AbelianGroup g;
    std::size_t r = s.rank();
    g.free_rank = a.rows() - r;
    for (std::size_t i = 0; i < r; ++i)
        if (s.d.at(i, i) >= 2)
            g.torsion.push_back(s.d.at(i, i));
    return g;
}

std::optional<IntVec> solve_linear(const IntMatrix& a, const IntVec& b) {
    if (b.size() != a.rows())
        throw Error(ErrorKind::DimensionMismatch, "right-hand side length does not match rows");
    HnfDecomposition hnf = column_hnf(a);
    IntVec resid = b;
    IntVec y(hnf.rank());
    for (std::size_t t = 0; t < hnf.rank(); ++t) {
        std::size_t p = hnf.pivot_rows[t];
        const Int& piv = hnf.h.at(p, t);
        if (resid[p] % piv != 0)
            return std::nullopt;
        y[t] = resid[p] / piv;
        for (std::size_t i = 0; i < a.rows(); ++i)
            resid[i] -= y[t] * hnf.h.at(i, t);
    }
    if (!vec_is_zero(resid))
        return std::nullopt;
    IntVec x(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t t = 0; t < hnf.rank(); ++t)
            x[j] += hnf.w.at(j, t) * y[t];
    if (a * x != b)
        throw Error(ErrorKind::Internal, "solution failed substitution check");
    return x;
}

std::optional<IntMatrix> solve_linear_matrix(const IntMatrix& a, const IntMatrix& b) {
    if (b.rows() != a.rows())
        throw Error(ErrorKind::DimensionMismatch, "right-hand side rows do not match");
    IntMatrix x(a.cols(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        auto xj = solve_linear(a, b.col_vec(j));
        if (!xj)
            return std::nullopt;
        x.set_col(j, *xj);
    }
    return x;
}

LatticeReduction reduce_mod_lattice(const IntMatrix& l, const IntVec& v) {
    if (v.size() != l.rows())
        throw Error(ErrorKind::DimensionMismatch, "vector length does not match lattice rows");
    HnfDecomposition hnf = column_hnf(l);
    IntVec resid = v;
    IntVec q(hnf.rank());
    for (std::size_t t = 0; t < hnf.rank(); ++t) {
        std::size_t p = hnf.pivot_rows[t];
        q[t] = floor_div(resid[p], hnf.h.at(p, t));
        for (std::size_t i = 0; i < l.rows(); ++i)
            resid[i] -= q[t] * hnf.h.at(i, t);
    }
    IntVec coeffs(l.cols());
    for (std::size_t j = 0; j < l.cols(); ++j)
        for (std::size_t t = 0; t < hnf.rank(); ++t)
            coeffs[j] += hnf.w.at(j, t) * q[t];
    return LatticeReduction{resid, coeffs};
}

} // namespace etkk
