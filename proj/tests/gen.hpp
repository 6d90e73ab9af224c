#pragma once

// Random instance generators for the property suites. Everything is seeded
// explicitly so failures replay.

#include "etkk/hom.hpp"

#include <random>

namespace etkk::gen {

using Rng = std::mt19937;

inline long pick(Rng& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = pick(rng, lo, hi);
    return m;
}

// Random unital presentation with p, l <= 3 and alpha, beta entries <= 2.
// beta is redrawn until each row splits h_j with the entry cap; alpha itself
// always qualifies, so the loop is cut short by falling back to alpha.
inline AlgebraPresentation random_presentation(Rng& rng, long pmax = 3, long lmax = 3) {
    AlgebraPresentation a;
    a.p = static_cast<std::size_t>(pick(rng, 1, pmax));
    a.l = static_cast<std::size_t>(pick(rng, 0, lmax));
    a.k.resize(a.p);
    for (auto& ki : a.k)
        ki = pick(rng, 1, 2);
    a.alpha = IntMatrix(a.l, a.p);
    a.beta = IntMatrix(a.l, a.p);
    a.h.resize(a.l);
    for (std::size_t j = 0; j < a.l; ++j) {
        Int hj = 0;
        while (hj == 0) {
            for (std::size_t i = 0; i < a.p; ++i)
                a.alpha.at(j, i) = pick(rng, 0, 2);
            hj = dot(a.alpha.row_vec(j), a.k);
        }
        a.h[j] = hj;
        bool ok = false;
        for (int attempt = 0; attempt < 40 && !ok; ++attempt) {
            Int left = hj;
            IntVec row(a.p, Int(0));
            for (int step = 0; step < 64 && left > 0; ++step) {
                std::size_t i = static_cast<std::size_t>(pick(rng, 0, long(a.p) - 1));
                if (row[i] < 2 && a.k[i] <= left) {
                    row[i] += 1;
                    left -= a.k[i];
                }
            }
            if (left == 0) {
                for (std::size_t i = 0; i < a.p; ++i)
                    a.beta.at(j, i) = row[i];
                ok = true;
            }
        }
        if (!ok)
            for (std::size_t i = 0; i < a.p; ++i)
                a.beta.at(j, i) = a.alpha.at(j, i);
    }
    validate(a);
    return a;
}

// Basis of the sublattice of C(A,B) whose lambda0 * k is a multiple of k';
// these are exactly the diagrams realizable up to kappa-padding. Columns
// live in Z^(p'p + l'l).
inline IntMatrix unital_diagram_lattice(const AlgebraPresentation& a,
                                        const AlgebraPresentation& b) {
    IntMatrix da = a.boundary();
    IntMatrix db = b.boundary();
    std::size_t n0 = b.p * a.p, n = n0 + b.l * a.l;
    // unknowns: entries of lambda0, lambda1, plus the multiple s
    IntMatrix sys(b.l * a.p + b.p, n + 1);
    for (std::size_t jp = 0; jp < b.l; ++jp)
        for (std::size_t i = 0; i < a.p; ++i) {
            std::size_t row = jp * a.p + i;
            for (std::size_t ip = 0; ip < b.p; ++ip)
                sys.at(row, ip * a.p + i) = db.at(jp, ip);
            for (std::size_t j = 0; j < a.l; ++j)
                sys.at(row, n0 + jp * a.l + j) = -da.at(j, i);
        }
    std::size_t off = b.l * a.p;
    for (std::size_t ip = 0; ip < b.p; ++ip) {
        for (std::size_t i = 0; i < a.p; ++i)
            sys.at(off + ip, ip * a.p + i) = a.k[i];
        sys.at(off + ip, n) = -b.k[ip];
    }
    IntMatrix ker = kernel_basis(sys);
    // drop the auxiliary s coordinate
    IntMatrix out(n, ker.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < ker.cols(); ++j)
            out.at(i, j) = ker.at(i, j);
    return out;
}

inline DiagramPair random_unital_diagram(Rng& rng, const AlgebraPresentation& a,
                                         const AlgebraPresentation& b, long coeff = 2) {
    IntMatrix basis = unital_diagram_lattice(a, b);
    IntVec coeffs(basis.cols());
    for (auto& c : coeffs)
        c = pick(rng, -coeff, coeff);
    IntVec v = basis * coeffs;
    std::size_t n0 = b.p * a.p;
    DiagramPair d{IntMatrix(b.p, a.p), IntMatrix(b.l, a.l)};
    for (std::size_t i = 0; i < n0; ++i)
        d.lambda0.at(i / a.p, i % a.p) = v[i];
    for (std::size_t i = 0; i < b.l * a.l; ++i)
        d.lambda1.at(i / a.l, i % a.l) = v[n0 + i];
    return d;
}

inline StandardHom random_standard_hom(Rng& rng, const AlgebraPresentation& a,
                                       const AlgebraPresentation& b) {
    DiagramPair d = random_unital_diagram(rng, a, b);
    Int c = minimal_padding(a, b, d) + pick(rng, 0, 2);
    return realize_diagram(a, b, d, c);
}

// Split a 1-standard hom into m cells: every theta runs through all cells,
// every traversal is placed in one random cell with boundary constants on
// either side.
inline MStandardHom random_m_standard_hom(Rng& rng, const AlgebraPresentation& a,
                                          const AlgebraPresentation& b, std::size_t m) {
    StandardHom h = random_standard_hom(rng, a, b);
    MStandardHom out;
    out.m = m;
    out.r = h.r;
    out.lambda0 = h.lambda0;
    out.cells.resize(b.l);
    for (std::size_t jp = 0; jp < b.l; ++jp) {
        std::vector<MCell> cells(m);
        for (MCell& c : cells) {
            c.ntheta = h.blocks[jp].ntheta;
            c.nplus.assign(a.l, 0);
            c.nminus.assign(a.l, 0);
        }
        for (std::size_t j = 0; j < a.l; ++j) {
            for (Int n = 0; n < h.blocks[jp].nplus[j]; ++n) {
                std::size_t s = static_cast<std::size_t>(pick(rng, 0, long(m) - 1));
                cells[s].nplus[j] += 1;
                for (std::size_t t = 0; t < s; ++t)
                    for (std::size_t i = 0; i < a.p; ++i)
                        cells[t].ntheta[i] += a.alpha.at(j, i);
                for (std::size_t t = s + 1; t < m; ++t)
                    for (std::size_t i = 0; i < a.p; ++i)
                        cells[t].ntheta[i] += a.beta.at(j, i);
            }
            for (Int n = 0; n < h.blocks[jp].nminus[j]; ++n) {
                std::size_t s = static_cast<std::size_t>(pick(rng, 0, long(m) - 1));
                cells[s].nminus[j] += 1;
                for (std::size_t t = 0; t < s; ++t)
                    for (std::size_t i = 0; i < a.p; ++i)
                        cells[t].ntheta[i] += a.beta.at(j, i);
                for (std::size_t t = s + 1; t < m; ++t)
                    for (std::size_t i = 0; i < a.p; ++i)
                        cells[t].ntheta[i] += a.alpha.at(j, i);
            }
        }
        // chain the traces left to right
        IntVec trace = (b.alpha * h.lambda0).row_vec(jp);
        for (MCell& c : cells) {
            c.left_trace = trace;
            IntVec right = c.ntheta;
            for (std::size_t i = 0; i < a.p; ++i)
                for (std::size_t j = 0; j < a.l; ++j)
                    right[i] += c.nplus[j] * a.beta.at(j, i) + c.nminus[j] * a.alpha.at(j, i);
            c.right_trace = right;
            trace = right;
        }
        out.cells[jp] = std::move(cells);
    }
    validate_m_standard(a, b, out);
    return out;
}

} // namespace etkk::gen
