#include "etkk/paths.hpp"

#include "etkk/error.hpp"

namespace etkk {

namespace {

bool is_zero_rat(const Rat& r) { return r == 0; }
bool is_one_rat(const Rat& r) { return r == 1; }

void bad(const std::string& msg) { throw Error(ErrorKind::NotNormalizable, msg); }

} // namespace

void validate_path(const PLPath& p) {
    if (p.mult < 1)
        bad("path multiplicity must be positive");
    if (p.is_theta)
        return; // constant by definition; breakpoints ignored
    if (p.breakpoints.size() < 2)
        bad("an interval path needs breakpoints at times 0 and 1");
    if (!is_zero_rat(p.breakpoints.front().first) || !is_one_rat(p.breakpoints.back().first))
        bad("breakpoint times must start at 0 and end at 1");
    for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
        const auto& [t, v] = p.breakpoints[i];
        if (t < 0 || t > 1 || v < 0 || v > 1)
            bad("breakpoints must lie in [0,1] x [0,1]");
        if (i > 0 && !(p.breakpoints[i - 1].first < t))
            bad("breakpoint times must be strictly increasing");
    }
    for (std::size_t i = 0; i + 1 < p.breakpoints.size(); ++i) {
        const Rat& v0 = p.breakpoints[i].second;
        const Rat& v1 = p.breakpoints[i + 1].second;
        if ((is_zero_rat(v0) && is_zero_rat(v1)) || (is_one_rat(v0) && is_one_rat(v1)))
            bad("segment sits on a boundary symbol; use theta paths for constants");
    }
}

int classify(const PLPath& p) {
    validate_path(p);
    if (p.is_theta)
        return 1;
    for (std::size_t i = 1; i + 1 < p.breakpoints.size(); ++i) {
        const Rat& v = p.breakpoints[i].second;
        if (is_zero_rat(v) || is_one_rat(v))
            bad("boundary value at an interior breakpoint matches no case");
    }
    const Rat& v0 = p.breakpoints.front().second;
    const Rat& v1 = p.breakpoints.back().second;
    auto kind = [](const Rat& v) { return is_zero_rat(v) ? 0 : (is_one_rat(v) ? 2 : 1); };
    static const int table[3][3] = {
        // v1: 0_j  interior  1_j
        {7, 5, 9},  // v0 = 0_j
        {3, 2, 4},  // v0 interior
        {10, 6, 8}, // v0 = 1_j
    };
    return table[kind(v0)][kind(v1)];
}

BasicForm apply_move(const PLPath& p) {
    switch (classify(p)) {
    case 1:
        return BasicForm{BasicForm::ThetaPoint, p.index};
    case 2:
    case 3:
    case 5:
    case 7:
        return BasicForm{BasicForm::ConstantZero, p.index};
    case 4:
    case 6:
    case 8:
        return BasicForm{BasicForm::ConstantOne, p.index};
    case 9:
        return BasicForm{BasicForm::Up, p.index};
    default:
        return BasicForm{BasicForm::Down, p.index};
    }
}

namespace {

void check_shape(const AlgebraPresentation& a, const AlgebraPresentation& b, const PLHom& pl) {
    if (pl.m < 1)
        bad("partition count m must be at least 1");
    if (pl.lambda0.rows() != b.p || pl.lambda0.cols() != a.p)
        bad("lambda0 must be p' x p");
    if (pl.cells.size() != b.l)
        bad("one cell row per target interval block expected");
    for (std::size_t jp = 0; jp < b.l; ++jp) {
        if (pl.cells[jp].size() != pl.m)
            bad("block " + std::to_string(jp + 1) + " must have exactly m cells");
        for (const PLHomCell& c : pl.cells[jp]) {
            if (c.block != jp)
                bad("cell is filed under the wrong target block");
            for (const PLPath& p : c.paths) {
                validate_path(p);
                if (p.is_theta ? p.index >= a.p : p.index >= a.l)
                    bad("path source index out of range");
            }
        }
    }
}

} // namespace

IntMatrix net_winding(const AlgebraPresentation& a, const AlgebraPresentation& b,
                      const PLHom& pl) {
    check_shape(a, b, pl);
    IntMatrix w(b.l, a.l);
    for (std::size_t jp = 0; jp < b.l; ++jp)
        for (const PLHomCell& c : pl.cells[jp])
            for (const PLPath& p : c.paths) {
                if (p.is_theta)
                    continue;
                const Rat& v0 = p.breakpoints.front().second;
                const Rat& v1 = p.breakpoints.back().second;
                if (v0 == 0 && v1 == 1)
                    w.at(jp, p.index) += p.mult;
                else if (v0 == 1 && v1 == 0)
                    w.at(jp, p.index) -= p.mult;
            }
    return w;
}

MStandardHom normalize(const AlgebraPresentation& a, const AlgebraPresentation& b,
                       const PLHom& pl) {
    validate(a);
    validate(b);
    check_shape(a, b, pl);

    MStandardHom out;
    out.m = pl.m;
    out.lambda0 = pl.lambda0;
    if (!pl.lambda0.is_nonnegative())
        bad("lambda0 has a negative entry");
    IntVec lk = pl.lambda0 * a.k;
    Int r;
    for (std::size_t ip = 0; ip < b.p; ++ip) {
        if (lk[ip] % b.k[ip] != 0 || (ip > 0 && lk[ip] / b.k[ip] != r))
            bad("lambda0 * k is not a multiple of the target scale");
        if (ip == 0)
            r = lk[0] / b.k[0];
    }
    out.r = r;

    out.cells.resize(b.l);
    for (std::size_t jp = 0; jp < b.l; ++jp) {
        for (std::size_t s = 0; s < pl.m; ++s) {
            const PLHomCell& in = pl.cells[jp][s];
            MCell cell;
            cell.ntheta.assign(a.p, 0);
            cell.nplus.assign(a.l, 0);
            cell.nminus.assign(a.l, 0);
            cell.left_trace.assign(a.p, 0);
            cell.right_trace.assign(a.p, 0);
            for (const PLPath& p : in.paths) {
                int c = classify(p);
                if (c >= 2 && c <= 6)
                    bad("path of case " + std::to_string(c) +
                        " crosses a dividing point at an interior spectral value; normalization "
                        "requires boundary-to-boundary paths in every cell");
                BasicForm f = apply_move(p);
                switch (f.kind) {
                case BasicForm::ThetaPoint:
                    cell.ntheta[f.index] += p.mult;
                    break;
                case BasicForm::ConstantZero:
                    for (std::size_t i = 0; i < a.p; ++i)
                        cell.ntheta[i] += p.mult * a.alpha.at(f.index, i);
                    break;
                case BasicForm::ConstantOne:
                    for (std::size_t i = 0; i < a.p; ++i)
                        cell.ntheta[i] += p.mult * a.beta.at(f.index, i);
                    break;
                case BasicForm::Up:
                    cell.nplus[f.index] += p.mult;
                    break;
                case BasicForm::Down:
                    cell.nminus[f.index] += p.mult;
                    break;
                }
                // Traces read off the raw endpoints; the moves fix them.
                auto endpoint = [&](const Rat& v, IntVec& trace) {
                    if (p.is_theta) {
                        trace[p.index] += p.mult;
                        return;
                    }
                    const IntMatrix& rows = (v == 0) ? a.alpha : a.beta;
                    for (std::size_t i = 0; i < a.p; ++i)
                        trace[i] += p.mult * rows.at(p.index, i);
                };
                endpoint(p.is_theta ? Rat(0) : p.breakpoints.front().second, cell.left_trace);
                endpoint(p.is_theta ? Rat(0) : p.breakpoints.back().second, cell.right_trace);
            }
            out.cells[jp].push_back(std::move(cell));
        }
    }

    try {
        validate_m_standard(a, b, out);
    } catch (const Error& e) {
        bad(std::string("normalized data is not m-standard: ") + e.what());
    }
    return out;
}

} // namespace etkk
