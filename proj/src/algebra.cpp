#include "etkk/algebra.hpp"

#include "etkk/error.hpp"

#include <sstream>

namespace etkk {

void validate(const AlgebraPresentation& a) {
    auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidPresentation, msg); };
    if (a.p < 1)
        fail("p must be at least 1");
    if (a.k.size() != a.p)
        fail("k must have length p");
    if (a.h.size() != a.l)
        fail("h must have length l");
    for (std::size_t i = 0; i < a.p; ++i)
        if (a.k[i] < 1)
            fail("k[" + std::to_string(i + 1) + "] must be positive");
    for (std::size_t j = 0; j < a.l; ++j)
        if (a.h[j] < 1)
            fail("h[" + std::to_string(j + 1) + "] must be positive");
    if (a.alpha.rows() != a.l || a.alpha.cols() != a.p)
        fail("alpha must be l x p");
    if (a.beta.rows() != a.l || a.beta.cols() != a.p)
        fail("beta must be l x p");
    if (!a.alpha.is_nonnegative())
        fail("alpha has a negative entry");
    if (!a.beta.is_nonnegative())
        fail("beta has a negative entry");
    IntVec ak = a.alpha * a.k;
    IntVec bk = a.beta * a.k;
    for (std::size_t j = 0; j < a.l; ++j) {
        if (ak[j] != a.h[j])
            fail("endpoint map at 0 is not unital on block " + std::to_string(j + 1) +
                 ": (alpha*k)[" + std::to_string(j + 1) + "] = " + ak[j].get_str() +
                 " != h = " + a.h[j].get_str());
        if (bk[j] != a.h[j])
            fail("endpoint map at 1 is not unital on block " + std::to_string(j + 1) +
                 ": (beta*k)[" + std::to_string(j + 1) + "] = " + bk[j].get_str() +
                 " != h = " + a.h[j].get_str());
    }
}

KTheoryResult k_theory(const AlgebraPresentation& a) {
    IntMatrix d = a.boundary();
    KTheoryResult r;
    r.k0_basis = kernel_basis(d);
    r.k0_rank = r.k0_basis.cols();
    r.k1 = cokernel(d);
    r.scale = a.k;
    return r;
}

bool k0_positive(const KTheoryResult& kt, const IntVec& x) {
    if (x.size() != kt.k0_rank)
        throw Error(ErrorKind::DimensionMismatch, "coordinate length does not match K0 rank");
    return vec_is_nonnegative(kt.k0_basis * x);
}

AlgebraPresentation point_algebra() {
    AlgebraPresentation a;
    a.p = 1;
    a.k = {1};
    a.l = 0;
    a.alpha = IntMatrix(0, 1);
    a.beta = IntMatrix(0, 1);
    a.name = "point";
    return a;
}

AlgebraPresentation matrix_algebra(long n) {
    AlgebraPresentation a;
    a.p = 1;
    a.k = {Int(n)};
    a.l = 0;
    a.alpha = IntMatrix(0, 1);
    a.beta = IntMatrix(0, 1);
    a.name = "M" + std::to_string(n);
    return a;
}

AlgebraPresentation circle_algebra() {
    AlgebraPresentation a;
    a.p = 1;
    a.k = {1};
    a.l = 1;
    a.h = {1};
    a.alpha = IntMatrix::of({{1}});
    a.beta = IntMatrix::of({{1}});
    a.name = "circle";
    return a;
}

AlgebraPresentation interval_algebra() {
    AlgebraPresentation a;
    a.p = 2;
    a.k = {1, 1};
    a.l = 1;
    a.h = {1};
    a.alpha = IntMatrix::of({{1, 0}});
    a.beta = IntMatrix::of({{0, 1}});
    a.name = "interval";
    return a;
}

AlgebraPresentation figure_eight_algebra() {
    AlgebraPresentation a;
    a.p = 1;
    a.k = {1};
    a.l = 2;
    a.h = {1, 1};
    a.alpha = IntMatrix::of({{1}, {1}});
    a.beta = IntMatrix::of({{1}, {1}});
    a.name = "figure-eight";
    return a;
}

AlgebraPresentation pulled_point_algebra() {
    AlgebraPresentation a;
    a.p = 3;
    a.k = {1, 1, 1};
    a.l = 1;
    a.h = {2};
    a.alpha = IntMatrix::of({{1, 0, 1}});
    a.beta = IntMatrix::of({{0, 1, 1}});
    a.name = "pulled-point";
    return a;
}

} // namespace etkk
