#include "doctest.h"

#include "etkk/error.hpp"
#include "etkk/zlinalg.hpp"
#include "gen.hpp"
#include "oracles.hpp"

using namespace etkk;

namespace {

std::size_t rank_of(const IntMatrix& a) { return snf(a).rank(); }

} // namespace

TEST_CASE("snf of the identity") {
    IntMatrix a = IntMatrix::identity(2);
    SnfDecomposition s = snf(a);
    CHECK(s.verify(a));
    CHECK(s.d == a);
}

TEST_CASE("snf of diag(2,3) is diag(1,6)") {
    IntMatrix a = IntMatrix::of({{2, 0}, {0, 3}});
    SnfDecomposition s = snf(a);
    CHECK(s.verify(a));
    CHECK(s.d == IntMatrix::of({{1, 0}, {0, 6}}));
    CHECK(s.diagonal() == oracle::snf_diagonal_by_minors(a));
}

TEST_CASE("snf of a unimodular row") {
    IntMatrix a = IntMatrix::of({{1, -1, 0}});
    SnfDecomposition s = snf(a);
    CHECK(s.verify(a));
    CHECK(s.d == IntMatrix::of({{1, 0, 0}}));
}

TEST_CASE("snf with entries beyond machine words") {
    Int big = (Int(1) << 80) + 1; // 2^80 + 1 = 17 * 59649589127497217 * ...
    IntMatrix a(2, 2);
    a.at(0, 0) = big;
    a.at(0, 1) = 1;
    a.at(1, 0) = -1;
    a.at(1, 1) = big;
    SnfDecomposition s = snf(a);
    CHECK(s.verify(a));
    CHECK(s.d.at(0, 0) == 1);
    CHECK(s.d.at(1, 1) == big * big + 1); // |det|
    CHECK(s.diagonal() == oracle::snf_diagonal_by_minors(a));
}

TEST_CASE("snf on empty shapes") {
    for (auto [r, c] : {std::pair<std::size_t, std::size_t>{0, 3}, {3, 0}, {0, 0}}) {
        IntMatrix a(r, c);
        SnfDecomposition s = snf(a);
        CHECK(s.verify(a));
    }
}

TEST_CASE("snf invariants on random matrices") {
    gen::Rng rng(20240811);
    for (int iter = 0; iter < 300; ++iter) {
        std::size_t m = static_cast<std::size_t>(gen::pick(rng, 0, 6));
        std::size_t n = static_cast<std::size_t>(gen::pick(rng, 0, 6));
        IntMatrix a = gen::random_matrix(rng, m, n, -5, 5);
        SnfDecomposition s = snf(a);
        CHECK(s.verify(a));
        if (m <= 5 && n <= 5)
            CHECK(s.diagonal() == oracle::snf_diagonal_by_minors(a));
    }
}

TEST_CASE("kernel basis of a single relation") {
    IntMatrix a = IntMatrix::of({{1, -1, 0}});
    IntMatrix k = kernel_basis(a);
    CHECK(k == IntMatrix::of({{1, 0}, {1, 0}, {0, 1}}));
    CHECK((a * k).is_zero());
}

TEST_CASE("kernel basis trivial and full cases") {
    CHECK(kernel_basis(IntMatrix::identity(3)).cols() == 0);
    CHECK(kernel_basis(IntMatrix::zero(1, 2)) == IntMatrix::identity(2));
}

TEST_CASE("kernel rank and saturation on random matrices") {
    gen::Rng rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t m = static_cast<std::size_t>(gen::pick(rng, 0, 5));
        std::size_t n = static_cast<std::size_t>(gen::pick(rng, 0, 5));
        IntMatrix a = gen::random_matrix(rng, m, n, -5, 5);
        IntMatrix k = kernel_basis(a);
        CHECK((a * k).is_zero());
        CHECK(k.cols() + rank_of(a) == n);
        if (k.cols() > 0) {
            // saturated: all invariant factors of the basis are 1
            IntVec d = snf(k).diagonal();
            for (std::size_t i = 0; i < k.cols(); ++i)
                CHECK(d[i] == 1);
        }
    }
}

TEST_CASE("cokernel presentations") {
    CHECK(cokernel(IntMatrix::of({{1, -1, 0}})).is_trivial());
    AbelianGroup z2 = cokernel(IntMatrix::zero(2, 1));
    CHECK(z2.free_rank == 2);
    CHECK(z2.torsion.empty());
    AbelianGroup t = cokernel(IntMatrix::of({{2}}));
    CHECK(t.free_rank == 0);
    CHECK(t.torsion == IntVec{2});
    CHECK(t.to_string() == "Z/2");
}

TEST_CASE("solve_linear examples") {
    CHECK(!solve_linear(IntMatrix::of({{2}}), {Int(1)}).has_value());
    auto zero = solve_linear(IntMatrix::of({{3, 1}, {0, 2}}), {Int(0), Int(0)});
    REQUIRE(zero.has_value());
    CHECK(vec_is_zero(*zero));
    CHECK_THROWS_AS((void)solve_linear(IntMatrix::of({{1, 2}}), IntVec{Int(1), Int(2)}), Error);
}

TEST_CASE("solve_linear round trip and completeness on random systems") {
    gen::Rng rng(99);
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t m = static_cast<std::size_t>(gen::pick(rng, 1, 3));
        std::size_t n = static_cast<std::size_t>(gen::pick(rng, 0, 3));
        IntMatrix a = gen::random_matrix(rng, m, n, -3, 3);
        // solvable instance by construction
        IntVec x0(n);
        for (auto& x : x0)
            x = gen::pick(rng, -3, 3);
        auto sol = solve_linear(a, a * x0);
        REQUIRE(sol.has_value());
        CHECK(a * *sol == a * x0);
        // arbitrary right-hand side: a "no" must survive box enumeration
        IntVec b(m);
        for (auto& x : b)
            x = gen::pick(rng, -4, 4);
        auto s2 = solve_linear(a, b);
        if (s2) {
            CHECK(a * *s2 == b);
        } else {
            CHECK(!oracle::box_solve(a, b, 4).has_value());
        }
    }
}

TEST_CASE("lattice reduction canonical representatives") {
    IntMatrix l = IntMatrix::of({{1}, {-1}, {0}});
    IntVec v{Int(1), Int(0), Int(-1)};
    LatticeReduction red = reduce_mod_lattice(l, v);
    CHECK(!vec_is_zero(red.residue));
    // congruence with (0,0,1) is false; the difference (1,0,-2) leaves the span
    LatticeReduction other = reduce_mod_lattice(l, {Int(0), Int(0), Int(1)});
    CHECK(red.residue != other.residue);
    for (long c = -10; c <= 10; ++c)
        CHECK(IntVec{Int(1 - c), Int(c), Int(-2)} != IntVec(3, Int(0)));

    // member of the span reduces to zero with correct coefficients
    LatticeReduction mem = reduce_mod_lattice(l, {Int(3), Int(-3), Int(0)});
    CHECK(vec_is_zero(mem.residue));
    CHECK(l * mem.coeffs == IntVec{Int(3), Int(-3), Int(0)});
}

TEST_CASE("lattice reduction with no lattice") {
    IntMatrix l(3, 0);
    IntVec v{Int(4), Int(-1), Int(2)};
    CHECK(reduce_mod_lattice(l, v).residue == v);
}

TEST_CASE("lattice reduction is idempotent and constant on cosets") {
    gen::Rng rng(1234);
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t n = static_cast<std::size_t>(gen::pick(rng, 1, 4));
        std::size_t c = static_cast<std::size_t>(gen::pick(rng, 0, 4));
        IntMatrix l = gen::random_matrix(rng, n, c, -4, 4);
        IntVec v(n);
        for (auto& x : v)
            x = gen::pick(rng, -6, 6);
        LatticeReduction r1 = reduce_mod_lattice(l, v);
        CHECK(reduce_mod_lattice(l, r1.residue).residue == r1.residue);
        CHECK(l * r1.coeffs == vec_sub(v, r1.residue));
        IntVec shift = v;
        for (std::size_t j = 0; j < c; ++j) {
            Int q = gen::pick(rng, -3, 3);
            shift = vec_add(shift, vec_scale(q, l.col_vec(j)));
        }
        CHECK(reduce_mod_lattice(l, shift).residue == r1.residue);
    }
}

TEST_CASE("hnf shape conventions") {
    gen::Rng rng(55);
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t m = static_cast<std::size_t>(gen::pick(rng, 1, 5));
        std::size_t n = static_cast<std::size_t>(gen::pick(rng, 1, 5));
        IntMatrix a = gen::random_matrix(rng, m, n, -5, 5);
        HnfDecomposition h = column_hnf(a);
        // h = a * (first rank columns of w)
        IntMatrix expected = a * h.w;
        for (std::size_t t = 0; t < h.rank(); ++t) {
            std::size_t p = h.pivot_rows[t];
            CHECK(h.h.at(p, t) > 0);
            for (std::size_t i = 0; i < p; ++i)
                CHECK(h.h.at(i, t) == 0);
            for (std::size_t s = 0; s < t; ++s) {
                CHECK(h.h.at(p, s) >= 0);
                CHECK(h.h.at(p, s) < h.h.at(p, t));
            }
            CHECK(h.h.col_vec(t) == expected.col_vec(t));
            if (t > 0)
                CHECK(h.pivot_rows[t - 1] < p);
        }
    }
}
