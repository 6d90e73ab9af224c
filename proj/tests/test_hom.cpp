#include "doctest.h"

#include "etkk/error.hpp"
#include "etkk/hom.hpp"
#include "gen.hpp"

using namespace etkk;

namespace {

StandardHom delta_hom(const AlgebraPresentation& a, const AlgebraPresentation& b, long i) {
    StandardHom h;
    h.r = 1;
    h.lambda0 = IntMatrix(b.p, a.p);
    h.lambda0.at(0, static_cast<std::size_t>(i)) = 1;
    return h; // no blocks: the point algebra has l' = 0
}

// The 2-standard fold map psi(f) = f(2t) / f(2-2t): interval -> circle.
MStandardHom fold_map() {
    MStandardHom psi;
    psi.m = 2;
    psi.r = 1;
    psi.lambda0 = IntMatrix::of({{1, 0}});
    MCell up{{Int(0), Int(0)}, {Int(1)}, {Int(0)}, {Int(1), Int(0)}, {Int(0), Int(1)}};
    MCell down{{Int(0), Int(0)}, {Int(0)}, {Int(1)}, {Int(0), Int(1)}, {Int(1), Int(0)}};
    psi.cells = {{up, down}};
    return psi;
}

// xyx^-1y over four dividing intervals: figure-eight -> circle.
MStandardHom word_xyxinvy() {
    MStandardHom psi;
    psi.m = 4;
    psi.r = 1;
    psi.lambda0 = IntMatrix::of({{1}});
    auto cell = [](long np1, long np2, long nm1, long nm2) {
        return MCell{{Int(0)}, {Int(np1), Int(np2)}, {Int(nm1), Int(nm2)}, {Int(1)}, {Int(1)}};
    };
    psi.cells = {{cell(1, 0, 0, 0), cell(0, 1, 0, 0), cell(0, 0, 1, 0), cell(0, 1, 0, 0)}};
    return psi;
}

MStandardHom word_yy() {
    MStandardHom psi;
    psi.m = 2;
    psi.r = 1;
    psi.lambda0 = IntMatrix::of({{1}});
    MCell y{{Int(0)}, {Int(0), Int(1)}, {Int(0), Int(0)}, {Int(1)}, {Int(1)}};
    psi.cells = {{y, y}};
    return psi;
}

} // namespace

TEST_CASE("the three point evaluations of the pulled-point algebra validate") {
    AlgebraPresentation a = pulled_point_algebra(), b = point_algebra();
    for (long i = 0; i < 3; ++i)
        CHECK_NOTHROW(validate_standard(a, b, delta_hom(a, b, i)));
    CHECK(induced_diagram(a, b, delta_hom(a, b, 0)).lambda0 == IntMatrix::of({{1, 0, 0}}));
}

TEST_CASE("the doubled loop as 1-standard data") {
    AlgebraPresentation a = figure_eight_algebra(), b = circle_algebra();
    StandardHom h;
    h.r = 2;
    h.lambda0 = IntMatrix::of({{2}});
    h.blocks = {HomBlock{{Int(0)}, {Int(0), Int(2)}, {Int(0), Int(0)}}};
    CHECK_NOTHROW(validate_standard(a, b, h));
    // at r = 1 the size equation cannot hold
    StandardHom bad = h;
    bad.r = 1;
    bad.lambda0 = IntMatrix::of({{1}});
    CHECK_THROWS_WITH_AS(validate_standard(a, b, bad), doctest::Contains("size equation"),
                         Error);
    // tampering one multiplicity names the block
    StandardHom tam = h;
    tam.blocks[0].nplus[1] += 1;
    CHECK_THROWS_WITH_AS(validate_standard(a, b, tam), doctest::Contains("block 1"), Error);
}

TEST_CASE("induced diagram reads off windings and finite-dimensional images") {
    AlgebraPresentation a = figure_eight_algebra(), b = circle_algebra();
    MStandardHom psi = word_xyxinvy();
    validate_m_standard(a, b, psi);
    CHECK(induced_diagram(a, b, psi).lambda1 == IntMatrix::of({{0, 2}}));
    StandardHom fd = tensor_with_unit(a, b, {Int(2)});
    CHECK(fd.finite_dimensional_image());
    CHECK(induced_diagram(a, b, fd).lambda1.is_zero());
}

TEST_CASE("direct sums add every table") {
    AlgebraPresentation a = pulled_point_algebra(), b = point_algebra();
    StandardHom d1 = delta_hom(a, b, 0), d3 = delta_hom(a, b, 2);
    StandardHom s = direct_sum(a, b, d1, d3);
    CHECK(s.r == 2);
    CHECK(s.lambda0 == IntMatrix::of({{1, 0, 1}}));
    CHECK_NOTHROW(validate_standard(a, b, s));
    StandardHom dbl = direct_sum(a, b, d1, d1);
    CHECK(dbl.lambda0 == IntMatrix::of({{2, 0, 0}}));
}

TEST_CASE("point evaluation stabilizer of the fold map is evaluation at 1") {
    AlgebraPresentation a = interval_algebra(), b = circle_algebra();
    MStandardHom psi = fold_map();
    validate_m_standard(a, b, psi);
    StandardHom eta = point_evaluation_stabilizer(a, b, psi);
    CHECK(eta == tensor_with_unit(a, b, {Int(0), Int(1)}));
    CHECK(eta.r == 1);
    CHECK(eta.lambda0 == IntMatrix::of({{0, 1}}));
    CHECK(eta.finite_dimensional_image());
}

TEST_CASE("stabilizer of a 1-standard hom is empty") {
    AlgebraPresentation a = interval_algebra(), b = circle_algebra();
    StandardHom eta = point_evaluation_stabilizer(
        a, b, as_m_standard(a, b, realize_diagram(a, b, zero_diagram(a, b), 1)));
    CHECK(eta.is_empty());
}

TEST_CASE("m-to-1 reduction of the fold map") {
    AlgebraPresentation a = interval_algebra(), b = circle_algebra();
    ReductionResult red = reduce_to_1_standard(a, b, fold_map());
    CHECK(red.stabilizer == tensor_with_unit(a, b, {Int(0), Int(1)}));
    CHECK(red.reduced.r == 2);
    CHECK(red.reduced.lambda0 == IntMatrix::of({{1, 1}}));
    CHECK(red.reduced.blocks[0].nplus == IntVec{1});
    CHECK(red.reduced.blocks[0].nminus == IntVec{1});
    CHECK(vec_is_zero(red.reduced.blocks[0].ntheta));
    CHECK(red.certificate.steps.size() == 1);
    CHECK(red.certificate.steps[0].cut_points == std::vector<Rat>{Rat(1, 2)});
    CHECK(verify_certificate(a, b, fold_map(), as_m_standard(a, b, red.reduced),
                             red.certificate));
}

TEST_CASE("m-to-1 reduction at m = 1 is the identity") {
    AlgebraPresentation a = figure_eight_algebra(), b = circle_algebra();
    StandardHom h;
    h.r = 2;
    h.lambda0 = IntMatrix::of({{2}});
    h.blocks = {HomBlock{{Int(0)}, {Int(0), Int(2)}, {Int(0), Int(0)}}};
    ReductionResult red = reduce_to_1_standard(a, b, as_m_standard(a, b, h));
    CHECK(red.stabilizer.is_empty());
    CHECK(red.reduced == h);
}

TEST_CASE("m-to-1 reduction of the four-letter word") {
    AlgebraPresentation a = figure_eight_algebra(), b = circle_algebra();
    ReductionResult red = reduce_to_1_standard(a, b, word_xyxinvy());
    CHECK(red.stabilizer == tensor_with_unit(a, b, {Int(3)}));
    CHECK(red.reduced.blocks[0].nplus == IntVec{Int(1), Int(2)});
    CHECK(red.reduced.blocks[0].nminus == IntVec{Int(1), Int(0)});
    DiagramPair d = induced_diagram(a, b, red.reduced);
    CHECK(d.lambda1 == IntMatrix::of({{0, 2}}));
}

TEST_CASE("realize the zero diagram at padding 1: the kappa hom") {
    AlgebraPresentation a = pulled_point_algebra(), b = point_algebra();
    StandardHom h = realize_diagram(a, b, zero_diagram(a, b), 1);
    CHECK(h == kappa_hom(a, b, 1));
    CHECK(h.r == 3);
    CHECK(h.finite_dimensional_image());
}

TEST_CASE("realize a single winding on the circle") {
    AlgebraPresentation c = circle_algebra();
    DiagramPair d{IntMatrix::of({{0}}), IntMatrix::of({{1}})};
    CHECK(minimal_padding(c, c, d) == 1);
    StandardHom h = realize_diagram(c, c, d, 1);
    CHECK(h.blocks[0].nplus == IntVec{1});
    CHECK(h.blocks[0].nminus == IntVec{0});
    CHECK(vec_is_zero(h.blocks[0].ntheta));
    CHECK(induced_diagram(c, c, h) == diagram_add(d, kappa_diagram(c, c)));
    CHECK_THROWS_AS((void)realize_diagram(c, c, d, 0), NotRealizableError);
}

TEST_CASE("minimal padding of the zero diagram is 1") {
    AlgebraPresentation a = pulled_point_algebra(), b = point_algebra();
    CHECK(minimal_padding(a, b, zero_diagram(a, b)) == 1);
}

TEST_CASE("realize the unit correction with the pulled-point algebra as target") {
    AlgebraPresentation a = pulled_point_algebra();
    IntMatrix mu(a.p, a.l); // the e_11 matrix unit, A -> A
    mu.at(0, 0) = 1;
    DiagramPair d = mu_diagram(a, a, mu);
    CHECK(d.lambda0 == IntMatrix::of({{1, -1, 0}, {0, 0, 0}, {0, 0, 0}}));
    CHECK(d.lambda1 == IntMatrix::of({{1}}));
    CHECK(minimal_padding(a, a, d) == 1);
    StandardHom h = realize_diagram(a, a, d, 1);
    CHECK(h.r == 3);
    CHECK(h.lambda0 == IntMatrix::of({{2, 0, 1}, {1, 1, 1}, {1, 1, 1}}));
    CHECK(h.blocks[0].nplus == IntVec{1});
    CHECK(h.blocks[0].nminus == IntVec{0});
    CHECK(h.blocks[0].ntheta == IntVec{Int(2), Int(1), Int(1)});
}

TEST_CASE("realization rejects diagrams that no padding can make unital") {
    AlgebraPresentation a = point_algebra(), b = matrix_algebra(2);
    DiagramPair d{IntMatrix::of({{1}}), IntMatrix(0, 0)};
    CHECK_THROWS_AS((void)realize_diagram(a, b, d, 5), Error);
    CHECK_THROWS_AS((void)minimal_padding(a, b, d), Error);
}

TEST_CASE("decide: the paper's three point evaluations") {
    AlgebraPresentation a = pulled_point_algebra(), b = point_algebra();
    MStandardHom d1 = as_m_standard(a, b, delta_hom(a, b, 0));
    MStandardHom d2 = as_m_standard(a, b, delta_hom(a, b, 1));
    MStandardHom d3 = as_m_standard(a, b, delta_hom(a, b, 2));

    DecisionResult r12 = decide_stable_homotopy(a, b, d1, d2);
    CHECK(r12.homotopic);
    CHECK(r12.kk_difference.is_zero());
    REQUIRE(r12.witness.has_value());
    CHECK(r12.witness->finite_dimensional_image());
    CHECK(!r12.witness->is_empty());
    REQUIRE(r12.certificate.has_value());
    CHECK(verify_certificate(a, b, d1, d2, *r12.certificate));
    // the correction stabilizer contains the third evaluation: its lambda0
    // dominates the delta3 column
    bool has_correction = false;
    for (const CertStep& s : r12.certificate->steps)
        if (s.lemma == StepKind::DiagramCorrection) {
            has_correction = true;
            CHECK(s.result->lambda0.at(0, 2) >= 1);
        }
    CHECK(has_correction);

    DecisionResult r13 = decide_stable_homotopy(a, b, d1, d3);
    CHECK(!r13.homotopic);
    CHECK(!r13.kk_difference.is_zero());
    CHECK(!r13.certificate.has_value());

    DecisionResult same = decide_stable_homotopy(a, b, d1, d1);
    CHECK(same.homotopic);
    REQUIRE(same.certificate.has_value());
    CHECK(same.certificate->steps.size() == 1); // kappa-only witness
    CHECK(verify_certificate(a, b, d1, d1, *same.certificate));
}

TEST_CASE("decide: the two loop words are stably homotopic") {
    AlgebraPresentation a = figure_eight_algebra(), b = circle_algebra();
    MStandardHom p1 = word_xyxinvy(), p2 = word_yy();
    DecisionResult res = decide_stable_homotopy(a, b, p1, p2);
    CHECK(res.homotopic);
    REQUIRE(res.witness.has_value());
    CHECK(res.witness->finite_dimensional_image());
    REQUIRE(res.certificate.has_value());
    CHECK(verify_certificate(a, b, p1, p2, *res.certificate));
}

TEST_CASE("tampered certificates fail verification") {
    AlgebraPresentation a = pulled_point_algebra(), b = point_algebra();
    MStandardHom d1 = as_m_standard(a, b, delta_hom(a, b, 0));
    MStandardHom d2 = as_m_standard(a, b, delta_hom(a, b, 1));
    DecisionResult res = decide_stable_homotopy(a, b, d1, d2);
    REQUIRE(res.certificate.has_value());

    HomotopyCertificate cert = *res.certificate;
    cert.steps[0].stabilizer.lambda0.at(0, 0) += 1;
    CHECK(!verify_certificate(a, b, d1, d2, cert));

    cert = *res.certificate;
    cert.steps.back().post1.lambda0.at(0, 0) += 1;
    CHECK(!verify_certificate(a, b, d1, d2, cert));

    // swapping the inputs invalidates the recorded pre diagrams
    CHECK(!verify_certificate(a, b, d2, d1, *res.certificate));

    // over a target with interval blocks, dropping the closing lemma leaves
    // same-diagram but different-data sides, which is not a proof
    AlgebraPresentation f8 = figure_eight_algebra(), circ = circle_algebra();
    MStandardHom p1 = word_xyxinvy(), p2 = word_yy();
    DecisionResult loops = decide_stable_homotopy(f8, circ, p1, p2);
    REQUIRE(loops.certificate.has_value());
    HomotopyCertificate cut = *loops.certificate;
    REQUIRE(cut.steps.back().lemma == StepKind::SameDiagram);
    cut.steps.pop_back();
    CHECK(!verify_certificate(f8, circ, p1, p2, cut));
}

TEST_CASE("decide handles targets without interval blocks") {
    AlgebraPresentation a = matrix_algebra(2);
    AlgebraPresentation b;
    b.p = 1;
    b.k = {2};
    b.l = 1;
    b.h = {2};
    b.alpha = IntMatrix::of({{1}});
    b.beta = IntMatrix::of({{1}});
    validate(b);
    StandardHom emb;
    emb.r = 1;
    emb.lambda0 = IntMatrix::of({{1}});
    emb.blocks = {HomBlock{{Int(1)}, {}, {}}};
    validate_standard(a, b, emb);
    MStandardHom m = as_m_standard(a, b, emb);
    DecisionResult res = decide_stable_homotopy(a, b, m, m);
    CHECK(res.homotopic);
    CHECK(verify_certificate(a, b, m, m, *res.certificate));
}

TEST_CASE("property H witness for the pulled-point algebra at L = 2") {
    AlgebraPresentation a = pulled_point_algebra();
    PropertyHWitness w = property_h_witness(a, 2);
    CHECK(w.phi_diagram.lambda0 == IntMatrix::of({{1, 2, 2}, {2, 1, 2}, {2, 2, 1}}));
    CHECK(w.phi_diagram.lambda1 == IntMatrix::of({{-1}}));
    CHECK_NOTHROW(validate_standard(a, a, w.phi_hom));
    CHECK_NOTHROW(validate_standard(a, a, w.psi_hom));
    CHECK(w.psi_hom.finite_dimensional_image());
    CHECK(w.phi_hom.r == 5);
    CHECK(w.psi_hom.r == 6);
    CHECK(w.check);
}

TEST_CASE("property H degenerates gracefully on the point algebra") {
    PropertyHWitness w = property_h_witness(point_algebra(), 1);
    CHECK(w.phi_hom.is_empty());
    CHECK(w.phi_diagram.lambda0 == IntMatrix::of({{0}}));
    CHECK(w.check);
}

TEST_CASE("property H rejects L = 0 with a sufficient bound") {
    try {
        property_h_witness(pulled_point_algebra(), 0);
        FAIL("expected LTooSmallError");
    } catch (const LTooSmallError& e) {
        CHECK(e.sufficient_l() >= 1);
        PropertyHWitness w = property_h_witness(pulled_point_algebra(), e.sufficient_l());
        CHECK(w.check);
    }
}

TEST_CASE("the identity homomorphism is 1-standard with the identity diagram") {
    gen::Rng rng(888);
    for (int iter = 0; iter < 40; ++iter) {
        AlgebraPresentation a = gen::random_presentation(rng);
        StandardHom id = identity_hom(a);
        CHECK_NOTHROW(validate_standard(a, a, id));
        CHECK(induced_diagram(a, a, id) == identity_diagram(a));
    }
}

TEST_CASE("endpoint equations force the commuting condition") {
    gen::Rng rng(5150);
    for (int iter = 0; iter < 120; ++iter) {
        AlgebraPresentation a = gen::random_presentation(rng);
        AlgebraPresentation b = gen::random_presentation(rng);
        StandardHom h = gen::random_standard_hom(rng, a, b);
        CHECK(check_diagram(a, b, induced_diagram(a, b, h)));
    }
}

TEST_CASE("diagram additivity of direct sums") {
    gen::Rng rng(616);
    for (int iter = 0; iter < 100; ++iter) {
        AlgebraPresentation a = gen::random_presentation(rng);
        AlgebraPresentation b = gen::random_presentation(rng);
        StandardHom h1 = gen::random_standard_hom(rng, a, b);
        StandardHom h2 = gen::random_standard_hom(rng, a, b);
        CHECK(induced_diagram(a, b, direct_sum(a, b, h1, h2)) ==
              diagram_add(induced_diagram(a, b, h1), induced_diagram(a, b, h2)));
    }
}

TEST_CASE("realization soundness, padding minimality and monotonicity") {
    gen::Rng rng(8181);
    for (int iter = 0; iter < 100; ++iter) {
        AlgebraPresentation a = gen::random_presentation(rng);
        AlgebraPresentation b = gen::random_presentation(rng);
        DiagramPair d = gen::random_unital_diagram(rng, a, b);
        Int c = minimal_padding(a, b, d);
        // linear-search oracle: c is the first success
        for (Int t = 0; t < c; ++t) {
            bool ok = true;
            try {
                StandardHom h = realize_diagram(a, b, d, t);
                ok = !h.is_empty();
            } catch (const NotRealizableError&) {
                ok = false;
            }
            CHECK(!ok);
        }
        for (Int t = c; t < c + 3; ++t) {
            StandardHom h = realize_diagram(a, b, d, t);
            CHECK_NOTHROW(validate_standard(a, b, h));
            DiagramPair expect = d;
            DiagramPair kap = kappa_diagram(a, b);
            for (Int q = 0; q < t; ++q)
                expect = diagram_add(expect, kap);
            CHECK(induced_diagram(a, b, h) == expect);
            if (d.lambda1.is_zero())
                CHECK(h.finite_dimensional_image());
        }
    }
}

TEST_CASE("decide agrees with class equality and certificates verify") {
    gen::Rng rng(997);
    for (int iter = 0; iter < 60; ++iter) {
        AlgebraPresentation a = gen::random_presentation(rng, 2, 2);
        AlgebraPresentation b = gen::random_presentation(rng, 2, 2);
        std::size_t m1 = static_cast<std::size_t>(gen::pick(rng, 1, 3));
        std::size_t m2 = static_cast<std::size_t>(gen::pick(rng, 1, 3));
        MStandardHom h1 = gen::random_m_standard_hom(rng, a, b, m1);
        MStandardHom h2 = gen::random_m_standard_hom(rng, a, b, m2);
        KKPresentation kk(a, b);
        bool same = kk.kk_class(induced_diagram(a, b, h1)) ==
                    kk.kk_class(induced_diagram(a, b, h2));
        DecisionResult res = decide_stable_homotopy(a, b, h1, h2);
        CHECK(res.homotopic == same);
        if (res.homotopic) {
            CHECK(res.witness->finite_dimensional_image());
            CHECK(verify_certificate(a, b, h1, h2, *res.certificate));
        }
    }
}

TEST_CASE("reductions preserve the induced diagram plus stabilizer") {
    gen::Rng rng(31415);
    for (int iter = 0; iter < 80; ++iter) {
        AlgebraPresentation a = gen::random_presentation(rng, 2, 2);
        AlgebraPresentation b = gen::random_presentation(rng, 2, 2);
        std::size_t m = static_cast<std::size_t>(gen::pick(rng, 1, 4));
        MStandardHom psi = gen::random_m_standard_hom(rng, a, b, m);
        ReductionResult red = reduce_to_1_standard(a, b, psi);
        CHECK(induced_diagram(a, b, red.reduced) ==
              diagram_add(induced_diagram(a, b, psi),
                          induced_diagram(a, b, red.stabilizer)));
        CHECK(verify_certificate(a, b, psi, as_m_standard(a, b, red.reduced),
                                 red.certificate));
    }
}
