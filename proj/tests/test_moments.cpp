#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bglab/moments.hpp"
#include "bglab/rng.hpp"

using namespace bglab;

namespace {

CMatrix diag(std::initializer_list<cplx> entries) {
    std::vector<cplx> v(entries);
    return CMatrix::diagonal(v);
}

}  // namespace

TEST_CASE("index sets enumerate by length then lexicographically") {
    const MomentIndexSet s = MomentIndexSet::make(2, 2);
    REQUIRE(s.size() == 6);  // 2 + 4
    CHECK(s.indices[0] == std::vector<int>{1});
    CHECK(s.indices[1] == std::vector<int>{2});
    CHECK(s.indices[2] == std::vector<int>{1, 1});
    CHECK(s.indices[3] == std::vector<int>{1, 2});
    CHECK(s.indices[4] == std::vector<int>{2, 1});
    CHECK(s.indices[5] == std::vector<int>{2, 2});

    CHECK(MomentIndexSet::make(3, 3).size() == 3 + 9 + 27);
}

TEST_CASE("unitary moments") {
    const MomentVector a = unitary_moments({diag({1.0, -1.0})}, 2);
    CHECK(std::abs(a.values[0]) < 1e-15);
    CHECK(std::abs(a.values[1] - 1.0) < 1e-15);

    const MomentVector b = unitary_moments({CMatrix::identity(3), CMatrix::identity(3)}, 1);
    CHECK(std::abs(b.values[0] - 1.0) < 1e-15);
    CHECK(std::abs(b.values[1] - 1.0) < 1e-15);

    const MomentVector c = unitary_moments({diag({1.0, cplx(0, 1)})}, 2);
    CHECK(std::abs(c.values[0] - cplx(0.5, 0.5)) < 1e-15);
    CHECK(std::abs(c.values[1]) < 1e-15);
}

TEST_CASE("zero-one pattern detection") {
    // the order-2 cyclic tuple collapses every even product to 1
    const MomentVector flip = unitary_moments({diag({1.0, -1.0})}, 4);
    CHECK(is_zero_one_pattern(flip));
    auto rng = make_rng(40);
    const MomentVector generic = unitary_moments({random_haar_unitary(3, rng)}, 2);
    CHECK(!is_zero_one_pattern(generic));
}

TEST_CASE("pointwise product and its Kronecker witness") {
    auto rng = make_rng(41);
    std::vector<CMatrix> us{random_haar_unitary(3, rng), random_haar_unitary(3, rng)};
    const MomentVector x = unitary_moments(us, 2);

    MomentVector ones = x;
    for (auto& v : ones.values) v = 1.0;
    const MomentVector same = pointwise_product(x, ones);
    for (std::size_t k = 0; k < x.values.size(); ++k)
        CHECK(std::abs(same.values[k] - x.values[k]) < 1e-15);

    MomentVector zeros = x;
    for (auto& v : zeros.values) v = 0.0;
    for (const auto& v : pointwise_product(x, zeros).values) CHECK(std::abs(v) < 1e-15);

    const CMatrix u = diag({1.0, cplx(0, 1)});
    const KronWitness kw = kron_realize({u}, {u}, 2);
    CHECK(std::abs(kw.moments.values[0] - cplx(0.0, 0.5)) < 1e-14);
    CHECK(kw.witness_residual < 1e-10);
}

TEST_CASE("convex combination by direct sums") {
    const ConvexWitness mid =
        convex_combine({diag({1.0, 1.0})}, {diag({cplx(0, 1), cplx(0, 1)})}, 1);
    CHECK(mid.t == doctest::Approx(0.5));
    CHECK(std::abs(mid.combined.values[0] - cplx(0.5, 0.5)) < 1e-14);
    CHECK(mid.witness_residual < 1e-10);

    const ConvexWitness phase = convex_combine({diag({1.0})}, {diag({-1.0})}, 1);
    CHECK(std::abs(phase.combined.values[0]) < 1e-14);

    const ConvexWitness quarter =
        convex_combine({diag({1.0})}, {diag({1.0, 1.0, 1.0})}, 1);
    CHECK(quarter.t == doctest::Approx(0.25));
}

TEST_CASE("gauge averaging") {
    auto rng = make_rng(42);
    std::vector<CMatrix> us{random_haar_unitary(3, rng), random_haar_unitary(3, rng)};

    const MomentVector mv = unitary_moments(us, 2);
    const MomentVector ga = gauge_average(mv);
    // indices (2) and (2,2) survive, everything touching u1 dies
    CHECK(std::abs(ga.values[0]) < 1e-15);                      // (1)
    CHECK(std::abs(ga.values[1] - mv.values[1]) < 1e-15);       // (2)
    CHECK(std::abs(ga.values[2]) < 1e-15);                      // (1,1)
    CHECK(std::abs(ga.values[3]) < 1e-15);                      // (1,2)
    CHECK(std::abs(ga.values[4]) < 1e-15);                      // (2,1)
    CHECK(std::abs(ga.values[5] - mv.values[5]) < 1e-15);       // (2,2)

    const MomentVector single = gauge_average(unitary_moments({us[0]}, 2));
    for (const auto& v : single.values) CHECK(std::abs(v) < 1e-15);

    const MomentVector byroots = gauge_average_by_roots(us, 2);
    for (std::size_t k = 0; k < ga.values.size(); ++k)
        CHECK(std::abs(ga.values[k] - byroots.values[k]) < 1e-12);
}

TEST_CASE("projection pair moments") {
    const CMatrix id2 = CMatrix::identity(2);
    const PairMoments ones = projection_moments({id2, id2});
    CHECK(ones.at(0, 0) == doctest::Approx(1.0));
    CHECK(ones.at(0, 1) == doctest::Approx(1.0));

    const PairMoments ortho = projection_moments({diag({1.0, 0.0}), diag({0.0, 1.0})});
    CHECK(ortho.at(0, 0) == doctest::Approx(0.5));
    CHECK(ortho.at(0, 1) == doctest::Approx(0.0));
    CHECK(ortho.at(1, 1) == doctest::Approx(0.5));

    CMatrix half(2);  // rank-1 projection onto (1,1)/sqrt(2)
    half(0, 0) = half(0, 1) = half(1, 0) = half(1, 1) = 0.5;
    const PairMoments mixed = projection_moments({diag({1.0, 0.0}), half});
    CHECK(mixed.at(0, 1) == doctest::Approx(0.25));

    SUBCASE("random moments satisfy the defining inequalities") {
        auto rng = make_rng(43);
        for (int i = 0; i < 30; ++i) {
            std::vector<CMatrix> es{random_projection(4, rng), random_projection(4, rng),
                                    random_projection(4, rng)};
            const PairMoments pm = projection_moments(es);
            for (int a = 0; a < 3; ++a)
                for (int b = a; b < 3; ++b) {
                    CHECK(pm.at(a, b) >= -1e-12);
                    CHECK(pm.at(a, b) <= 1.0 + 1e-12);
                    CHECK(pm.at(a, b) <= std::min(pm.at(a, a), pm.at(b, b)) + 1e-10);
                }
        }
    }
}

TEST_CASE("hull membership certificates") {
    SUBCASE("interval case") {
        PairMoments pm;
        pm.n = 1;
        pm.values = {0.3};
        const HullCertificate cert = hull_membership(pm);
        REQUIRE(cert.member);
        CHECK(cert.weights.at(0) == doctest::Approx(0.7));
        CHECK(cert.weights.at(1) == doctest::Approx(0.3));
    }

    SUBCASE("unique interior decomposition") {
        PairMoments pm;
        pm.n = 2;
        pm.values = {0.5, 0.25, 0.5};
        const HullCertificate cert = hull_membership(pm);
        REQUIRE(cert.member);
        for (std::uint32_t mask = 0; mask < 4; ++mask)
            CHECK(cert.weights.at(mask) == doctest::Approx(0.25).epsilon(1e-7));
    }

    SUBCASE("pair bound violation is rejected with a certificate") {
        PairMoments pm;
        pm.n = 2;
        pm.values = {0.5, 0.5, 0.25};
        const HullCertificate cert = hull_membership(pm);
        REQUIRE(!cert.member);
        REQUIRE(cert.separating_functional.size() == 4);
        HullVertexSet vs{2};
        for (std::uint32_t mask = 0; mask < 4; ++mask) {
            double val = cert.separating_functional[3];
            const PairMoments v = vs.vertex(mask);
            for (std::size_t r = 0; r < 3; ++r) val += cert.separating_functional[r] * v.values[r];
            CHECK(val <= 1e-9);
        }
        double atq = cert.separating_functional[3];
        for (std::size_t r = 0; r < 3; ++r) atq += cert.separating_functional[r] * pm.values[r];
        CHECK(atq > 0.0);
    }

    SUBCASE("size guard") {
        PairMoments pm;
        pm.n = 13;
        pm.values.assign(PairMoments::tri_size(13), 0.0);
        CHECK_THROWS_AS(hull_membership(pm), std::invalid_argument);
    }
}

TEST_CASE("abelian simulation") {
    const PairMoments two = simulate_abelian(2, {{0.5, 0b01}, {0.5, 0b10}});
    CHECK(two.at(0, 0) == doctest::Approx(0.5));
    CHECK(two.at(0, 1) == doctest::Approx(0.0));
    CHECK(two.at(1, 1) == doctest::Approx(0.5));

    const PairMoments full = simulate_abelian(2, {{1.0, 0b11}});
    CHECK(full.at(0, 0) == doctest::Approx(1.0));
    CHECK(full.at(0, 1) == doctest::Approx(1.0));

    // A1 = [0, 1/2), A2 = [1/4, 3/4) on four equal atoms
    const PairMoments strips = simulate_abelian(
        2, {{0.25, 0b01}, {0.25, 0b11}, {0.25, 0b10}, {0.25, 0b00}});
    CHECK(strips.at(0, 0) == doctest::Approx(0.5));
    CHECK(strips.at(0, 1) == doctest::Approx(0.25));
    CHECK(strips.at(1, 1) == doctest::Approx(0.5));

    CHECK_THROWS_AS(simulate_abelian(2, {{0.7, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(simulate_abelian(2, {{-0.5, 1}, {1.5, 2}}), std::invalid_argument);

    SUBCASE("simulated moments always sit in the hull") {
        auto rng = make_rng(44);
        std::uniform_real_distribution<double> u(0.05, 1.0);
        for (int i = 0; i < 50; ++i) {
            std::uniform_int_distribution<int> n_d(1, 5), cnt_d(1, 8);
            const int n = n_d(rng);
            std::uniform_int_distribution<std::uint32_t> mask_d(0, (1u << n) - 1u);
            std::vector<Atom> atoms;
            double total = 0.0;
            const int cnt = cnt_d(rng);
            for (int a = 0; a < cnt; ++a) {
                atoms.push_back({u(rng), mask_d(rng)});
                total += atoms.back().weight;
            }
            for (auto& at : atoms) at.weight /= total;
            CHECK(hull_membership(simulate_abelian(n, atoms)).member);
        }
    }
}
