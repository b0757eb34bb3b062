#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bglab/optimizer.hpp"
#include "bglab/rng.hpp"

using namespace bglab;

namespace {

CMatrix diag(std::initializer_list<cplx> entries) {
    std::vector<cplx> v(entries);
    return CMatrix::diagonal(v);
}

}  // namespace

TEST_CASE("gradient matrices") {
    auto A1 = FunctionalCoeffs::make(1);
    A1.at(0, 0) = 1.0;
    CHECK(op_norm(omega(0, {CMatrix(2)}, A1) - CMatrix::identity(2)) < 1e-14);

    auto A2 = FunctionalCoeffs::make(2);
    A2.at(0, 0) = 1.0;
    A2.at(0, 1) = -2.0;
    const CMatrix id2 = CMatrix::identity(2);
    CHECK(op_norm(omega(0, {CMatrix(2), id2}, A2) + id2) < 1e-14);  // equals -identity

    auto A3 = FunctionalCoeffs::make(2);
    A3.at(0, 1) = 1.0;
    CHECK(op_norm(omega(0, {CMatrix(2), diag({1.0, 0.0})}, A3) - diag({1.0, 0.0})) < 1e-14);
}

TEST_CASE("single coordinate steps") {
    auto Apos = FunctionalCoeffs::make(1);
    Apos.at(0, 0) = 1.0;
    OptimizerState st;
    st.es = {diag({1.0, 0.0, 0.0})};
    ascent_step(st, 0, Apos);
    CHECK(op_norm(st.es[0] - CMatrix::identity(3)) < 1e-12);
    CHECK(st.objective == doctest::Approx(1.0));

    auto Aneg = FunctionalCoeffs::make(1);
    Aneg.at(0, 0) = -1.0;
    OptimizerState st2;
    st2.es = {diag({1.0, 1.0, 0.0})};
    ascent_step(st2, 0, Aneg);
    CHECK(op_norm(st2.es[0]) < 1e-12);
    CHECK(st2.objective == doctest::Approx(0.0));

    auto Across = FunctionalCoeffs::make(2);
    Across.at(0, 1) = 1.0;
    OptimizerState st3;
    st3.es = {CMatrix(2), CMatrix::identity(2)};
    ascent_step(st3, 0, Across);
    CHECK(op_norm(st3.es[0] - CMatrix::identity(2)) < 1e-12);
}

TEST_CASE("solve on worked examples") {
    SolveOptions so;
    so.seed = 5;

    auto A = FunctionalCoeffs::make(2);
    A.at(0, 0) = 1.0;
    A.at(1, 1) = 1.0;
    A.at(0, 1) = -2.0;
    const OptimizerState st = solve(A, 2, so);
    CHECK(st.objective == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(st.converged);
    CHECK(st.monotone_violations == 0);

    auto B = FunctionalCoeffs::make(2);
    B.at(0, 1) = 1.0;
    CHECK(solve(B, 3, so).objective == doctest::Approx(1.0).epsilon(1e-9));

    auto C = FunctionalCoeffs::make(1);
    C.at(0, 0) = 1.0;
    CHECK(solve(C, 4, so).objective == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("first-order conditions at the returned point") {
    SolveOptions so;
    so.seed = 6;
    auto A = FunctionalCoeffs::make(2);
    A.at(0, 0) = 1.0;
    A.at(1, 1) = 1.0;
    A.at(0, 1) = -2.0;
    const OptimizerState st = solve(A, 2, so);
    REQUIRE(st.residuals.size() == 2);
    for (const auto& k : st.residuals) {
        CHECK(k.commutator_hs <= 1e-8);
        CHECK(k.corner_pos_min >= -1e-8);
        CHECK(k.corner_neg_max <= 1e-8);
        CHECK(k.tau_e_omega >= -1e-10);
        CHECK(k.tau_comp_omega <= 1e-10);
    }
}

TEST_CASE("enumeration oracle") {
    auto A1 = FunctionalCoeffs::make(1);
    A1.at(0, 0) = 1.0;
    CHECK(brute_force_diagonal(A1, 3) == doctest::Approx(1.0));

    auto A = FunctionalCoeffs::make(2);
    A.at(0, 0) = 1.0;
    A.at(1, 1) = 1.0;
    A.at(0, 1) = -2.0;
    CHECK(brute_force_diagonal(A, 2) == doctest::Approx(1.0));

    auto B = FunctionalCoeffs::make(2);
    B.at(0, 1) = 1.0;
    CHECK(brute_force_diagonal(B, 2) == doctest::Approx(1.0));

    auto big = FunctionalCoeffs::make(3);
    CHECK_THROWS_AS(brute_force_diagonal(big, 9), std::invalid_argument);
}

TEST_CASE("ascent dominates the diagonal oracle on random instances") {
    auto rng = make_rng(51);
    std::uniform_real_distribution<double> c_d(-2.0, 2.0);
    for (int i = 0; i < 15; ++i) {
        std::uniform_int_distribution<int> n_d(1, 3), d_d(2, 4);
        const int n = n_d(rng);
        const std::size_t d = static_cast<std::size_t>(d_d(rng));
        auto A = FunctionalCoeffs::make(n);
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) A.at(a, b) = c_d(rng);
        SolveOptions so;
        so.seed = 100 + static_cast<std::uint64_t>(i);
        const OptimizerState st = solve(A, d, so);
        CHECK(st.objective >= brute_force_diagonal(A, d) - 1e-6);
        CHECK(st.monotone_violations == 0);
    }
}

TEST_CASE("scale covariance") {
    auto A = FunctionalCoeffs::make(2);
    A.at(0, 0) = 0.7;
    A.at(1, 1) = -0.4;
    A.at(0, 1) = 1.3;
    auto A3 = A;
    for (auto& v : A3.a) v *= 3.0;

    SolveOptions so;
    so.seed = 77;
    const OptimizerState s1 = solve(A, 3, so);
    const OptimizerState s3 = solve(A3, 3, so);
    CHECK(s3.objective == doctest::Approx(3.0 * s1.objective).epsilon(1e-8));
    for (std::size_t i = 0; i < s1.es.size(); ++i)
        CHECK(op_norm(s1.es[i] - s3.es[i]) < 1e-8);
}

TEST_CASE("tangent probes") {
    SUBCASE("the 2x2 rotation model") {
        // e = diag(0,1), x = second basis vector, y = first; the path
        // derivative at zero is the flip matrix and e(pi/2) = 1 - e.
        const CMatrix e = diag({0.0, 1.0});
        const TangentReport tp = tangent_probe_along(e, {0.0, 1.0}, {1.0, 0.0});
        CHECK(tp.proj_residual < 1e-12);
        CHECK(tp.err_coarse / tp.err_fine > 50.0);
        CHECK(tp.err_coarse == doctest::Approx(std::abs(std::sin(0.02) / 0.02 - 1.0)).epsilon(1e-6));
    }

    SUBCASE("random probes scale like h^2") {
        auto rng = make_rng(52);
        for (int i = 0; i < 8; ++i) {
            CMatrix e;
            for (;;) {
                e = random_projection(4, rng);
                const double tr = normalized_trace(e).real();
                if (tr > 0.1 && tr < 0.9) break;
            }
            const TangentReport tp = tangent_probe(e, 1000 + static_cast<std::uint64_t>(i));
            CHECK(tp.proj_residual <= 1e-10);
            CHECK(tp.err_coarse / tp.err_fine >= 50.0);
        }
    }

    SUBCASE("trivial projections are rejected") {
        CHECK_THROWS_AS(tangent_probe(CMatrix(3), 1), std::invalid_argument);
        CHECK_THROWS_AS(tangent_probe(CMatrix::identity(3), 1), std::invalid_argument);
    }
}
