#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bglab/linalg.hpp"
#include "bglab/rng.hpp"

using namespace bglab;

namespace {

CMatrix diag(std::initializer_list<cplx> entries) {
    std::vector<cplx> v(entries);
    return CMatrix::diagonal(v);
}

cplx root6(int k) {
    const double t = 2.0 * std::numbers::pi * k / 6.0;
    return {std::cos(t), std::sin(t)};
}

}  // namespace

TEST_CASE("normalized trace") {
    CHECK(normalized_trace(CMatrix::identity(4)) == cplx(1.0, 0.0));

    CMatrix roots = diag({root6(0), root6(1), root6(2), root6(3), root6(4), root6(5)});
    CHECK(std::abs(normalized_trace(roots)) < 1e-15);

    CMatrix m = diag({1.0, cplx(0.0, 1.0)});
    CHECK(std::abs(normalized_trace(m) - cplx(0.5, 0.5)) < 1e-15);
}

TEST_CASE("operator norm") {
    CHECK(op_norm(CMatrix(3)) == 0.0);
    CHECK(op_norm(diag({1.0, -3.0})) == doctest::Approx(3.0).epsilon(1e-10));

    CMatrix ones(2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) ones(i, j) = 1.0;
    CHECK(op_norm(ones) == doctest::Approx(2.0).epsilon(1e-10));

    auto rng = make_rng(1);
    for (int rep = 0; rep < 5; ++rep) {
        CMatrix u = random_haar_unitary(5, rng);
        CHECK(op_norm(u) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("hilbert-schmidt norm") {
    CHECK(hs_norm(CMatrix::identity(7)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(hs_norm(diag({1.0, 0.0, 0.0, 0.0})) == doctest::Approx(0.5).epsilon(1e-14));
    auto rng = make_rng(2);
    CHECK(hs_norm(random_haar_unitary(6, rng)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hs additivity under orthogonal diagonal supports") {
    CMatrix x = diag({1.5, -2.0, 0.0, 0.0});
    CMatrix y = diag({0.0, 0.0, cplx(0, 3.0), 1.0});
    const double lhs = hs_norm(x + y);
    const double rhs = std::sqrt(hs_norm(x) * hs_norm(x) + hs_norm(y) * hs_norm(y));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("trace is cyclic on random pairs") {
    auto rng = make_rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        CMatrix x = random_ginibre(4, rng);
        CMatrix y = random_ginibre(4, rng);
        CHECK(std::abs(normalized_trace(x * y) - normalized_trace(y * x)) < 1e-10);
    }
}

TEST_CASE("support projections") {
    auto sp = support_pos(HermitianMatrix(diag({2.0, -1.0, 0.0})));
    CHECK(op_norm(sp.matrix() - diag({1.0, 0.0, 0.0})) < 1e-12);

    auto zero = support_pos(HermitianMatrix(CMatrix(3)));
    CHECK(op_norm(zero.matrix()) < 1e-14);

    // identity - 2 diag(1,0) has eigenvalues {-1, +1}
    CMatrix omega = CMatrix::identity(2) - cplx(2.0, 0.0) * diag({1.0, 0.0});
    auto pos = support_pos(HermitianMatrix(omega));
    CHECK(op_norm(pos.matrix() - diag({0.0, 1.0})) < 1e-12);

    SUBCASE("pos + neg + kernel = identity") {
        CMatrix h = diag({3.0, -2.0, 0.0, 5.0, 0.0});
        auto p = support_pos(HermitianMatrix(h)).matrix();
        auto n = support_neg(HermitianMatrix(h)).matrix();
        CMatrix kernel = CMatrix::identity(5) - p - n;
        CHECK(op_norm(kernel - diag({0.0, 0.0, 1.0, 0.0, 1.0})) < 1e-12);
    }

    SUBCASE("commutes with its argument") {
        auto rng = make_rng(4);
        for (int rep = 0; rep < 10; ++rep) {
            CMatrix h = random_hermitian(5, rng);
            auto p = support_pos(HermitianMatrix(h)).matrix();
            CHECK(op_norm(commutator(p, h)) < 1e-8 * op_norm(h));
        }
    }
}

TEST_CASE("kron and direct sum") {
    CMatrix u = diag({1.0, cplx(0, 1)});
    CHECK(std::abs(normalized_trace(kron(u, u)) - cplx(0.0, 0.5)) < 1e-14);
    CHECK(op_norm(kron(CMatrix::identity(2), CMatrix::identity(3)) - CMatrix::identity(6)) <
          1e-14);
    CHECK(std::abs(normalized_trace(direct_sum(diag({1.0}), diag({0.0}))) - cplx(0.5, 0.0)) <
          1e-14);

    auto rng = make_rng(5);
    for (int rep = 0; rep < 10; ++rep) {
        CMatrix x = random_ginibre(3, rng);
        CMatrix y = random_ginibre(2, rng);
        const cplx lhs = normalized_trace(kron(x, y));
        const cplx rhs = normalized_trace(x) * normalized_trace(y);
        CHECK(std::abs(lhs - rhs) < 1e-12);

        const cplx ds = normalized_trace(direct_sum(x, y));
        const cplx expected = (3.0 * normalized_trace(x) + 2.0 * normalized_trace(y)) / 5.0;
        CHECK(std::abs(ds - expected) < 1e-12);
    }
}

TEST_CASE("validated wrappers reject bad input") {
    CMatrix notherm(2);
    notherm(0, 1) = 1.0;  // strictly upper triangular
    CHECK_THROWS_AS(HermitianMatrix{notherm}, std::invalid_argument);
    CHECK_THROWS_AS(ProjectionMatrix{diag({0.5, 0.0})}, std::invalid_argument);
    CHECK_THROWS_AS(UnitaryMatrix{diag({2.0, 1.0})}, std::invalid_argument);

    auto rng = make_rng(6);
    CHECK_NOTHROW(UnitaryMatrix(random_haar_unitary(4, rng)));
    CHECK_NOTHROW(ProjectionMatrix(random_projection(4, rng)));
}

TEST_CASE("parallel kernel agrees with the serial reference") {
    auto rng = make_rng(7);
    for (std::size_t dim : {8u, 64u, 97u}) {
        CMatrix x = random_ginibre(dim, rng);
        CMatrix y = random_ginibre(dim, rng);
        CMatrix a = matmul_serial(x, y);
        CMatrix b = matmul_parallel(x, y);
        double dev = 0.0;
        for (std::size_t k = 0; k < a.data().size(); ++k)
            dev = std::max(dev, std::abs(a.data()[k] - b.data()[k]));
        CHECK(dev == 0.0);  // same per-entry accumulation order
    }
}

TEST_CASE("eigendecomposition reconstructs hermitian matrices") {
    auto rng = make_rng(8);
    for (std::size_t dim : {2u, 5u, 9u, 24u}) {
        CMatrix h = random_hermitian(dim, rng);
        EigResult eig = eig_hermitian(h);
        CMatrix recon(dim);
        for (std::size_t k = 0; k < dim; ++k)
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j)
                    recon(i, j) += eig.values[k] * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
        CHECK(op_norm(recon - h) < 1e-12 * (1.0 + op_norm(h)));
        for (std::size_t k = 0; k + 1 < dim; ++k) CHECK(eig.values[k] <= eig.values[k + 1]);
    }

    SUBCASE("degenerate spectra") {
        // u diag(1,1,1,-2,-2) u* has a 3-fold and a 2-fold eigenvalue
        CMatrix u = random_haar_unitary(5, rng);
        CMatrix d = diag({1.0, 1.0, 1.0, -2.0, -2.0});
        CMatrix h = u * d * u.adjoint();
        EigResult eig = eig_hermitian(h);
        CHECK(eig.values[0] == doctest::Approx(-2.0).epsilon(1e-12));
        CHECK(eig.values[1] == doctest::Approx(-2.0).epsilon(1e-12));
        CHECK(eig.values[4] == doctest::Approx(1.0).epsilon(1e-12));
        auto p = support_pos(HermitianMatrix(h)).matrix();
        CHECK(std::abs(normalized_trace(p) - cplx(0.6, 0.0)) < 1e-12);
        CHECK(op_norm(p * p - p) < 1e-12);
    }
}
