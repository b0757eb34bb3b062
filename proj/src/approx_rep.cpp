#include "bglab/approx_rep.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bglab {

namespace {

cplx root_of_unity(long long num, long long den) {
    // e^{2 pi i num/den} with the index reduced exactly first.
    long long r = num % den;
    if (r < 0) r += den;
    const double t = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
    return {std::cos(t), std::sin(t)};
}

}  // namespace

CMatrix ApproxRep::diag_unit(std::size_t k) const {
    CMatrix m(dim);
    m(k, k) = 1.0;
    return m;
}

CMatrix ApproxRep::f_proj(std::size_t k) const {
    CMatrix m(dim);
    const std::size_t half = dim / 2;
    for (std::size_t e = 0; e < 3; ++e) {
        m(3 * k + e, 3 * k + e) = 1.0;
        m(3 * k + e + half, 3 * k + e + half) = 1.0;
    }
    return m;
}

CMatrix ApproxRep::g_proj(std::size_t k) const {
    CMatrix m(dim);
    const std::size_t third = dim / 3;
    for (std::size_t e = 0; e < 2; ++e)
        for (std::size_t s = 0; s < 3; ++s) m(2 * k + e + s * third, 2 * k + e + s * third) = 1.0;
    return m;
}

CMatrix ApproxRep::test_projection() const {
    CMatrix m(dim);
    for (long k = 0; k < n; ++k) m(3 * k, 3 * k) = 1.0;
    return m;
}

CMatrix ApproxRep::b_power(long alpha) const {
    CMatrix m(dim);
    for (std::size_t j = 0; j < dim; ++j)
        m(j, j) = root_of_unity(static_cast<long long>(j) * alpha, static_cast<long long>(dim));
    return m;
}

ApproxRep build_rep(long n) {
    if (n < 1) throw std::invalid_argument("build_rep: n must be >= 1");
    ApproxRep rep;
    rep.n = n;
    rep.dim = static_cast<std::size_t>(6 * n);
    rep.perm.assign(rep.dim, rep.dim);

    const std::size_t N = static_cast<std::size_t>(n);
    // Each g-strip third is matched crosswise to an f-strip half; the
    // crosswise choice leaves no index fixed, see the struct docs.
    for (std::size_t k = 0; k < N; ++k) {
        for (std::size_t e = 0; e < 2; ++e) {
            rep.perm[2 * k + e] = 3 * k + 3 * N + e;
            rep.perm[2 * k + 4 * N + e] = 3 * k + e;
        }
        rep.perm[2 * k + 2 * N] = 3 * k + 3 * N + 2;
        rep.perm[2 * k + 2 * N + 1] = 3 * k + 2;
    }

    std::vector<bool> seen(rep.dim, false);
    for (std::size_t m = 0; m < rep.dim; ++m) {
        const std::size_t t = rep.perm[m];
        if (t >= rep.dim || seen[t])
            throw std::logic_error("build_rep: index map is not a bijection at " +
                                   std::to_string(m));
        seen[t] = true;
    }

    rep.b = rep.b_power(1);
    rep.v = CMatrix(rep.dim);
    for (std::size_t m = 0; m < rep.dim; ++m) rep.v(rep.perm[m], m) = 1.0;
    return rep;
}

CMatrix B0Algebra::pair_proj(std::size_t k) const {
    const std::size_t half = rep_->dim / 2;
    CMatrix m(rep_->dim);
    m(k, k) = 1.0;
    m(k + half, k + half) = 1.0;
    return m;
}

CMatrix B0Algebra::cond_exp(const CMatrix& m) const {
    if (m.dim() != rep_->dim)
        throw std::invalid_argument("cond_exp: expected dimension " + std::to_string(rep_->dim) +
                                    ", got " + std::to_string(m.dim()));
    const std::size_t half = rep_->dim / 2;
    CMatrix out(rep_->dim);
    for (std::size_t k = 0; k < half; ++k) {
        const cplx avg = 0.5 * (m(k, k) + m(k + half, k + half));
        out(k, k) = avg;
        out(k + half, k + half) = avg;
    }
    return out;
}

CMatrix B0Algebra::phi(const CMatrix& m) const { return m - cond_exp(m); }

RepReport verify_properties(const ApproxRep& rep, int p_max) {
    RepReport rpt;
    rpt.n = rep.n;
    const B0Algebra b0(rep);
    const CMatrix vstar = rep.v.adjoint();

    rpt.relation_error = op_norm(rep.v * rep.b_power(3) * vstar - rep.b_power(2));

    for (int alpha : {1, -1, 2, -2}) {
        const CMatrix conj = rep.v * rep.b_power(alpha) * vstar;
        rpt.centered_norms[alpha] = hs_norm(b0.phi(conj));
    }

    double res = 0.0;
    res = std::max(res, max_abs_entry(b0.cond_exp(rep.b_power(1))));
    res = std::max(res, max_abs_entry(b0.cond_exp(rep.b_power(-1))));
    for (int alpha = -p_max; alpha <= p_max; ++alpha) {
        if (alpha == 0) continue;
        const CMatrix bp = rep.b_power(alpha);
        res = std::max(res, max_abs_entry(b0.cond_exp(rep.v * bp)));
        res = std::max(res, max_abs_entry(b0.cond_exp(bp * rep.v)));
    }
    rpt.property3_residual = res;

    rpt.pn_lower = hs_norm(rep.test_projection() * b0.phi(rep.v * rep.b * vstar));

    // Closed-form diagonal phases of v b v*: index 3k+e on the lower half
    // carries e^{2 pi i ((2k+e)/6n + 2/3)}, its upper-half partner carries
    // e^{2 pi i (2k+e)/6n}; the e=2 atoms carry the 1/3 offset with the
    // +1 index shift on the lower half.
    const CMatrix conj_b = rep.v * rep.b * vstar;
    const long long d = static_cast<long long>(rep.dim);
    double eq_res = 0.0;
    for (long k = 0; k < rep.n; ++k) {
        for (long e = 0; e < 2; ++e) {
            const cplx lower = root_of_unity(2 * k + e + 4 * rep.n, d);
            const cplx upper = root_of_unity(2 * k + e, d);
            eq_res = std::max(eq_res, std::abs(conj_b(3 * k + e, 3 * k + e) - lower));
            eq_res = std::max(eq_res,
                              std::abs(conj_b(3 * k + 3 * rep.n + e, 3 * k + 3 * rep.n + e) - upper));
        }
        const cplx lower2 = root_of_unity(2 * k + 1 + 2 * rep.n, d);
        const cplx upper2 = root_of_unity(2 * k + 2 * rep.n, d);
        eq_res = std::max(eq_res, std::abs(conj_b(3 * k + 2, 3 * k + 2) - lower2));
        eq_res = std::max(
            eq_res, std::abs(conj_b(3 * k + 3 * rep.n + 2, 3 * k + 3 * rep.n + 2) - upper2));
    }
    for (std::size_t i = 0; i < rep.dim; ++i)
        for (std::size_t j = 0; j < rep.dim; ++j)
            if (i != j) eq_res = std::max(eq_res, std::abs(conj_b(i, j)));
    rpt.eq_phase_residual = eq_res;

    return rpt;
}

}  // namespace bglab
