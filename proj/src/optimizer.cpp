#include "bglab/optimizer.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bglab/rng.hpp"

namespace bglab {

FunctionalCoeffs FunctionalCoeffs::make(int n) {
    if (n < 1) throw std::invalid_argument("FunctionalCoeffs: n must be >= 1");
    FunctionalCoeffs A;
    A.n = n;
    A.a.assign(PairMoments::tri_size(n), 0.0);
    return A;
}

double& FunctionalCoeffs::at(int i, int j) {
    if (i > j) std::swap(i, j);
    return a[static_cast<std::size_t>(i) * n - static_cast<std::size_t>(i) * (i - 1) / 2 + (j - i)];
}

double FunctionalCoeffs::at(int i, int j) const {
    return const_cast<FunctionalCoeffs*>(this)->at(i, j);
}

namespace {

double objective_of(const std::vector<CMatrix>& es, const FunctionalCoeffs& A) {
    const PairMoments pm = projection_moments(es);
    double L = 0.0;
    for (int i = 0; i < A.n; ++i)
        for (int j = i; j < A.n; ++j) L += A.at(i, j) * pm.at(i, j);
    return L;
}

}  // namespace

CMatrix omega(int i, const std::vector<CMatrix>& es, const FunctionalCoeffs& A) {
    if (i < 0 || i >= A.n) throw std::invalid_argument("omega: index out of range");
    const std::size_t d = es.at(0).dim();
    CMatrix w = CMatrix::identity(d);
    w *= A.at(i, i);
    for (int j = 0; j < A.n; ++j) {
        if (j == i) continue;
        CMatrix term = es[static_cast<std::size_t>(j)];
        term *= A.at(i, j);
        w += term;
    }
    return w;
}

void ascent_step(OptimizerState& state, int i, const FunctionalCoeffs& A) {
    CMatrix w = omega(i, state.es, A);
    if (max_abs_entry(w) < 1e-14) return;  // zero gradient row: leave e_i alone
    state.es[static_cast<std::size_t>(i)] = support_pos(HermitianMatrix(std::move(w))).matrix();
    state.objective = objective_of(state.es, A);
}

std::vector<KktEntry> kkt_check(const std::vector<CMatrix>& es, const FunctionalCoeffs& A) {
    std::vector<KktEntry> out;
    const std::size_t d = es.at(0).dim();
    for (int i = 0; i < A.n; ++i) {
        const CMatrix w = omega(i, es, A);
        const CMatrix& e = es[static_cast<std::size_t>(i)];
        const CMatrix comp = CMatrix::identity(d) - e;
        KktEntry k;
        k.commutator_hs = hs_norm(commutator(e, w));
        k.tau_e_omega = normalized_trace(e * w).real();
        k.tau_comp_omega = normalized_trace(comp * w).real();

        // Corner spectra restricted to the corresponding range: compress
        // onto an orthonormal basis of the range first.
        const EigResult pe = eig_hermitian(e);
        std::vector<std::size_t> range_e, range_comp;
        for (std::size_t c = 0; c < d; ++c)
            (pe.values[c] > 0.5 ? range_e : range_comp).push_back(c);

        auto restricted = [&](const std::vector<std::size_t>& cols) {
            CMatrix r(cols.size());
            for (std::size_t aa = 0; aa < cols.size(); ++aa)
                for (std::size_t bb = 0; bb < cols.size(); ++bb) {
                    cplx acc = 0.0;
                    for (std::size_t s = 0; s < d; ++s)
                        for (std::size_t t = 0; t < d; ++t)
                            acc += std::conj(pe.vectors(s, cols[aa])) * w(s, t) * pe.vectors(t, cols[bb]);
                    r(aa, bb) = acc;
                }
            return r;
        };
        if (!range_e.empty()) {
            const EigResult re = eig_hermitian(restricted(range_e));
            k.corner_pos_min = re.values.front();
        }
        if (!range_comp.empty()) {
            const EigResult rc = eig_hermitian(restricted(range_comp));
            k.corner_neg_max = rc.values.back();
        }
        out.push_back(k);
    }
    return out;
}

OptimizerState solve(const FunctionalCoeffs& A, std::size_t dim, const SolveOptions& opts) {
    if (dim < 1) throw std::invalid_argument("solve: dimension must be >= 1");
    if (opts.restarts < 1) throw std::invalid_argument("solve: need at least one restart");

    std::vector<OptimizerState> results(static_cast<std::size_t>(opts.restarts));

    // The leading restarts sweep the 2^n trivial patterns (each
    // projection 0 or 1). Greedy support updates have rank-extreme fixed
    // points with small basins; starting on the corners makes every such
    // configuration reachable regardless of the random draws.
    const int corners = A.n <= 4 ? std::min(opts.restarts, 1 << A.n) : std::min(opts.restarts, 2);

#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < opts.restarts; ++r) {
        Rng rng = make_rng(opts.seed, 0x9fULL * 4096 + static_cast<std::uint64_t>(r));
        OptimizerState st;
        st.es.reserve(static_cast<std::size_t>(A.n));
        for (int i = 0; i < A.n; ++i) {
            if (r < corners) {
                const bool full = ((static_cast<unsigned>(r) >> i) & 1u) != 0u;
                st.es.push_back(full ? CMatrix::identity(dim) : CMatrix(dim));
            } else {
                st.es.push_back(random_projection(dim, rng));
            }
        }
        st.objective = objective_of(st.es, A);

        for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
            const double before = st.objective;
            for (int i = 0; i < A.n; ++i) {
                const double prev = st.objective;
                ascent_step(st, i, A);
                if (st.objective < prev - 1e-12) ++st.monotone_violations;
                if (opts.record_trajectory) st.trajectory.push_back(st.objective);
            }
            st.sweeps = sweep + 1;
            if (st.objective - before < opts.tol) {
                st.converged = true;
                break;
            }
        }
        results[static_cast<std::size_t>(r)] = std::move(st);
    }

    // Deterministic merge: best objective, earliest restart on ties.
    std::size_t best = 0;
    int violations = 0;
    for (const auto& r : results) violations += r.monotone_violations;
    for (std::size_t r = 1; r < results.size(); ++r)
        if (results[r].objective > results[best].objective + 1e-15) best = r;
    OptimizerState out = std::move(results[best]);
    out.monotone_violations = violations;
    out.residuals = kkt_check(out.es, A);
    out.omegas.reserve(static_cast<std::size_t>(A.n));
    for (int i = 0; i < A.n; ++i) out.omegas.push_back(omega(i, out.es, A));
    return out;
}

double brute_force_diagonal(const FunctionalCoeffs& A, std::size_t dim) {
    const int n = A.n;
    const std::size_t bits = static_cast<std::size_t>(n) * dim;
    if (bits > 24) throw std::invalid_argument("brute_force_diagonal: n * dim must be <= 24");
    const std::uint64_t configs = 1ULL << bits;
    const std::uint64_t mask = (1ULL << dim) - 1ULL;

    double best = 0.0;
    bool first = true;
    for (std::uint64_t c = 0; c < configs; ++c) {
        double L = 0.0;
        for (int i = 0; i < n; ++i) {
            const std::uint64_t mi = (c >> (static_cast<std::size_t>(i) * dim)) & mask;
            for (int j = i; j < n; ++j) {
                const std::uint64_t mj = (c >> (static_cast<std::size_t>(j) * dim)) & mask;
                L += A.at(i, j) * static_cast<double>(std::popcount(mi & mj)) /
                     static_cast<double>(dim);
            }
        }
        if (first || L > best) {
            best = L;
            first = false;
        }
    }
    return best;
}

namespace {

std::vector<cplx> matvec(const CMatrix& m, const std::vector<cplx>& x) {
    std::vector<cplx> y(m.dim(), 0.0);
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) y[i] += m(i, j) * x[j];
    return y;
}

double norm_of(const std::vector<cplx>& x) {
    double s = 0.0;
    for (const auto& v : x) s += std::norm(v);
    return std::sqrt(s);
}

CMatrix outer(const std::vector<cplx>& x, const std::vector<cplx>& y) {
    CMatrix m(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) m(i, j) = x[i] * std::conj(y[j]);
    return m;
}

}  // namespace

TangentReport tangent_probe_along(const CMatrix& e, const std::vector<cplx>& x,
                                  const std::vector<cplx>& y) {
    const CMatrix xxT = outer(x, x);
    const CMatrix rest = e - xxT;  // fixed part of the path
    const CMatrix yyT = outer(y, y);
    const CMatrix cross = outer(x, y) + outer(y, x);
    const CMatrix z = cross;  // derivative target v + v*

    auto path = [&](double theta) {
        const double c = std::cos(theta), s = std::sin(theta);
        CMatrix p = rest;
        CMatrix t1 = xxT;
        t1 *= c * c;
        CMatrix t2 = yyT;
        t2 *= s * s;
        CMatrix t3 = cross;
        t3 *= s * c;
        p += t1;
        p += t2;
        p += t3;
        return p;
    };

    TangentReport rpt;
    for (double theta : {0.0, 0.3, 0.7, 1.1, std::numbers::pi / 2}) {
        const CMatrix p = path(theta);
        rpt.proj_residual = std::max(rpt.proj_residual, op_norm(p * p - p));
        rpt.proj_residual = std::max(rpt.proj_residual, op_norm(p - p.adjoint()));
    }
    auto quotient_err = [&](double h) {
        CMatrix diff = path(h) - path(-h);
        diff *= cplx(1.0 / (2.0 * h), 0.0);
        return op_norm(diff - z);
    };
    rpt.err_coarse = quotient_err(1e-2);
    rpt.err_fine = quotient_err(1e-3);
    return rpt;
}

TangentReport tangent_probe(const CMatrix& e, std::uint64_t seed) {
    const std::size_t d = e.dim();
    const double tr = normalized_trace(e).real();
    if (tr < 0.5 / static_cast<double>(d) || tr > 1.0 - 0.5 / static_cast<double>(d))
        throw std::invalid_argument("tangent_probe: projection must be nontrivial");

    Rng rng = make_rng(seed, 0x7a);
    std::normal_distribution<double> g(0.0, 1.0);
    const CMatrix comp = CMatrix::identity(d) - e;

    auto draw_in_range = [&](const CMatrix& proj) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            std::vector<cplx> raw(d);
            for (auto& v : raw) v = cplx(g(rng), g(rng));
            std::vector<cplx> projected = matvec(proj, raw);
            const double nrm = norm_of(projected);
            if (nrm > 1e-8) {
                for (auto& v : projected) v /= nrm;
                return projected;
            }
        }
        throw std::runtime_error("tangent_probe: could not draw a range vector");
    };

    return tangent_probe_along(e, draw_in_range(e), draw_in_range(comp));
}

}  // namespace bglab
