#include "bglab/moments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bglab {

namespace {

void check_tuple(const std::vector<CMatrix>& us, const char* what) {
    if (us.empty()) throw std::invalid_argument(std::string(what) + ": empty tuple");
    for (const auto& u : us)
        if (u.dim() != us.front().dim())
            throw std::invalid_argument(std::string(what) + ": dimension mismatch in tuple");
}

}  // namespace

MomentIndexSet MomentIndexSet::make(int n, int p) {
    if (n < 1 || p < 1) throw std::invalid_argument("MomentIndexSet: need n, p >= 1");
    MomentIndexSet s;
    s.n = n;
    s.p = p;
    std::vector<std::vector<int>> prev;  // tuples of the previous length
    for (int len = 1; len <= p; ++len) {
        std::vector<std::vector<int>> cur;
        if (len == 1) {
            for (int i = 1; i <= n; ++i) cur.push_back({i});
        } else {
            for (const auto& t : prev)
                for (int i = 1; i <= n; ++i) {
                    auto ext = t;
                    ext.push_back(i);
                    cur.push_back(std::move(ext));
                }
        }
        for (const auto& t : cur) s.indices.push_back(t);
        prev = std::move(cur);
    }
    return s;
}

MomentVector unitary_moments(const std::vector<CMatrix>& us, int p) {
    check_tuple(us, "unitary_moments");
    if (p < 1 || p > 6) throw std::invalid_argument("unitary_moments: p must be in 1..6");
    const int n = static_cast<int>(us.size());

    MomentVector mv;
    mv.index_set = MomentIndexSet::make(n, p);
    mv.source_dim = us.front().dim();
    mv.values.reserve(mv.index_set.size());

    // Products of length k extend products of length k-1 in index order.
    std::vector<CMatrix> prev;
    for (int len = 1; len <= p; ++len) {
        std::vector<CMatrix> cur;
        cur.reserve(prev.empty() ? us.size() : prev.size() * us.size());
        if (len == 1) {
            for (const auto& u : us) cur.push_back(u);
        } else {
            for (const auto& base : prev)
                for (const auto& u : us) cur.push_back(base * u);
        }
        for (const auto& m : cur) mv.values.push_back(normalized_trace(m));
        prev = std::move(cur);
    }
    return mv;
}

bool is_zero_one_pattern(const MomentVector& mv, double tol) {
    for (const auto& v : mv.values) {
        if (std::abs(v) > tol && std::abs(v - 1.0) > tol) return false;
    }
    return true;
}

MomentVector pointwise_product(const MomentVector& x, const MomentVector& y) {
    if (x.index_set.n != y.index_set.n || x.index_set.p != y.index_set.p)
        throw std::invalid_argument("pointwise_product: index set mismatch");
    MomentVector out = x;
    for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] *= y.values[k];
    out.source_dim = x.source_dim * y.source_dim;
    return out;
}

KronWitness kron_realize(const std::vector<CMatrix>& us, const std::vector<CMatrix>& ws, int p) {
    check_tuple(us, "kron_realize");
    check_tuple(ws, "kron_realize");
    if (us.size() != ws.size()) throw std::invalid_argument("kron_realize: tuple sizes differ");

    KronWitness kw;
    kw.tuple.reserve(us.size());
    for (std::size_t i = 0; i < us.size(); ++i) kw.tuple.push_back(kron(us[i], ws[i]));
    kw.moments = unitary_moments(kw.tuple, p);

    const MomentVector prod = pointwise_product(unitary_moments(us, p), unitary_moments(ws, p));
    double dev = 0.0;
    for (std::size_t k = 0; k < prod.values.size(); ++k)
        dev = std::max(dev, std::abs(prod.values[k] - kw.moments.values[k]));
    kw.witness_residual = dev;
    return kw;
}

ConvexWitness convex_combine(const std::vector<CMatrix>& us, const std::vector<CMatrix>& ws, int p) {
    check_tuple(us, "convex_combine");
    check_tuple(ws, "convex_combine");
    if (us.size() != ws.size()) throw std::invalid_argument("convex_combine: tuple sizes differ");

    const MomentVector x = unitary_moments(us, p);
    const MomentVector y = unitary_moments(ws, p);
    const double d1 = static_cast<double>(us.front().dim());
    const double d2 = static_cast<double>(ws.front().dim());

    ConvexWitness cw;
    cw.t = d1 / (d1 + d2);
    cw.combined = x;
    for (std::size_t k = 0; k < x.values.size(); ++k)
        cw.combined.values[k] = cw.t * x.values[k] + (1.0 - cw.t) * y.values[k];
    cw.combined.source_dim = us.front().dim() + ws.front().dim();

    std::vector<CMatrix> sums;
    sums.reserve(us.size());
    for (std::size_t i = 0; i < us.size(); ++i) sums.push_back(direct_sum(us[i], ws[i]));
    const MomentVector direct = unitary_moments(sums, p);
    double dev = 0.0;
    for (std::size_t k = 0; k < direct.values.size(); ++k)
        dev = std::max(dev, std::abs(direct.values[k] - cw.combined.values[k]));
    cw.witness_residual = dev;
    return cw;
}

MomentVector gauge_average(const MomentVector& x) {
    MomentVector out = x;
    for (std::size_t k = 0; k < out.index_set.indices.size(); ++k) {
        for (int sym : out.index_set.indices[k]) {
            if (sym == 1) {
                out.values[k] = 0.0;
                break;
            }
        }
    }
    return out;
}

MomentVector gauge_average_by_roots(const std::vector<CMatrix>& us, int p) {
    check_tuple(us, "gauge_average_by_roots");
    // Each moment is a monomial of degree <= p in the gauge phase, so
    // averaging over the (p+1)-th roots of unity kills every component
    // with a nonzero power of the first unitary.
    MomentVector acc;
    for (int j = 0; j <= p; ++j) {
        const double t = 2.0 * std::numbers::pi * j / static_cast<double>(p + 1);
        const cplx zeta(std::cos(t), std::sin(t));
        std::vector<CMatrix> gauged = us;
        gauged[0] *= zeta;
        MomentVector mv = unitary_moments(gauged, p);
        if (j == 0) {
            acc = std::move(mv);
        } else {
            for (std::size_t k = 0; k < acc.values.size(); ++k) acc.values[k] += mv.values[k];
        }
    }
    for (auto& v : acc.values) v /= static_cast<double>(p + 1);
    return acc;
}

double& PairMoments::at(int i, int j) {
    if (i > j) std::swap(i, j);
    return values[static_cast<std::size_t>(i) * n - static_cast<std::size_t>(i) * (i - 1) / 2 +
                  (j - i)];
}

double PairMoments::at(int i, int j) const { return const_cast<PairMoments*>(this)->at(i, j); }

PairMoments projection_moments(const std::vector<CMatrix>& es) {
    check_tuple(es, "projection_moments");
    const int n = static_cast<int>(es.size());
    PairMoments pm;
    pm.n = n;
    pm.values.assign(PairMoments::tri_size(n), 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const cplx t = normalized_trace(es[i] * es[j]);
            if (std::abs(t.imag()) > 1e-12)
                throw std::invalid_argument("projection_moments: trace not real; inputs are not projections");
            pm.at(i, j) = t.real();
        }
    }
    return pm;
}

PairMoments HullVertexSet::vertex(std::uint32_t mask) const {
    PairMoments pm;
    pm.n = n;
    pm.values.assign(PairMoments::tri_size(n), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            pm.at(i, j) = ((mask >> i) & 1u) && ((mask >> j) & 1u) ? 1.0 : 0.0;
    return pm;
}

PairMoments simulate_abelian(int n, const std::vector<Atom>& atoms) {
    if (n < 1) throw std::invalid_argument("simulate_abelian: n must be >= 1");
    double total = 0.0;
    for (const auto& a : atoms) {
        if (a.weight <= 0.0) throw std::invalid_argument("simulate_abelian: weights must be positive");
        total += a.weight;
    }
    if (std::abs(total - 1.0) > 1e-10)
        throw std::invalid_argument("simulate_abelian: weights must sum to 1, got " +
                                    std::to_string(total));
    PairMoments pm;
    pm.n = n;
    pm.values.assign(PairMoments::tri_size(n), 0.0);
    for (const auto& a : atoms)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                if (((a.membership >> i) & 1u) && ((a.membership >> j) & 1u)) pm.at(i, j) += a.weight;
    return pm;
}

}  // namespace bglab
