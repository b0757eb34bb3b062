#include "bglab/amalgam.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bglab/rng.hpp"

namespace bglab {

namespace {

constexpr double kSplitTol = 1e-13;

std::size_t pair_of(std::size_t row, std::size_t pairs) { return row < pairs ? row : row - pairs; }

}  // namespace

B0Vec& B0Vec::operator+=(const B0Vec& rhs) {
    if (c.size() != rhs.c.size()) throw std::invalid_argument("B0Vec: size mismatch");
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += rhs.c[k];
    return *this;
}

B0Vec B0Vec::operator*(const B0Vec& rhs) const {
    if (c.size() != rhs.c.size()) throw std::invalid_argument("B0Vec: size mismatch");
    B0Vec out = *this;
    for (std::size_t k = 0; k < c.size(); ++k) out.c[k] *= rhs.c[k];
    return out;
}

double B0Vec::max_abs() const {
    double m = 0.0;
    for (const auto& x : c) m = std::max(m, std::abs(x));
    return m;
}

CMatrix B0Vec::to_matrix() const {
    const std::size_t p = pairs();
    CMatrix m(2 * p);
    for (std::size_t k = 0; k < p; ++k) {
        m(k, k) = c[k];
        m(k + p, k + p) = c[k];
    }
    return m;
}

B0Vec b0_from_matrix(const CMatrix& m, double tol) {
    if (m.dim() % 2 != 0) throw std::invalid_argument("b0_from_matrix: odd dimension");
    const std::size_t p = m.dim() / 2;
    B0Vec out = B0Vec::zeros(p);
    double dev = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            if (i != j) dev = std::max(dev, std::abs(m(i, j)));
    for (std::size_t k = 0; k < p; ++k) {
        dev = std::max(dev, std::abs(m(k, k) - m(k + p, k + p)));
        out.c[k] = 0.5 * (m(k, k) + m(k + p, k + p));
    }
    if (dev > tol * (1.0 + max_abs_entry(m)))
        throw std::invalid_argument("b0_from_matrix: matrix is not in the pair-projection span");
    return out;
}

ZElement ZElement::haar_power(long alpha, std::size_t pairs) {
    ZElement z;
    z.terms.emplace(alpha, B0Vec::ones(pairs));
    return z;
}

namespace {

struct EvalCtx {
    const ApproxRep* rep;
    std::size_t pairs;
    std::size_t max_nodes;
    mutable std::size_t nodes = 0;
};

double letter_scale(const Letter& l) {
    if (const auto* z = std::get_if<ZElement>(&l)) {
        double m = 0.0;
        for (const auto& [a, c] : z->terms) m = std::max(m, c.max_abs());
        return m;
    }
    return max_abs_entry(std::get<MatElement>(l).m);
}

B0Vec expectation_of(const Letter& l, const EvalCtx& ctx) {
    if (const auto* z = std::get_if<ZElement>(&l)) {
        auto it = z->terms.find(0);
        return it == z->terms.end() ? B0Vec::zeros(ctx.pairs) : it->second;
    }
    const CMatrix& m = std::get<MatElement>(l).m;
    B0Vec out = B0Vec::zeros(ctx.pairs);
    for (std::size_t k = 0; k < ctx.pairs; ++k)
        out.c[k] = 0.5 * (m(k, k) + m(k + ctx.pairs, k + ctx.pairs));
    return out;
}

Letter centered_of(const Letter& l, const B0Vec& exp_part, const EvalCtx& ctx) {
    if (const auto* z = std::get_if<ZElement>(&l)) {
        ZElement out = *z;
        out.terms.erase(0);
        return out;
    }
    MatElement out = std::get<MatElement>(l);
    for (std::size_t k = 0; k < ctx.pairs; ++k) {
        out.m(k, k) -= exp_part.c[k];
        out.m(k + ctx.pairs, k + ctx.pairs) -= exp_part.c[k];
    }
    return out;
}

// Multiplies a subalgebra element into a letter; side 'L' puts it on the
// letter's left, 'R' on its right. Within the Z factor the subalgebra is
// central, for matrices the side scales rows or columns.
Letter absorb(const Letter& l, const B0Vec& c, char side, const EvalCtx& ctx) {
    if (const auto* z = std::get_if<ZElement>(&l)) {
        ZElement out;
        for (const auto& [a, coef] : z->terms) out.terms.emplace(a, coef * c);
        return out;
    }
    MatElement out = std::get<MatElement>(l);
    const std::size_t dim = out.m.dim();
    if (side == 'L') {
        for (std::size_t i = 0; i < dim; ++i) {
            const cplx s = c.c[pair_of(i, ctx.pairs)];
            for (std::size_t j = 0; j < dim; ++j) out.m(i, j) *= s;
        }
    } else {
        for (std::size_t j = 0; j < dim; ++j) {
            const cplx s = c.c[pair_of(j, ctx.pairs)];
            for (std::size_t i = 0; i < dim; ++i) out.m(i, j) *= s;
        }
    }
    return out;
}

Letter multiply_same_kind(const Letter& lhs, const Letter& rhs) {
    if (const auto* zl = std::get_if<ZElement>(&lhs)) {
        const auto& zr = std::get<ZElement>(rhs);
        ZElement out;
        for (const auto& [a, ca] : zl->terms)
            for (const auto& [b, cb] : zr.terms) {
                B0Vec prod = ca * cb;
                auto [it, fresh] = out.terms.emplace(a + b, prod);
                if (!fresh) it->second += prod;
            }
        return out;
    }
    return MatElement{std::get<MatElement>(lhs).m * std::get<MatElement>(rhs).m};
}

std::vector<Letter> merged(std::vector<Letter> letters) {
    std::vector<Letter> out;
    out.reserve(letters.size());
    for (auto& l : letters) {
        if (!out.empty() && out.back().index() == l.index()) {
            out.back() = multiply_same_kind(out.back(), l);
        } else {
            out.push_back(std::move(l));
        }
    }
    return out;
}

B0Vec expect_rec(std::vector<Letter> letters, std::size_t scan_from, const EvalCtx& ctx) {
    if (++ctx.nodes > ctx.max_nodes)
        throw std::runtime_error("expect: recursion node budget exceeded");
    if (scan_from == 0) letters = merged(std::move(letters));

    if (letters.empty()) return B0Vec::ones(ctx.pairs);
    if (letters.size() == 1) return expectation_of(letters[0], ctx);

    for (std::size_t i = scan_from; i < letters.size(); ++i) {
        const B0Vec exp_part = expectation_of(letters[i], ctx);
        const double scale = std::max(1.0, letter_scale(letters[i]));
        if (exp_part.max_abs() <= kSplitTol * scale) continue;

        // Expectation branch: the subalgebra part joins a neighbor.
        std::vector<Letter> absorbed;
        absorbed.reserve(letters.size() - 1);
        if (i > 0) {
            for (std::size_t j = 0; j + 1 < i; ++j) absorbed.push_back(letters[j]);
            absorbed.push_back(absorb(letters[i - 1], exp_part, 'R', ctx));
            for (std::size_t j = i + 1; j < letters.size(); ++j) absorbed.push_back(letters[j]);
        } else {
            absorbed.push_back(absorb(letters[1], exp_part, 'L', ctx));
            for (std::size_t j = 2; j < letters.size(); ++j) absorbed.push_back(letters[j]);
        }
        B0Vec total = expect_rec(std::move(absorbed), 0, ctx);

        // Centered branch: replace the letter by its centered part.
        Letter centered = centered_of(letters[i], exp_part, ctx);
        if (letter_scale(centered) > kSplitTol * scale) {
            letters[i] = std::move(centered);
            total += expect_rec(std::move(letters), i + 1, ctx);
        }
        return total;
    }

    // Alternating product of centered letters.
    return B0Vec::zeros(ctx.pairs);
}

void validate_letters(const AmalgamatedWord& w, const ApproxRep& rep, const EvalLimits& limits) {
    if (w.letters.size() > limits.max_letters)
        throw std::invalid_argument("expect: word length " + std::to_string(w.letters.size()) +
                                    " exceeds guard " + std::to_string(limits.max_letters));
    const std::size_t pairs = rep.dim / 2;
    for (const auto& l : w.letters) {
        if (const auto* z = std::get_if<ZElement>(&l)) {
            for (const auto& [a, c] : z->terms)
                if (c.pairs() != pairs) throw std::invalid_argument("expect: coefficient size mismatch");
        } else if (std::get<MatElement>(l).m.dim() != rep.dim) {
            throw std::invalid_argument("expect: matrix letter dimension mismatch");
        }
    }
}

}  // namespace

AmalgamEvaluator::AmalgamEvaluator(const ApproxRep& rep, EvalLimits limits)
    : rep_(&rep), limits_(limits) {}

B0Vec AmalgamEvaluator::expect(const AmalgamatedWord& w) const {
    validate_letters(w, *rep_, limits_);
    EvalCtx ctx{rep_, rep_->dim / 2, limits_.max_nodes};
    return expect_rec(w.letters, 0, ctx);
}

cplx AmalgamEvaluator::tau(const AmalgamatedWord& w) const {
    const B0Vec e = expect(w);
    cplx sum = 0.0;
    for (const auto& x : e.c) sum += x;
    return sum / static_cast<double>(e.pairs());
}

AmalgamatedWord ab_instantiate(const GroupWord& w, const ApproxRep& rep, bool* wrapped) {
    if (wrapped) *wrapped = false;
    const std::size_t pairs = rep.dim / 2;
    const bigint order = static_cast<long>(rep.dim);
    AmalgamatedWord out;
    for (const auto& syl : w.syllables()) {
        if (syl.gen == Gen::A) {
            if (syl.exp > 1000 || syl.exp < -1000)
                throw std::invalid_argument("ab_instantiate: a-exponent out of range");
            const long a = static_cast<long>(syl.exp);
            if (a > 0) {
                for (long r = 0; r < a; ++r) {
                    out.letters.emplace_back(ZElement::haar_power(1, pairs));
                    out.letters.emplace_back(MatElement{rep.v});
                }
            } else {
                for (long r = 0; r < -a; ++r) {
                    out.letters.emplace_back(MatElement{rep.v.adjoint()});
                    out.letters.emplace_back(ZElement::haar_power(-1, pairs));
                }
            }
        } else {
            bigint mag = syl.exp < 0 ? -syl.exp : syl.exp;
            if (wrapped && mag >= order) *wrapped = true;
            bigint red = syl.exp % order;
            out.letters.emplace_back(MatElement{rep.b_power(static_cast<long>(red))});
        }
    }
    return out;
}

Claim2Report claim2_check(const GroupWord& w, const AmalgamEvaluator& ev) {
    Claim2Report rpt;
    AmalgamatedWord aw = ab_instantiate(w, ev.rep(), &rpt.wrapped);
    rpt.tau_value = ev.tau(aw);
    rpt.passes_a13 = a13_check(w).satisfied;
    rpt.is_identity = britton_is_identity(w);
    return rpt;
}

namespace {

// State vector layout for the sampled model: component (j, d) at
// j * aux + d, j matrix index, d auxiliary index.
struct McOps {
    const ApproxRep* rep;
    std::size_t aux;
    std::vector<CMatrix> blocks;  // per pair block, dimension 2 * aux

    std::size_t pairs() const { return rep->dim / 2; }
    std::size_t total() const { return rep->dim * aux; }

    void apply_a1(std::vector<cplx>& psi, bool inverse) const {
        const std::size_t p = pairs();
        std::vector<cplx> u(2 * aux);
        for (std::size_t k = 0; k < p; ++k) {
            const CMatrix& V = blocks[k];
            const std::size_t r0 = k * aux, r1 = (k + p) * aux;
            for (std::size_t d = 0; d < aux; ++d) {
                u[d] = psi[r0 + d];
                u[aux + d] = psi[r1 + d];
            }
            for (std::size_t i = 0; i < 2 * aux; ++i) {
                cplx acc = 0.0;
                if (!inverse) {
                    for (std::size_t j = 0; j < 2 * aux; ++j) acc += V(i, j) * u[j];
                } else {
                    for (std::size_t j = 0; j < 2 * aux; ++j) acc += std::conj(V(j, i)) * u[j];
                }
                if (i < aux)
                    psi[r0 + i] = acc;
                else
                    psi[r1 + i - aux] = acc;
            }
        }
    }

    void apply_perm(std::vector<cplx>& psi, bool inverse) const {
        std::vector<cplx> out(psi.size());
        for (std::size_t m = 0; m < rep->dim; ++m) {
            const std::size_t t = rep->perm[m];
            const std::size_t src = inverse ? t : m;
            const std::size_t dst = inverse ? m : t;
            for (std::size_t d = 0; d < aux; ++d) out[dst * aux + d] = psi[src * aux + d];
        }
        psi.swap(out);
    }

    void apply_b_power(std::vector<cplx>& psi, long beta) const {
        const CMatrix bp = rep->b_power(beta);
        for (std::size_t j = 0; j < rep->dim; ++j) {
            const cplx s = bp(j, j);
            for (std::size_t d = 0; d < aux; ++d) psi[j * aux + d] *= s;
        }
    }

    void apply_word(std::vector<cplx>& psi, const GroupWord& w) const {
        const auto& syl = w.syllables();
        for (auto it = syl.rbegin(); it != syl.rend(); ++it) {
            if (it->gen == Gen::B) {
                const bigint red = it->exp % static_cast<long>(rep->dim);
                apply_b_power(psi, static_cast<long>(red));
                continue;
            }
            const long a = static_cast<long>(it->exp);
            if (a > 0) {
                for (long r = 0; r < a; ++r) {
                    apply_perm(psi, false);
                    apply_a1(psi, false);
                }
            } else {
                for (long r = 0; r < -a; ++r) {
                    apply_a1(psi, true);
                    apply_perm(psi, true);
                }
            }
        }
    }
};

}  // namespace

McResult mc_trace(const GroupWord& w, const ApproxRep& rep, const McConfig& cfg) {
    if (cfg.samples < 2) throw std::invalid_argument("mc_trace: need at least 2 samples");
    if (cfg.aux_dim < 1 || cfg.probes < 1) throw std::invalid_argument("mc_trace: bad config");

    const std::size_t pairs = rep.dim / 2;
    std::vector<cplx> estimates(static_cast<std::size_t>(cfg.samples));

#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < cfg.samples; ++s) {
        Rng rng = make_rng(cfg.seed, 0x6d63ULL * 1024 + static_cast<std::uint64_t>(s));
        McOps ops;
        ops.rep = &rep;
        ops.aux = static_cast<std::size_t>(cfg.aux_dim);
        ops.blocks.reserve(pairs);
        for (std::size_t k = 0; k < pairs; ++k)
            ops.blocks.push_back(random_haar_unitary(2 * ops.aux, rng));

        std::normal_distribution<double> g(0.0, std::sqrt(0.5));
        cplx acc = 0.0;
        for (int r = 0; r < cfg.probes; ++r) {
            std::vector<cplx> z(ops.total());
            for (auto& x : z) x = cplx(g(rng), g(rng));
            std::vector<cplx> wz = z;
            ops.apply_word(wz, w);
            cplx dot = 0.0;
            for (std::size_t i = 0; i < z.size(); ++i) dot += std::conj(z[i]) * wz[i];
            acc += dot / static_cast<double>(ops.total());
        }
        estimates[static_cast<std::size_t>(s)] = acc / static_cast<double>(cfg.probes);
    }

    cplx mean = 0.0;
    for (const auto& e : estimates) mean += e;
    mean /= static_cast<double>(cfg.samples);
    double var = 0.0;
    for (const auto& e : estimates) var += std::norm(e - mean);
    var /= static_cast<double>(cfg.samples - 1);
    McResult res;
    res.mean = mean;
    res.std_error = std::sqrt(var / static_cast<double>(cfg.samples));
    res.samples = cfg.samples;
    return res;
}

}  // namespace bglab
