#include "bglab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bglab {

namespace {

void check_same_dim(const CMatrix& x, const CMatrix& y, const char* what) {
    if (x.dim() != y.dim()) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch " +
                                    std::to_string(x.dim()) + " vs " + std::to_string(y.dim()));
    }
}

constexpr std::size_t kParallelThreshold = 48;

}  // namespace

CMatrix CMatrix::identity(std::size_t dim) {
    CMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> entries) {
    CMatrix m(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
    check_same_dim(*this, rhs, "operator+=");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
    check_same_dim(*this, rhs, "operator-=");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx scale) {
    for (auto& v : a_) v *= scale;
    return *this;
}

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) { return matmul(lhs, rhs); }

CMatrix matmul_serial(const CMatrix& x, const CMatrix& y) {
    check_same_dim(x, y, "matmul");
    const std::size_t n = x.dim();
    CMatrix r(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx xik = x(i, k);
            if (xik == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) r(i, j) += xik * y(k, j);
        }
    }
    return r;
}

CMatrix matmul_parallel(const CMatrix& x, const CMatrix& y) {
    check_same_dim(x, y, "matmul");
    const std::size_t n = x.dim();
    CMatrix r(n);
#pragma omp parallel for schedule(static)
    for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        for (std::size_t k = 0; k < n; ++k) {
            const cplx xik = x(i, k);
            if (xik == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) r(i, j) += xik * y(k, j);
        }
    }
    return r;
}

CMatrix matmul(const CMatrix& x, const CMatrix& y) {
    if (x.dim() >= kParallelThreshold) return matmul_parallel(x, y);
    return matmul_serial(x, y);
}

cplx normalized_trace(const CMatrix& m) {
    cplx t = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i) t += m(i, i);
    return m.dim() == 0 ? cplx(0.0) : t / static_cast<double>(m.dim());
}

double hs_norm(const CMatrix& m) {
    double s = 0.0;
    for (const auto& v : m.data()) s += std::norm(v);
    return m.dim() == 0 ? 0.0 : std::sqrt(s / static_cast<double>(m.dim()));
}

double max_abs_entry(const CMatrix& m) {
    double s = 0.0;
    for (const auto& v : m.data()) s = std::max(s, std::abs(v));
    return s;
}

double op_norm(const CMatrix& m) {
    if (m.dim() == 0) return 0.0;
    if (max_abs_entry(m) == 0.0) return 0.0;
    EigResult eig = eig_hermitian(m.adjoint() * m);
    double top = eig.values.empty() ? 0.0 : eig.values.back();
    return std::sqrt(std::max(0.0, top));
}

CMatrix kron(const CMatrix& x, const CMatrix& y) {
    const std::size_t nx = x.dim(), ny = y.dim();
    CMatrix r(nx * ny);
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < nx; ++j) {
            const cplx xij = x(i, j);
            if (xij == cplx(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < ny; ++k)
                for (std::size_t l = 0; l < ny; ++l) r(i * ny + k, j * ny + l) = xij * y(k, l);
        }
    return r;
}

CMatrix direct_sum(const CMatrix& x, const CMatrix& y) {
    const std::size_t nx = x.dim(), ny = y.dim();
    CMatrix r(nx + ny);
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < nx; ++j) r(i, j) = x(i, j);
    for (std::size_t i = 0; i < ny; ++i)
        for (std::size_t j = 0; j < ny; ++j) r(nx + i, nx + j) = y(i, j);
    return r;
}

CMatrix commutator(const CMatrix& x, const CMatrix& y) { return x * y - y * x; }

// Cyclic complex Jacobi. Each rotation annihilates one off-diagonal pair;
// quadratic convergence once the matrix is nearly diagonal.
EigResult eig_hermitian(const CMatrix& h) {
    const std::size_t n = h.dim();
    CMatrix a = h;
    CMatrix v = CMatrix::identity(n);

    // Symmetrize once so tiny non-Hermitian noise cannot bias rotations.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = m;
            a(j, i) = std::conj(m);
        }
        a(i, i) = cplx(a(i, i).real(), 0.0);
    }

    double fro2 = 0.0;
    for (const auto& x : a.data()) fro2 += std::norm(x);
    const double stop = 1e-26 * std::max(1.0, fro2);

    const int max_sweeps = 80;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off2 = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off2 += std::norm(a(p, q));
        if (2.0 * off2 <= stop) {
            EigResult res;
            res.values.resize(n);
            std::vector<std::size_t> order(n);
            for (std::size_t i = 0; i < n; ++i) order[i] = i;
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
            CMatrix vs(n);
            for (std::size_t c = 0; c < n; ++c) {
                res.values[c] = a(order[c], order[c]).real();
                for (std::size_t r = 0; r < n; ++r) vs(r, c) = v(r, order[c]);
            }
            res.vectors = std::move(vs);
            return res;
        }

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag < 1e-300) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const cplx phase = apq / mag;

                // Real Jacobi angle for [[app, mag], [mag, aqq]].
                const double theta = 0.5 * std::atan2(2.0 * mag, app - aqq);
                const double c = std::cos(theta);
                const double s = std::sin(theta);

                // J = [[c*phase, -s*phase], [s, c]] columns (p,q); A <- J* A J.
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx arp = a(r, p), arq = a(r, q);
                    a(r, p) = c * phase * arp + s * arq;
                    a(r, q) = -s * phase * arp + c * arq;
                }
                for (std::size_t col = 0; col < n; ++col) {
                    const cplx apc = a(p, col), aqc = a(q, col);
                    a(p, col) = c * std::conj(phase) * apc + s * aqc;
                    a(q, col) = -s * std::conj(phase) * apc + c * aqc;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = c * phase * vrp + s * vrq;
                    v(r, q) = -s * phase * vrp + c * vrq;
                }
                a(p, q) = std::conj(a(q, p));
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);
            }
        }
    }
    throw std::runtime_error("eig_hermitian: Jacobi rotations did not converge in 80 sweeps (dim " +
                             std::to_string(n) + ")");
}

HermitianMatrix::HermitianMatrix(CMatrix m) : m_(std::move(m)) {
    const double dev = op_norm(m_ - m_.adjoint());
    const double scale = 1.0 + op_norm(m_);
    if (dev > 1e-12 * scale) {
        throw std::invalid_argument("HermitianMatrix: ||m - m*|| = " + std::to_string(dev) +
                                    " exceeds tolerance");
    }
}

ProjectionMatrix::ProjectionMatrix(CMatrix m) : m_(std::move(m)) {
    const double idem = op_norm(m_ * m_ - m_);
    const double herm = op_norm(m_ - m_.adjoint());
    if (idem > 1e-10 || herm > 1e-10) {
        throw std::invalid_argument("ProjectionMatrix: residuals idem=" + std::to_string(idem) +
                                    " herm=" + std::to_string(herm) + " exceed 1e-10");
    }
}

UnitaryMatrix::UnitaryMatrix(CMatrix m) : m_(std::move(m)) {
    const double dev = op_norm(m_.adjoint() * m_ - CMatrix::identity(m_.dim()));
    if (dev > 1e-10) {
        throw std::invalid_argument("UnitaryMatrix: ||m* m - 1|| = " + std::to_string(dev) +
                                    " exceeds 1e-10");
    }
}

namespace {

ProjectionMatrix spectral_support(const HermitianMatrix& h, double eps, int sign) {
    const CMatrix& m = h.matrix();
    const std::size_t n = m.dim();
    EigResult eig = eig_hermitian(m);
    double top = 0.0;
    for (double lam : eig.values) top = std::max(top, std::abs(lam));
    const double cut = eps * top;
    CMatrix p(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lam = eig.values[k];
        const bool keep = sign > 0 ? (lam > cut) : (lam < -cut);
        if (!keep) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vi = eig.vectors(i, k);
            for (std::size_t j = 0; j < n; ++j) p(i, j) += vi * std::conj(eig.vectors(j, k));
        }
    }
    return ProjectionMatrix(std::move(p));
}

}  // namespace

ProjectionMatrix support_pos(const HermitianMatrix& h, double eps) {
    if (eps < 0) throw std::invalid_argument("support_pos: eps must be >= 0");
    return spectral_support(h, eps, +1);
}

ProjectionMatrix support_neg(const HermitianMatrix& h, double eps) {
    if (eps < 0) throw std::invalid_argument("support_neg: eps must be >= 0");
    return spectral_support(h, eps, -1);
}

}  // namespace bglab
