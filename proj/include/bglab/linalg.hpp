#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace bglab {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major storage.
///
/// This is the ambient algebra for everything in the project: the
/// normalized trace tau (trace / dim), the operator norm and the
/// normalized Hilbert-Schmidt norm are all defined against it.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

    static CMatrix identity(std::size_t dim);
    static CMatrix diagonal(std::span<const cplx> entries);

    std::size_t dim() const { return dim_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    CMatrix adjoint() const;

    CMatrix& operator+=(const CMatrix& rhs);
    CMatrix& operator-=(const CMatrix& rhs);
    CMatrix& operator*=(cplx scale);

    friend CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
    friend CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }
    friend CMatrix operator*(cplx scale, CMatrix m) { return m *= scale; }
    friend CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);

private:
    std::size_t dim_ = 0;
    std::vector<cplx> a_;
};

/// Matrix product. Dispatches to the OpenMP kernel for large dimensions
/// and to the serial kernel below the threshold.
CMatrix matmul(const CMatrix& x, const CMatrix& y);

/// Serial reference kernel, kept as the oracle for the parallel one and
/// for the kernel benchmark.
CMatrix matmul_serial(const CMatrix& x, const CMatrix& y);

/// OpenMP kernel (row-parallel, deterministic output).
CMatrix matmul_parallel(const CMatrix& x, const CMatrix& y);

/// tau(m) = (1/dim) sum of diagonal entries.
cplx normalized_trace(const CMatrix& m);

/// Largest singular value, computed from the Hermitian square.
double op_norm(const CMatrix& m);

/// sqrt(tau(m* m)); the normalized Hilbert-Schmidt norm.
double hs_norm(const CMatrix& m);

/// Largest absolute entry; cheap sanity metric used by validators.
double max_abs_entry(const CMatrix& m);

CMatrix kron(const CMatrix& x, const CMatrix& y);
CMatrix direct_sum(const CMatrix& x, const CMatrix& y);
CMatrix commutator(const CMatrix& x, const CMatrix& y);

struct EigResult {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // columns, orthonormal
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Throws std::runtime_error if rotations fail to converge.
EigResult eig_hermitian(const CMatrix& h);

/// Validated wrapper: matrix with ||m - m*|| below 1e-12 * (1 + ||m||).
class HermitianMatrix {
public:
    explicit HermitianMatrix(CMatrix m);
    const CMatrix& matrix() const { return m_; }

private:
    CMatrix m_;
};

/// Validated wrapper: selfadjoint idempotent to 1e-10.
class ProjectionMatrix {
public:
    explicit ProjectionMatrix(CMatrix m);
    const CMatrix& matrix() const { return m_; }

private:
    CMatrix m_;
};

/// Validated wrapper: ||m* m - 1|| <= 1e-10.
class UnitaryMatrix {
public:
    explicit UnitaryMatrix(CMatrix m);
    const CMatrix& matrix() const { return m_; }

private:
    CMatrix m_;
};

/// Spectral projection onto eigenvalues > eps * ||h||. Eigenvalues in
/// the relative band (-eps, eps) belong to neither support.
ProjectionMatrix support_pos(const HermitianMatrix& h, double eps = 1e-10);

/// Spectral projection onto eigenvalues < -eps * ||h||.
ProjectionMatrix support_neg(const HermitianMatrix& h, double eps = 1e-10);

}  // namespace bglab
