#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "bglab/linalg.hpp"

namespace bglab {

/// The dimension-6n approximate representation of the relation
/// a b^3 a^-1 = b^2: a diagonal unitary b with the 6n-th roots of unity
/// and a permutation unitary v intertwining the block projections
/// f[k] (width-3 strips repeated with period 1/2) and g[k] (width-2
/// strips repeated with period 1/3).
///
/// The permutation is chosen fixed-point free: each g-strip half is
/// matched to the f-strip half on the opposite side of the spectrum.
/// This keeps the conjugation identities exact, gives the same relation
/// defect and centered norms as the half-preserving choice, and makes
/// the conditional expectations of v b^alpha and b^alpha v vanish
/// identically (a half-preserving permutation fixes the atoms 0 and 1
/// and those expectations pick up a 1/2 coefficient).
struct ApproxRep {
    long n = 0;
    std::size_t dim = 0;               // 6n
    std::vector<std::size_t> perm;     // v maps basis vector m to perm[m]
    CMatrix b;                         // diagonal unitary
    CMatrix v;                         // 0/1 permutation unitary

    CMatrix diag_unit(std::size_t k) const;         // e_k
    CMatrix f_proj(std::size_t k) const;            // k < n
    CMatrix g_proj(std::size_t k) const;            // k < n
    CMatrix test_projection() const;                // sum of e_{3k}, trace 1/6
    CMatrix b_power(long alpha) const;              // b^alpha, phases reduced mod 6n
};

/// Builds the representation; throws std::logic_error if the induced
/// index map fails to be a bijection.
ApproxRep build_rep(long n);

/// The abelian subalgebra generated by b^2: spanned by the pair
/// projections q[k] = e_k + e_{k+3n}, together with its trace-preserving
/// conditional expectation (pairwise averaging of the diagonal).
class B0Algebra {
public:
    explicit B0Algebra(const ApproxRep& rep) : rep_(&rep) {}

    std::size_t pairs() const { return rep_->dim / 2; }
    CMatrix pair_proj(std::size_t k) const;

    /// E(m) = sum_k q_k tau(q_k m) / tau(q_k); diagonal output.
    CMatrix cond_exp(const CMatrix& m) const;

    /// m - E(m), the centering map.
    CMatrix phi(const CMatrix& m) const;

    const ApproxRep& rep() const { return *rep_; }

private:
    const ApproxRep* rep_;
};

struct RepReport {
    long n = 0;
    double relation_error = 0.0;                 // ||v b^3 v* - b^2||
    std::map<int, double> centered_norms;        // alpha -> ||phi(v b^a v*)||_2
    double property3_residual = 0.0;             // max ||E(..)|| over the vanishing family
    double pn_lower = 0.0;                       // ||P phi(v b v*)||_2
    double eq_phase_residual = 0.0;              // diagonal phases of v b v* vs closed form
};

/// Measures the relation defect, the centered lower bounds, the
/// vanishing conditional expectations (exponents up to p_max) and the
/// closed-form diagonal phases of v b v*.
RepReport verify_properties(const ApproxRep& rep, int p_max = 6);

}  // namespace bglab
