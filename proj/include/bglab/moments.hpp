#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bglab/linalg.hpp"

namespace bglab {

/// All index tuples (i1,...,ik), 1 <= k <= p, entries in {1..n}, ordered
/// by length and lexicographically within a length.
struct MomentIndexSet {
    int n = 0;
    int p = 0;
    std::vector<std::vector<int>> indices;

    static MomentIndexSet make(int n, int p);
    std::size_t size() const { return indices.size(); }
};

/// Trace values of the ordered products u_{i1} ... u_{ik} of a unitary
/// tuple, one per index tuple.
struct MomentVector {
    MomentIndexSet index_set;
    std::vector<cplx> values;
    std::size_t source_dim = 0;  // dimension of the realizing tuple, 0 if synthetic
};

MomentVector unitary_moments(const std::vector<CMatrix>& us, int p);

/// True when every component is within tol of 0 or 1. Vectors of this
/// kind encode which products collapse to the identity; they are kept as
/// ordinary moment vectors rather than a separate type.
bool is_zero_one_pattern(const MomentVector& mv, double tol = 1e-8);

/// Componentwise product; realized by the Kronecker tuple.
MomentVector pointwise_product(const MomentVector& x, const MomentVector& y);

struct KronWitness {
    std::vector<CMatrix> tuple;  // u_i tensor w_i
    MomentVector moments;        // of the Kronecker tuple
    double witness_residual;     // max deviation from the pointwise product
};

/// Builds the Kronecker tuple of two unitary tuples and checks that its
/// moments factor as the pointwise product.
KronWitness kron_realize(const std::vector<CMatrix>& us, const std::vector<CMatrix>& ws, int p);

struct ConvexWitness {
    MomentVector combined;    // t x + (1-t) y with t = d1/(d1+d2)
    double t;
    double witness_residual;  // deviation from the direct-sum tuple moments
};

/// Trace-weighted convex combination realized by direct sums.
ConvexWitness convex_combine(const std::vector<CMatrix>& us, const std::vector<CMatrix>& ws, int p);

/// Zeroes every component whose index involves the first unitary. Equals
/// the average of the moments over scaling the first unitary by the
/// (p+1)-th roots of unity.
MomentVector gauge_average(const MomentVector& x);

/// The root-of-unity average itself, as an independent identity check.
MomentVector gauge_average_by_roots(const std::vector<CMatrix>& us, int p);

/// tau(e_i e_j) for 1 <= i <= j <= n, stored upper triangular.
struct PairMoments {
    int n = 0;
    std::vector<double> values;  // row-major upper triangle

    static std::size_t tri_size(int n) { return static_cast<std::size_t>(n) * (n + 1) / 2; }
    double& at(int i, int j);
    double at(int i, int j) const;
};

PairMoments projection_moments(const std::vector<CMatrix>& es);

/// The 2^n vertex patterns of the abelian hull: each subset S gives
/// eps_ij = [i in S][j in S].
struct HullVertexSet {
    int n = 0;
    std::size_t count() const { return std::size_t(1) << n; }
    PairMoments vertex(std::uint32_t mask) const;
};

struct HullCertificate {
    bool member = false;
    std::map<std::uint32_t, double> weights;    // vertex mask -> weight (members)
    std::vector<double> separating_functional;  // tri coefficients + constant (non-members)
    double violation = 0.0;                     // functional value at the query point
};

/// Decides whether the pair moments lie in the convex hull of the vertex
/// patterns by a two-phase dense simplex; returns vertex weights on
/// success and a separating affine functional otherwise.
HullCertificate hull_membership(const PairMoments& pm, double tol = 1e-8);

struct Atom {
    double weight;
    std::uint32_t membership;  // bit i set when the atom lies in A_i
};

/// Pair moments of indicator projections over a finite atomic measure
/// space: lambda_ij is the total weight of atoms lying in both sets.
PairMoments simulate_abelian(int n, const std::vector<Atom>& atoms);

}  // namespace bglab
