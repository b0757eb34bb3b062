#pragma once

#include <cstdint>
#include <vector>

#include "bglab/linalg.hpp"
#include "bglab/moments.hpp"

namespace bglab {

/// Coefficients of the linear functional L(lambda) = sum_{i<=j} a_ij
/// lambda_ij on pair moments, stored symmetrized.
struct FunctionalCoeffs {
    int n = 0;
    std::vector<double> a;  // upper triangle, row-major

    static FunctionalCoeffs make(int n);
    double& at(int i, int j);
    double at(int i, int j) const;
};

/// Gradient matrix of the functional in coordinate i at the current
/// tuple: a_ii Id + sum_{j != i} a_ij e_j. Using the identity (rather
/// than e_i) in the diagonal term changes nothing inside the corners
/// but makes the ascent update well defined.
CMatrix omega(int i, const std::vector<CMatrix>& es, const FunctionalCoeffs& A);

struct KktEntry {
    double commutator_hs = 0.0;   // ||[e_i, Omega_i]||_2
    double corner_pos_min = 0.0;  // min spectrum of e Omega e on range(e)
    double corner_neg_max = 0.0;  // max spectrum of (1-e) Omega (1-e) on range(1-e)
    double tau_e_omega = 0.0;     // tau(e_i Omega_i), >= 0 at maxima
    double tau_comp_omega = 0.0;  // tau((1-e_i) Omega_i), <= 0 at maxima
};

struct OptimizerState {
    std::vector<CMatrix> es;
    double objective = 0.0;
    std::vector<CMatrix> omegas;     // gradient matrices at the returned tuple
    std::vector<KktEntry> residuals;
    bool converged = false;
    int sweeps = 0;
    int monotone_violations = 0;     // steps that decreased the objective > 1e-12
    std::vector<double> trajectory;  // objective after each coordinate step
};

/// One coordinate step: replaces e_i by the strict positive support of
/// omega(i); monotone because tau(e Omega) over projections is maximized
/// by exactly that support. A vanishing omega leaves e_i unchanged.
void ascent_step(OptimizerState& state, int i, const FunctionalCoeffs& A);

struct SolveOptions {
    int restarts = 16;
    int max_sweeps = 500;
    double tol = 1e-12;
    std::uint64_t seed = 1;
    bool record_trajectory = false;
};

/// Coordinate ascent from random spectral-projection starts; returns the
/// best fixed point with populated first-order residuals.
OptimizerState solve(const FunctionalCoeffs& A, std::size_t dim, const SolveOptions& opts = {});

std::vector<KktEntry> kkt_check(const std::vector<CMatrix>& es, const FunctionalCoeffs& A);

/// Exact maximum of the functional over tuples of diagonal 0/1
/// projections; independent oracle, feasible for n * dim <= 24.
double brute_force_diagonal(const FunctionalCoeffs& A, std::size_t dim);

struct TangentReport {
    double proj_residual = 0.0;    // max ||e(theta)^2 - e(theta)|| over samples
    double err_coarse = 0.0;       // symmetric difference quotient error at h = 1e-2
    double err_fine = 0.0;         // same at h = 1e-3
};

/// Rotation path through a projection along a random partial isometry
/// between range(e) and its complement: e(0) = e, de/dtheta(0) = v + v*.
TangentReport tangent_probe(const CMatrix& e, std::uint64_t seed);

/// Same probe along explicitly given unit vectors x in range(e) and y in
/// range(1-e); the randomized version draws them from the seed.
TangentReport tangent_probe_along(const CMatrix& e, const std::vector<cplx>& x,
                                  const std::vector<cplx>& y);

}  // namespace bglab
