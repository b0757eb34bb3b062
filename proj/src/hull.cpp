#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "bglab/moments.hpp"

namespace bglab {

namespace {

// Dense tableau simplex for the phase-1 problem
//   min sum(s)  s.t.  [V ; 1] w + I s = [pm ; 1],  w, s >= 0,
// with Bland's rule. The artificial optimum is the L1 infeasibility of
// the hull system; its duals give the separating functional.
struct Phase1 {
    std::size_t rows, ncols;          // constraints, weight columns
    std::vector<double> t;            // (rows) x (ncols + rows + 1); RHS last
    std::vector<std::size_t> basis;   // per row, column index
    std::vector<double> dual_reduced; // reduced costs at termination

    double& at(std::size_t r, std::size_t c) { return t[r * (ncols + rows + 1) + c]; }
    std::size_t rhs_col() const { return ncols + rows; }
};

constexpr double kPivotTol = 1e-11;

}  // namespace

HullCertificate hull_membership(const PairMoments& pm, double tol) {
    const int n = pm.n;
    if (n < 1 || n > 12) throw std::invalid_argument("hull_membership: n must be in 1..12");
    const std::size_t m = PairMoments::tri_size(n);
    const std::size_t rows = m + 1;
    const std::size_t ncols = std::size_t(1) << n;
    const HullVertexSet vs{n};

    Phase1 sx;
    sx.rows = rows;
    sx.ncols = ncols;
    sx.t.assign(rows * (ncols + rows + 1), 0.0);
    sx.basis.resize(rows);

    std::vector<double> b(rows);
    for (std::size_t r = 0; r < m; ++r) b[r] = pm.values[r];
    b[m] = 1.0;

    std::vector<int> row_sign(rows, 1);
    for (std::size_t r = 0; r < rows; ++r)
        if (b[r] < 0.0) row_sign[r] = -1;

    for (std::uint32_t mask = 0; mask < ncols; ++mask) {
        const PairMoments v = vs.vertex(mask);
        for (std::size_t r = 0; r < m; ++r) sx.at(r, mask) = row_sign[r] * v.values[r];
        sx.at(m, mask) = row_sign[m] * 1.0;
    }
    for (std::size_t r = 0; r < rows; ++r) {
        sx.at(r, ncols + r) = 1.0;
        sx.at(r, sx.rhs_col()) = row_sign[r] * b[r];
        sx.basis[r] = ncols + r;
    }

    // Reduced costs d_j = c_j - sum over rows of the tableau column
    // (initial basis is all-artificial with unit costs).
    std::vector<double> d(ncols + rows, 0.0);
    for (std::size_t j = 0; j < ncols + rows; ++j) {
        double colsum = 0.0;
        for (std::size_t r = 0; r < rows; ++r) colsum += sx.at(r, j);
        const double cost = j < ncols ? 0.0 : 1.0;
        d[j] = cost - colsum;
    }
    double z = 0.0;
    for (std::size_t r = 0; r < rows; ++r) z += sx.at(r, sx.rhs_col());

    const std::size_t max_iter = 200000;
    for (std::size_t iter = 0;; ++iter) {
        if (iter > max_iter) throw std::runtime_error("hull_membership: simplex iteration cap");
        std::size_t enter = ncols + rows;
        for (std::size_t j = 0; j < ncols + rows; ++j) {
            if (d[j] < -kPivotTol) {
                enter = j;
                break;  // Bland: smallest eligible index
            }
        }
        if (enter == ncols + rows) break;

        std::size_t leave = rows;
        double best_ratio = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            const double a = sx.at(r, enter);
            if (a > kPivotTol) {
                const double ratio = sx.at(r, sx.rhs_col()) / a;
                if (leave == rows || ratio < best_ratio - 1e-15 ||
                    (std::abs(ratio - best_ratio) <= 1e-15 && sx.basis[r] < sx.basis[leave])) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
        }
        if (leave == rows) throw std::runtime_error("hull_membership: unbounded phase-1");

        const double piv = sx.at(leave, enter);
        for (std::size_t c = 0; c <= sx.rhs_col(); ++c) sx.at(leave, c) /= piv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == leave) continue;
            const double f = sx.at(r, enter);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c <= sx.rhs_col(); ++c) sx.at(r, c) -= f * sx.at(leave, c);
        }
        const double fd = d[enter];
        for (std::size_t c = 0; c < ncols + rows; ++c) d[c] -= fd * sx.at(leave, c);
        sx.basis[leave] = enter;
        z = 0.0;
        for (std::size_t r = 0; r < rows; ++r)
            if (sx.basis[r] >= ncols) z += sx.at(r, sx.rhs_col());
    }

    HullCertificate cert;
    if (z <= tol) {
        cert.member = true;
        for (std::size_t r = 0; r < rows; ++r) {
            if (sx.basis[r] < ncols) {
                const double w = std::max(0.0, sx.at(r, sx.rhs_col()));
                if (w > 1e-13) cert.weights[static_cast<std::uint32_t>(sx.basis[r])] += w;
            }
        }
        return cert;
    }

    // Infeasible: duals from the artificial reduced costs, undoing the
    // row sign flips. y' A_j <= 0 on all vertex columns, y' b = z > 0.
    cert.member = false;
    cert.violation = z;
    cert.separating_functional.resize(rows);
    for (std::size_t r = 0; r < rows; ++r)
        cert.separating_functional[r] = row_sign[r] * (1.0 - d[ncols + r]);
    return cert;
}

}  // namespace bglab
