#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "bglab/approx_rep.hpp"
#include "bglab/group_words.hpp"
#include "bglab/linalg.hpp"

namespace bglab {

/// Element of the abelian subalgebra generated by b^2, stored as one
/// coefficient per pair block q_k = e_k + e_{k+3n}.
struct B0Vec {
    std::vector<cplx> c;

    static B0Vec zeros(std::size_t pairs) { return B0Vec{std::vector<cplx>(pairs, 0.0)}; }
    static B0Vec ones(std::size_t pairs) { return B0Vec{std::vector<cplx>(pairs, 1.0)}; }

    std::size_t pairs() const { return c.size(); }
    B0Vec& operator+=(const B0Vec& rhs);
    B0Vec operator*(const B0Vec& rhs) const;  // pointwise; the algebra is abelian
    double max_abs() const;
    CMatrix to_matrix() const;  // diagonal of dimension 2 * pairs
};

/// Projects a matrix claimed to lie in the subalgebra onto pair
/// coefficients, verifying the claim to the given tolerance.
B0Vec b0_from_matrix(const CMatrix& m, double tol = 1e-12);

/// Finite sum over alpha of a1^alpha tensor c_alpha, where a1 is the
/// formal Haar generator commuting with the abelian subalgebra.
struct ZElement {
    std::map<long, B0Vec> terms;

    static ZElement haar_power(long alpha, std::size_t pairs);
};

/// Element of the matrix factor.
struct MatElement {
    CMatrix m;
};

using Letter = std::variant<ZElement, MatElement>;

struct AmalgamatedWord {
    std::vector<Letter> letters;
};

struct EvalLimits {
    std::size_t max_letters = 14;       // recursion is worst-case exponential
    std::size_t max_nodes = 4'000'000;  // recursion node budget
};

/// Conditional expectation and trace on the amalgamated free product of
/// the group algebra of the integers (tensored with the abelian
/// subalgebra) and the matrix algebra, amalgamated over the subalgebra.
///
/// The expectation is computed by the centering recursion: adjacent
/// letters from the same factor are multiplied, the leftmost letter with
/// a nonzero expectation is split into its expectation (absorbed into a
/// neighbor) plus its centered part, and a fully alternating product of
/// centered letters has expectation zero.
class AmalgamEvaluator {
public:
    explicit AmalgamEvaluator(const ApproxRep& rep, EvalLimits limits = {});

    B0Vec expect(const AmalgamatedWord& w) const;
    cplx tau(const AmalgamatedWord& w) const;

    const ApproxRep& rep() const { return *rep_; }
    const EvalLimits& limits() const { return limits_; }

private:
    const ApproxRep* rep_;
    EvalLimits limits_;
};

/// Expands a group word with A = a1 v and B = b into amalgamated
/// letters. Sets *wrapped when some b-exponent reaches the order 6n of
/// b, in which case the trace is evaluated but phases wrap around.
AmalgamatedWord ab_instantiate(const GroupWord& w, const ApproxRep& rep,
                               bool* wrapped = nullptr);

struct Claim2Report {
    cplx tau_value;
    bool passes_a13 = false;
    bool is_identity = false;  // in the group, by pinch reduction
    bool wrapped = false;
};

Claim2Report claim2_check(const GroupWord& w, const AmalgamEvaluator& ev);

/// Monte Carlo oracle for the trace: a1 is sampled as a Haar-random
/// block unitary in the commutant of the abelian subalgebra, enlarged by
/// an auxiliary tensor factor of dimension aux_dim (the auxiliary factor
/// suppresses the finite-block Weingarten bias of higher moments). The
/// trace of each sampled word is estimated with Gaussian probe vectors.
struct McConfig {
    int samples = 256;
    int aux_dim = 16;
    int probes = 16;
    std::uint64_t seed = 1;
};

struct McResult {
    cplx mean;
    double std_error = 0.0;  // of the complex mean, from per-sample spread
    int samples = 0;
};

McResult mc_trace(const GroupWord& w, const ApproxRep& rep, const McConfig& cfg);

}  // namespace bglab
