#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bglab {

using bigint = boost::multiprecision::cpp_int;

enum class Gen { A, B };

struct Syllable {
    Gen gen;
    bigint exp;  // never zero in a reduced word

    bool operator==(const Syllable&) const = default;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " (at offset " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

/// Freely reduced word in the generators a, b. b-exponents are kept as
/// arbitrary-precision integers: pinch reduction scales them by 3/2 and
/// they grow exponentially with the number of pinches.
class GroupWord {
public:
    GroupWord() = default;

    /// Whitespace-separated tokens: `a`, `b`, `a^<int>`, `b^<int>`.
    static GroupWord parse(std::string_view text);

    /// Builds from raw syllables, freely reducing.
    static GroupWord from_syllables(std::vector<Syllable> syllables);

    std::string format() const;

    const std::vector<Syllable>& syllables() const { return syl_; }
    std::size_t size() const { return syl_.size(); }
    bool empty() const { return syl_.empty(); }

    GroupWord inverse() const;
    friend GroupWord operator*(const GroupWord& lhs, const GroupWord& rhs);
    bool operator==(const GroupWord&) const = default;

private:
    std::vector<Syllable> syl_;
};

bigint total_a_degree(const GroupWord& w);

/// Expansion of a^-n b^k a^n (n >= 1, k >= 2): peel the 2-adic part of
/// the exponent through a^-1 b^{2m} a = b^{3m}, split off a conjugated
/// single b, repeat until the a-budget runs out.
GroupWord lemma_neg_expand(long n, const bigint& k);

/// Expansion of a^n b^k a^-n (n >= 1, k >= 3), dual to the above: peels
/// the 3-adic part through a b^{3m} a^-1 = b^{2m} and splits remainders
/// in {1, 2}.
GroupWord lemma_pos_expand(long n, const bigint& k);

enum class A13Rule { A1, A2, A3 };

struct A13Violation {
    std::size_t position;  // syllable index of the offending b-power
    A13Rule rule;
};

struct A13Report {
    bool satisfied = true;
    std::vector<A13Violation> violations;
};

/// Checks the sign/exponent conditions on consecutive a-powers:
///   A1  both exponents share a sign (no constraint),
///   A2  (-,+) change requires the b-exponent between to be +-1,
///   A3  (+,-) change requires it to be in {+-1, +-2}.
/// A leading b-power is exempt.
A13Report a13_check(const GroupWord& w);

struct NormalizeStats {
    std::size_t rewrites = 0;
};

struct NontermError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rewrites w into a group-equal word satisfying the A1-A3 conditions
/// (guaranteed for words of total a-degree zero). Scans for the first
/// violating sign change, replaces the minimal bracket via the matching
/// expansion lemma, reduces and restarts. Throws NontermError past the
/// rewrite cap.
GroupWord normalize_a13(const GroupWord& w, std::size_t max_rewrites = 1'000'000,
                        NormalizeStats* stats = nullptr);

/// Word problem oracle by pinch reduction: removes a b^{3m} a^-1 and
/// a^-1 b^{2m} a pinches until none remain; the word is trivial iff the
/// result is empty.
bool britton_is_identity(const GroupWord& w);
bool britton_equal(const GroupWord& lhs, const GroupWord& rhs);

}  // namespace bglab
