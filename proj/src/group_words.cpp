#include "bglab/group_words.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <limits>
#include <sstream>

namespace bglab {

namespace {

void reduce_into(std::vector<Syllable>& out, Syllable s) {
    if (s.exp == 0) return;
    if (!out.empty() && out.back().gen == s.gen) {
        out.back().exp += s.exp;
        if (out.back().exp == 0) out.pop_back();
        return;
    }
    out.push_back(std::move(s));
}

std::vector<Syllable> reduce(const std::vector<Syllable>& raw) {
    std::vector<Syllable> out;
    out.reserve(raw.size());
    for (const auto& s : raw) reduce_into(out, s);
    // A single pass suffices: reduce_into merges through removed syllables.
    return out;
}

long checked_long(const bigint& v, const char* what) {
    if (v > std::numeric_limits<long>::max() || v < std::numeric_limits<long>::min()) {
        throw std::overflow_error(std::string(what) + ": exponent out of machine range");
    }
    return static_cast<long>(v);
}

bigint pow3(long e) {
    bigint r = 1;
    for (long i = 0; i < e; ++i) r *= 3;
    return r;
}

}  // namespace

GroupWord GroupWord::parse(std::string_view text) {
    std::vector<Syllable> raw;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        const std::size_t tok_start = i;
        const char c = text[i];
        if (c != 'a' && c != 'b') throw ParseError("expected generator 'a' or 'b'", tok_start);
        Gen gen = c == 'a' ? Gen::A : Gen::B;
        ++i;
        bigint exp = 1;
        if (i < n && text[i] == '^') {
            ++i;
            const std::size_t exp_start = i;
            bool neg = false;
            if (i < n && (text[i] == '-' || text[i] == '+')) {
                neg = text[i] == '-';
                ++i;
            }
            if (i >= n || !std::isdigit(static_cast<unsigned char>(text[i])))
                throw ParseError("malformed exponent", exp_start);
            bigint mag = 0;
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
                mag = mag * 10 + (text[i] - '0');
                ++i;
            }
            exp = neg ? -mag : mag;
        }
        if (i < n && !std::isspace(static_cast<unsigned char>(text[i])))
            throw ParseError("unexpected character in token", i);
        raw.push_back({gen, std::move(exp)});
    }
    return from_syllables(std::move(raw));
}

GroupWord GroupWord::from_syllables(std::vector<Syllable> syllables) {
    GroupWord w;
    w.syl_ = reduce(syllables);
    return w;
}

std::string GroupWord::format() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& s : syl_) {
        if (!first) os << ' ';
        first = false;
        os << (s.gen == Gen::A ? 'a' : 'b');
        if (s.exp != 1) os << '^' << s.exp.str();
    }
    return os.str();
}

GroupWord GroupWord::inverse() const {
    std::vector<Syllable> rev;
    rev.reserve(syl_.size());
    for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) rev.push_back({it->gen, -it->exp});
    return from_syllables(std::move(rev));
}

GroupWord operator*(const GroupWord& lhs, const GroupWord& rhs) {
    std::vector<Syllable> cat = lhs.syl_;
    cat.insert(cat.end(), rhs.syl_.begin(), rhs.syl_.end());
    return GroupWord::from_syllables(std::move(cat));
}

bigint total_a_degree(const GroupWord& w) {
    bigint d = 0;
    for (const auto& s : w.syllables())
        if (s.gen == Gen::A) d += s.exp;
    return d;
}

GroupWord lemma_neg_expand(long n, const bigint& k) {
    if (n < 1) throw std::invalid_argument("lemma_neg_expand: n must be >= 1");
    if (k < 2) throw std::invalid_argument("lemma_neg_expand: k must be >= 2");

    long budget = n;
    bigint cur = k;
    std::deque<long> trails;  // m of each conjugated single b, outermost last
    for (;;) {
        long twos = 0;
        while ((cur & 1) == 0 && twos < budget) {
            cur >>= 1;
            ++twos;
        }
        cur *= pow3(twos);
        budget -= twos;
        if (budget == 0) break;
        // cur odd here (all available 2-factors absorbed, budget remains)
        trails.push_front(budget);
        cur -= 1;
    }

    std::vector<Syllable> out;
    out.push_back({Gen::B, cur});
    for (long m : trails) {
        out.push_back({Gen::A, -m});
        out.push_back({Gen::B, 1});
        out.push_back({Gen::A, m});
    }
    return GroupWord::from_syllables(std::move(out));
}

GroupWord lemma_pos_expand(long n, const bigint& k) {
    if (n < 1) throw std::invalid_argument("lemma_pos_expand: n must be >= 1");
    if (k < 3) throw std::invalid_argument("lemma_pos_expand: k must be >= 3");

    long budget = n;
    bigint cur = k;
    std::deque<std::pair<long, int>> trails;  // (m, remainder in {1,2})
    bool lead = true;
    for (;;) {
        long threes = 0;
        while (cur % 3 == 0 && threes < budget) {
            cur /= 3;
            ++threes;
        }
        for (long i = 0; i < threes; ++i) cur <<= 1;
        budget -= threes;
        if (budget == 0) break;
        const int r = static_cast<int>(cur % 3);  // in {1,2}
        trails.push_front({budget, r});
        cur -= r;
        if (cur == 0) {
            lead = false;
            break;
        }
    }

    std::vector<Syllable> out;
    if (lead) out.push_back({Gen::B, cur});
    for (const auto& [m, r] : trails) {
        out.push_back({Gen::A, m});
        out.push_back({Gen::B, r});
        out.push_back({Gen::A, -m});
    }
    return GroupWord::from_syllables(std::move(out));
}

A13Report a13_check(const GroupWord& w) {
    A13Report rep;
    const auto& syl = w.syllables();
    for (std::size_t i = 0; i + 2 < syl.size(); ++i) {
        if (syl[i].gen != Gen::A || syl[i + 1].gen != Gen::B || syl[i + 2].gen != Gen::A) continue;
        const bool left_neg = syl[i].exp < 0;
        const bool right_neg = syl[i + 2].exp < 0;
        if (left_neg == right_neg) continue;  // A1
        const bigint beta = syl[i + 1].exp;
        const bigint mag = beta < 0 ? -beta : beta;
        if (left_neg && !right_neg) {
            if (mag != 1) rep.violations.push_back({i + 1, A13Rule::A2});
        } else {
            if (mag != 1 && mag != 2) rep.violations.push_back({i + 1, A13Rule::A3});
        }
    }
    rep.satisfied = rep.violations.empty();
    return rep;
}

GroupWord normalize_a13(const GroupWord& w, std::size_t max_rewrites, NormalizeStats* stats) {
    std::vector<Syllable> syl = w.syllables();
    std::size_t rewrites = 0;
    for (;;) {
        std::size_t hit = syl.size();
        for (std::size_t i = 0; i + 2 < syl.size(); ++i) {
            if (syl[i].gen != Gen::A || syl[i + 1].gen != Gen::B || syl[i + 2].gen != Gen::A)
                continue;
            const bool left_neg = syl[i].exp < 0;
            const bool right_neg = syl[i + 2].exp < 0;
            if (left_neg == right_neg) continue;
            const bigint& beta = syl[i + 1].exp;
            const bigint mag = beta < 0 ? -beta : beta;
            const bool violates = (left_neg && !right_neg) ? mag >= 2 : mag >= 3;
            if (violates) {
                hit = i;
                break;
            }
        }
        if (hit == syl.size()) break;

        if (++rewrites > max_rewrites)
            throw NontermError("normalize_a13: rewrite cap exceeded (" +
                               std::to_string(max_rewrites) + ")");

        const bigint n1 = syl[hit].exp;
        const bigint k = syl[hit + 1].exp;
        const bigint n2 = syl[hit + 2].exp;
        const bigint mabs = std::min(n1 < 0 ? -n1 : n1, n2 < 0 ? -n2 : n2);
        const long m = checked_long(mabs, "normalize_a13");

        GroupWord sub;
        if (n1 < 0) {
            sub = k >= 2 ? lemma_neg_expand(m, k) : lemma_neg_expand(m, -k).inverse();
        } else {
            sub = k >= 3 ? lemma_pos_expand(m, k) : lemma_pos_expand(m, -k).inverse();
        }

        std::vector<Syllable> next(syl.begin(), syl.begin() + hit);
        const bigint left_rest = n1 < 0 ? bigint(n1 + m) : bigint(n1 - m);
        const bigint right_rest = n1 < 0 ? bigint(n2 - m) : bigint(n2 + m);
        next.push_back({Gen::A, left_rest});
        for (const auto& s : sub.syllables()) next.push_back(s);
        next.push_back({Gen::A, right_rest});
        next.insert(next.end(), syl.begin() + hit + 3, syl.end());
        syl = reduce(next);
    }
    if (stats) stats->rewrites = rewrites;
    return GroupWord::from_syllables(std::move(syl));
}

bool britton_is_identity(const GroupWord& w) {
    std::vector<Syllable> syl = w.syllables();
    for (;;) {
        bool pinched = false;
        for (std::size_t i = 0; i + 2 < syl.size(); ++i) {
            if (syl[i].gen != Gen::A || syl[i + 1].gen != Gen::B || syl[i + 2].gen != Gen::A)
                continue;
            const bigint& p = syl[i].exp;
            const bigint& q = syl[i + 2].exp;
            const bigint& k = syl[i + 1].exp;
            if (p > 0 && q < 0 && k % 3 == 0) {
                // a b^{3m} a^-1 -> b^{2m}
                syl[i].exp -= 1;
                syl[i + 1].exp = k / 3 * 2;
                syl[i + 2].exp += 1;
                pinched = true;
            } else if (p < 0 && q > 0 && k % 2 == 0) {
                // a^-1 b^{2m} a -> b^{3m}
                syl[i].exp += 1;
                syl[i + 1].exp = k / 2 * 3;
                syl[i + 2].exp -= 1;
                pinched = true;
            }
            if (pinched) {
                syl = reduce(syl);
                break;
            }
        }
        if (!pinched) break;
    }
    return syl.empty();
}

bool britton_equal(const GroupWord& lhs, const GroupWord& rhs) {
    return britton_is_identity(lhs * rhs.inverse());
}

}  // namespace bglab
