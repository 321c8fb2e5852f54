#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cramer/errors.hpp"
#include "cramer/matrix.hpp"
#include "cramer/rational.hpp"
#include "cramer/variables.hpp"
#include "cramer/variety.hpp"

namespace cramer {

/// Element of the weight lattice of the maximal diagonal torus, stored
/// additively: one integer exponent per torus coordinate, laid out as
/// (a_1..a_r | b_1..b_t | c_1..c_s). Multiplicative weights like a_1/b_1
/// become exponent vectors with +1 and -1 entries.
struct Character {
    int r = 0, s = 0;
    std::vector<long> exp; ///< length r + t + s

    static Character zero(int r, int s) {
        Character ch;
        ch.r = r;
        ch.s = s;
        ch.exp.assign(static_cast<std::size_t>(2 * r + 2 * s), 0);
        return ch;
    }

    int t() const { return r + s; }
    long& a(int i) { return exp[static_cast<std::size_t>(i - 1)]; }
    long& b(int i) { return exp[static_cast<std::size_t>(r + i - 1)]; }
    long& c(int i) { return exp[static_cast<std::size_t>(r + t() + i - 1)]; }
    long a(int i) const { return exp[static_cast<std::size_t>(i - 1)]; }
    long b(int i) const { return exp[static_cast<std::size_t>(r + i - 1)]; }
    long c(int i) const { return exp[static_cast<std::size_t>(r + t() + i - 1)]; }

    Character& operator+=(const Character& o) {
        if (exp.size() != o.exp.size()) throw DimensionError("Character: lattice rank mismatch");
        for (std::size_t k = 0; k < exp.size(); ++k) exp[k] += o.exp[k];
        return *this;
    }
    friend Character operator+(Character x, const Character& y) { return x += y; }
    Character operator-() const {
        Character out = *this;
        for (long& e : out.exp) e = -e;
        return out;
    }
    friend Character operator-(Character x, const Character& y) { return x + (-y); }
    friend bool operator==(const Character& x, const Character& y) {
        return x.r == y.r && x.s == y.s && x.exp == y.exp;
    }

    bool is_trivial() const {
        for (long e : exp)
            if (e != 0) return false;
        return true;
    }

    /// Value of the character at concrete nonzero diagonal entries.
    Rational eval(const std::vector<Rational>& a_vals, const std::vector<Rational>& b_vals,
                  const std::vector<Rational>& c_vals) const {
        if (static_cast<int>(a_vals.size()) != r || static_cast<int>(b_vals.size()) != t() ||
            static_cast<int>(c_vals.size()) != s)
            throw DimensionError("Character::eval: wrong number of diagonal entries");
        Rational acc(1);
        for (int i = 1; i <= r; ++i) acc *= a_vals[i - 1].pow(a(i));
        for (int i = 1; i <= t(); ++i) acc *= b_vals[i - 1].pow(b(i));
        for (int i = 1; i <= s; ++i) acc *= c_vals[i - 1].pow(c(i));
        return acc;
    }

    std::string str() const {
        std::ostringstream os;
        bool any = false;
        auto emit = [&](const char* base, int idx, long e) {
            if (e == 0) return;
            if (any) os << (e > 0 ? " + " : " - ");
            else if (e < 0) os << "-";
            any = true;
            long mag = e > 0 ? e : -e;
            if (mag != 1) os << mag << "*";
            os << base << idx;
        };
        for (int i = 1; i <= r; ++i) emit("a", i, a(i));
        for (int i = 1; i <= t(); ++i) emit("b", i, b(i));
        for (int i = 1; i <= s; ++i) emit("c", i, c(i));
        return any ? os.str() : "0";
    }
};

/// Character of the restricted torus, whose middle factor is locked to
/// diag(A-part, C-part): exponents over (a_1..a_r | c_1..c_s).
struct RestrictedCharacter {
    int r = 0, s = 0;
    std::vector<long> exp; ///< length r + s

    static RestrictedCharacter zero(int r, int s) {
        RestrictedCharacter ch;
        ch.r = r;
        ch.s = s;
        ch.exp.assign(static_cast<std::size_t>(r + s), 0);
        return ch;
    }

    long& a(int i) { return exp[static_cast<std::size_t>(i - 1)]; }
    long& c(int i) { return exp[static_cast<std::size_t>(r + i - 1)]; }
    long a(int i) const { return exp[static_cast<std::size_t>(i - 1)]; }
    long c(int i) const { return exp[static_cast<std::size_t>(r + i - 1)]; }

    RestrictedCharacter& operator+=(const RestrictedCharacter& o) {
        if (exp.size() != o.exp.size()) throw DimensionError("RestrictedCharacter: rank mismatch");
        for (std::size_t k = 0; k < exp.size(); ++k) exp[k] += o.exp[k];
        return *this;
    }
    friend RestrictedCharacter operator+(RestrictedCharacter x, const RestrictedCharacter& y) {
        return x += y;
    }
    friend bool operator==(const RestrictedCharacter& x, const RestrictedCharacter& y) {
        return x.r == y.r && x.s == y.s && x.exp == y.exp;
    }
    friend bool operator<(const RestrictedCharacter& x, const RestrictedCharacter& y) {
        return x.exp < y.exp;
    }

    bool is_trivial() const {
        for (long e : exp)
            if (e != 0) return false;
        return true;
    }

    std::string str() const {
        std::ostringstream os;
        bool any = false;
        auto emit = [&](const char* base, int idx, long e) {
            if (e == 0) return;
            if (any) os << (e > 0 ? " + " : " - ");
            else if (e < 0) os << "-";
            any = true;
            long mag = e > 0 ? e : -e;
            if (mag != 1) os << mag << "*";
            os << base << idx;
        };
        for (int i = 1; i <= r; ++i) emit("a", i, a(i));
        for (int i = 1; i <= s; ++i) emit("c", i, c(i));
        return any ? os.str() : "0";
    }
};

/// Lattice restriction along b_i -> a_i (i <= r), b_{r+j} -> c_j.
inline RestrictedCharacter restrict_character(const Character& ch) {
    RestrictedCharacter out = RestrictedCharacter::zero(ch.r, ch.s);
    for (int i = 1; i <= ch.r; ++i) out.a(i) = ch.a(i) + ch.b(i);
    for (int j = 1; j <= ch.s; ++j) out.c(j) = ch.c(j) + ch.b(ch.r + j);
    return out;
}

/// Weight of one ambient coordinate under the maximal torus:
/// m_ij scales by a_i/b_j, n_ij by b_i/c_j, and omega by
/// det(B)/(det(A) det(C)).
inline Character coordinate_weight(int r, int s, const VarDescriptor& var) {
    Character ch = Character::zero(r, s);
    switch (var.kind) {
    case VarKind::m_entry:
        ch.a(var.i) += 1;
        ch.b(var.j) -= 1;
        return ch;
    case VarKind::n_entry:
        ch.b(var.i) += 1;
        ch.c(var.j) -= 1;
        return ch;
    case VarKind::omega:
        for (int i = 1; i <= r; ++i) ch.a(i) -= 1;
        for (int i = 1; i <= r + s; ++i) ch.b(i) += 1;
        for (int i = 1; i <= s; ++i) ch.c(i) -= 1;
        return ch;
    default:
        throw TableMismatchError("coordinate_weight: variable carries no torus weight");
    }
}

inline Character coordinate_weight(int r, int s, const VariableTable& table, std::size_t index) {
    return coordinate_weight(r, s, table.var(index));
}

namespace detail {

/// Adjoint weights of gl blocks under the restricted torus, where the
/// basis character of slot k of the middle factor is a_k for k <= r and
/// c_{k-r} beyond.
inline RestrictedCharacter restricted_slot(int r, int s, int slot) {
    RestrictedCharacter ch = RestrictedCharacter::zero(r, s);
    if (slot <= r)
        ch.a(slot) += 1;
    else
        ch.c(slot - r) += 1;
    return ch;
}

inline RestrictedCharacter restricted_diff(int r, int s, int slot_i, int slot_j) {
    RestrictedCharacter ch = restricted_slot(r, s, slot_i);
    const RestrictedCharacter neg = restricted_slot(r, s, slot_j);
    for (std::size_t k = 0; k < ch.exp.size(); ++k) ch.exp[k] -= neg.exp[k];
    return ch;
}

} // namespace detail

/// The adjoint weights of the full group under the restricted torus, as a
/// sorted multiset; gl(r) contributes a_i - a_j, gl(s) contributes
/// c_i - c_j, and the middle gl(t) contributes differences of the mixed
/// slot characters.
inline std::vector<RestrictedCharacter> g_weights(int r, int s) {
    const int t = r + s;
    std::vector<RestrictedCharacter> out;
    out.reserve(static_cast<std::size_t>(r * r + t * t + s * s));
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j) out.push_back(detail::restricted_diff(r, s, i, j));
    for (int i = 1; i <= t; ++i)
        for (int j = 1; j <= t; ++j) out.push_back(detail::restricted_diff(r, s, i, j));
    for (int i = 1; i <= s; ++i)
        for (int j = 1; j <= s; ++j) out.push_back(detail::restricted_diff(r, s, r + i, r + j));
    std::sort(out.begin(), out.end());
    return out;
}

/// The adjoint weights of the stabilizer: its Lie algebra consists of
/// triples (X, [[X, 0], [Y, Z]], Z), so one copy of the gl(r) and gl(s)
/// adjoint weights plus the lower-left block c_k - a_l.
inline std::vector<RestrictedCharacter> h_weights(int r, int s) {
    std::vector<RestrictedCharacter> out;
    out.reserve(static_cast<std::size_t>(r * r + s * s + r * s));
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j) out.push_back(detail::restricted_diff(r, s, i, j));
    for (int i = 1; i <= s; ++i)
        for (int j = 1; j <= s; ++j) out.push_back(detail::restricted_diff(r, s, r + i, r + j));
    for (int k = 1; k <= s; ++k)
        for (int l = 1; l <= r; ++l) out.push_back(detail::restricted_diff(r, s, r + k, l));
    std::sort(out.begin(), out.end());
    return out;
}

/// Multiset difference of the adjoint weights: what the tangent space of
/// the orbit transforms by. Cardinality rt + s^2.
inline std::vector<RestrictedCharacter> g_mod_h_weights(int r, int s) {
    if (r < 1 || r > s) throw ParameterError("g_mod_h_weights: need 1 <= r <= s");
    std::map<std::vector<long>, long> counts;
    for (const auto& w : g_weights(r, s)) counts[w.exp] += 1;
    for (const auto& w : h_weights(r, s)) {
        auto it = counts.find(w.exp);
        if (it == counts.end() || it->second == 0)
            throw Error("g_mod_h_weights: stabilizer weight missing from the group");
        it->second -= 1;
    }
    std::vector<RestrictedCharacter> out;
    for (const auto& [exp, count] : counts)
        for (long k = 0; k < count; ++k) {
            RestrictedCharacter ch;
            ch.r = r;
            ch.s = s;
            ch.exp = exp;
            out.push_back(std::move(ch));
        }
    std::sort(out.begin(), out.end());
    return out;
}

/// The block picture of the same multiset: an r-by-r block a_i - a_j, the
/// top-right r-by-s block a_i - c_j, and an s-by-s block c_i - c_j.
struct GModHBlocks {
    std::vector<RestrictedCharacter> square_r; ///< a_i - a_j
    std::vector<RestrictedCharacter> mixed;    ///< a_i - c_j
    std::vector<RestrictedCharacter> square_s; ///< c_i - c_j
};

inline GModHBlocks g_mod_h_block_weights(int r, int s) {
    GModHBlocks out;
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j) out.square_r.push_back(detail::restricted_diff(r, s, i, j));
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= s; ++j) out.mixed.push_back(detail::restricted_diff(r, s, i, r + j));
    for (int i = 1; i <= s; ++i)
        for (int j = 1; j <= s; ++j)
            out.square_s.push_back(detail::restricted_diff(r, s, r + i, r + j));
    return out;
}

/// Componentwise sum: the character of the product of a weight multiset.
inline RestrictedCharacter weight_product(const std::vector<RestrictedCharacter>& ws) {
    if (ws.empty()) return RestrictedCharacter::zero(0, 0);
    RestrictedCharacter acc = RestrictedCharacter::zero(ws.front().r, ws.front().s);
    for (const auto& w : ws) acc += w;
    return acc;
}

/// The character s * (a_1 + ... + a_r) - r * (c_1 + ... + c_s), i.e. the
/// s-th power of the determinant of the A-part over the r-th power of the
/// determinant of the C-part.
inline RestrictedCharacter det_power_character(int r, int s) {
    RestrictedCharacter ch = RestrictedCharacter::zero(r, s);
    for (int i = 1; i <= r; ++i) ch.a(i) = s;
    for (int j = 1; j <= s; ++j) ch.c(j) = -r;
    return ch;
}

struct SigmaWeight {
    Character full;
    RestrictedCharacter restricted;
};

/// Weight of the canonical differential of the chart with the given pivot
/// subset, computed from first principles: the sum of the coordinate
/// weights of the chart's free coordinates minus s times the weight of
/// the pivot minor. The result is independent of the pivot, restricts to
/// s*sum(a) - r*sum(c), and matches the product over the orbit tangent
/// weights; both identities are asserted here.
inline SigmaWeight sigma_weight_for_pivot(int r, int s, const std::vector<int>& pivot) {
    if (static_cast<int>(pivot.size()) != r)
        throw ParameterError("sigma_weight_for_pivot: pivot must have r elements");
    const int t = r + s;
    std::vector<bool> in_pivot(t + 1, false);
    for (int c : pivot) {
        if (c < 1 || c > t) throw ParameterError("sigma_weight_for_pivot: pivot out of range");
        in_pivot[c] = true;
    }

    Character total = Character::zero(r, s);
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= t; ++j)
            total += coordinate_weight(r, s, VarDescriptor{VarKind::m_entry, i, j, ""});
    for (int i = 1; i <= t; ++i) {
        if (in_pivot[i]) continue;
        for (int j = 1; j <= s; ++j)
            total += coordinate_weight(r, s, VarDescriptor{VarKind::n_entry, i, j, ""});
    }

    // Every monomial of the pivot minor has weight sum(a) - sum_{j in T} b_j.
    Character minor_weight = Character::zero(r, s);
    for (int i = 1; i <= r; ++i) minor_weight.a(i) += 1;
    for (int j = 1; j <= t; ++j)
        if (in_pivot[j]) minor_weight.b(j) -= 1;
    for (int k = 0; k < s; ++k) total += -minor_weight;

    SigmaWeight out{total, restrict_character(total)};
    if (!(out.restricted == weight_product(g_mod_h_weights(r, s))))
        throw Error("sigma_weight: restricted weight disagrees with the tangent product");
    if (!(out.restricted == det_power_character(r, s)))
        throw Error("sigma_weight: restricted weight is not the determinant character");
    return out;
}

inline SigmaWeight sigma_weight(int r, int s) {
    std::vector<int> pivot(r);
    for (int i = 0; i < r; ++i) pivot[i] = i + 1;
    return sigma_weight_for_pivot(r, s, pivot);
}

} // namespace cramer
