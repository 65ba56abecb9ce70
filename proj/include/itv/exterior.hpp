#pragma once

// Exterior algebra of oriented Euclidean R^6 in the orthonormal coframe
// e^1..e^6. Forms are sparse maps from sorted multi-indices to coefficients;
// the orientation is fixed by e^{123456} = +1.

#include "itv/errors.hpp"
#include "itv/scalar.hpp"

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <type_traits>
#include <vector>

namespace itv {

inline constexpr int kDim = 6;

/// Strictly increasing tuple of frame indices in 1..6, stored as a bit mask
/// (bit i-1 set <=> index i present).
class MultiIndex {
public:
    constexpr MultiIndex() = default;

    /// Throws ParseError unless the indices are strictly increasing in 1..6.
    MultiIndex(std::initializer_list<int> indices);

    static constexpr MultiIndex from_mask(std::uint8_t mask) {
        MultiIndex m;
        m.mask_ = static_cast<std::uint8_t>(mask & 0x3F);
        return m;
    }

    static MultiIndex single(int index);

    constexpr std::uint8_t mask() const { return mask_; }
    constexpr int grade() const { return std::popcount(mask_); }
    constexpr bool contains(int index) const { return (mask_ >> (index - 1)) & 1U; }
    constexpr MultiIndex complement() const { return from_mask(static_cast<std::uint8_t>(~mask_)); }

    std::vector<int> indices() const;
    /// "e135"; the empty index prints as "1".
    std::string to_string() const;

    /// Lexicographic on the index tuple, so e12 < e13 < e14 < ... < e23.
    std::strong_ordering operator<=>(const MultiIndex& other) const;
    constexpr bool operator==(const MultiIndex& other) const = default;

private:
    std::uint8_t mask_ = 0;
};

/// Sign of the permutation that sorts the concatenation (a, b); 0 when the
/// two index sets overlap.
int concatenation_sign(MultiIndex a, MultiIndex b);

/// All multi-indices of the given grade in lexicographic order.
const std::vector<MultiIndex>& basis_indices(int grade);

/// Components of a 1-form (vectors are identified with 1-forms via the metric).
template <class S>
using CoVector = std::array<S, kDim>;

template <class S>
class KForm {
public:
    using Scalar = S;
    using Terms = std::map<MultiIndex, S>;

    KForm() = default;
    explicit KForm(int grade) : grade_(grade) {
        if (grade < 0 || grade > kDim) {
            throw DegreeOutOfRange("form grade " + std::to_string(grade) + " outside 0..6");
        }
    }

    static KForm basis(MultiIndex index, S coeff = S(1)) {
        KForm f(index.grade());
        f.add(index, coeff);
        return f;
    }

    static KForm scalar(S value) { return basis(MultiIndex{}, value); }

    static KForm one_form(const CoVector<S>& v) {
        KForm f(1);
        for (int i = 0; i < kDim; ++i) f.add(MultiIndex::single(i + 1), v[i]);
        return f;
    }

    int grade() const { return grade_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    S coeff(MultiIndex index) const {
        auto it = terms_.find(index);
        return it == terms_.end() ? S(0) : it->second;
    }

    /// Accumulates `value` onto the coefficient of `index`; exact zeros are pruned.
    void add(MultiIndex index, S value) {
        if (index.grade() != grade_) {
            throw GradeMismatch("term " + index.to_string() + " added to a " + std::to_string(grade_) +
                                "-form");
        }
        if (itv::is_zero(value)) return;
        auto [it, inserted] = terms_.try_emplace(index, value);
        if (!inserted) {
            it->second += value;
            if (itv::is_zero(it->second)) terms_.erase(it);
        }
    }

    template <class T>
    KForm<T> cast() const {
        KForm<T> out(grade_);
        for (const auto& [idx, c] : terms_) out.add(idx, convert<T>(c));
        return out;
    }

    KForm& operator+=(const KForm& other) {
        check_same_grade(other);
        for (const auto& [idx, c] : other.terms_) add(idx, c);
        return *this;
    }
    KForm& operator-=(const KForm& other) {
        check_same_grade(other);
        for (const auto& [idx, c] : other.terms_) add(idx, -c);
        return *this;
    }
    KForm& operator*=(const S& s) {
        if (itv::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [idx, c] : terms_) c *= s;
        return *this;
    }

    friend KForm operator+(KForm a, const KForm& b) { return a += b; }
    friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
    friend KForm operator*(KForm a, const S& s) { return a *= s; }
    friend KForm operator*(const S& s, KForm a) { return a *= s; }
    friend KForm operator-(KForm a) { return a *= S(-1); }

    friend bool operator==(const KForm& a, const KForm& b) {
        return a.grade_ == b.grade_ && a.terms_ == b.terms_;
    }

private:
    template <class T>
    static T convert(const S& c) {
        if constexpr (std::is_same_v<T, S>) {
            return c;
        } else {
            return static_cast<T>(to_double(c));
        }
    }

    void check_same_grade(const KForm& other) const {
        if (other.grade_ != grade_) {
            throw GradeMismatch("cannot combine a " + std::to_string(grade_) + "-form with a " +
                                std::to_string(other.grade_) + "-form");
        }
    }

    int grade_ = 0;
    Terms terms_;
};

template <class S>
KForm<S> wedge(const KForm<S>& a, const KForm<S>& b) {
    const int grade = a.grade() + b.grade();
    if (grade > kDim) {
        throw DegreeOutOfRange("wedge of grades " + std::to_string(a.grade()) + " and " +
                               std::to_string(b.grade()) + " exceeds 6");
    }
    KForm<S> out(grade);
    for (const auto& [ia, ca] : a.terms()) {
        for (const auto& [ib, cb] : b.terms()) {
            const int sign = concatenation_sign(ia, ib);
            if (sign == 0) continue;
            S c = ca * cb;
            out.add(MultiIndex::from_mask(ia.mask() | ib.mask()), sign > 0 ? c : -c);
        }
    }
    return out;
}

/// Hodge star for the orientation e^{123456}: *e^I = sign(I, I^c) e^{I^c}.
template <class S>
KForm<S> hodge(const KForm<S>& a) {
    KForm<S> out(kDim - a.grade());
    for (const auto& [idx, c] : a.terms()) {
        const MultiIndex comp = idx.complement();
        out.add(comp, concatenation_sign(idx, comp) > 0 ? c : -c);
    }
    return out;
}

/// Contraction i_v a; a 0-form contracts to the zero 0-form.
template <class S>
KForm<S> interior(const CoVector<S>& v, const KForm<S>& a) {
    if (a.grade() == 0) return KForm<S>(0);
    KForm<S> out(a.grade() - 1);
    for (const auto& [idx, c] : a.terms()) {
        int position = 0;
        for (int i : idx.indices()) {
            const S& vi = v[i - 1];
            if (!itv::is_zero(vi)) {
                S term = vi * c;
                const auto rest = MultiIndex::from_mask(static_cast<std::uint8_t>(idx.mask() & ~(1U << (i - 1))));
                out.add(rest, position % 2 == 0 ? term : -term);
            }
            ++position;
        }
    }
    return out;
}

template <class S>
S inner(const KForm<S>& a, const KForm<S>& b) {
    if (a.grade() != b.grade()) {
        throw GradeMismatch("inner product of a " + std::to_string(a.grade()) + "-form and a " +
                            std::to_string(b.grade()) + "-form");
    }
    S sum(0);
    for (const auto& [idx, c] : a.terms()) {
        auto it = b.terms().find(idx);
        if (it != b.terms().end()) sum += c * it->second;
    }
    return sum;
}

template <class S>
double norm(const KForm<S>& a) {
    return std::sqrt(to_double(inner(a, a)));
}

inline constexpr double kDefaultSimpleTol = 1e-9;

/// A 2-form is simple iff a^a vanishes; tested relative to |a|^2.
template <class S>
bool is_simple(const KForm<S>& a, double tol = kDefaultSimpleTol) {
    if (a.grade() != 2) throw GradeMismatch("is_simple expects a 2-form");
    const double n2 = to_double(inner(a, a));
    return norm(wedge(a, a)) <= tol * n2;
}

/// Human-readable form literal, e.g. "+1 e13 -1 e24"; the zero form prints "0".
template <class S>
std::string to_literal(const KForm<S>& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (const auto& [idx, c] : a.terms()) {
        std::string coeff = format_scalar(c);
        if (!out.empty()) out += ' ';
        if (coeff.front() != '-') out += '+';
        out += coeff;
        out += ' ';
        out += idx.to_string();
    }
    return out;
}

using Form = KForm<double>;
using RForm = KForm<Rational>;
using Vec6 = CoVector<double>;

} // namespace itv
