#pragma once

// Left-invariant calculus on a 6-dimensional Lie algebra with an orthonormal
// coframe e^1..e^6: the Chevalley-Eilenberg differential, the Levi-Civita
// connection from the Koszul formula, and covariant derivatives of invariant
// forms.
//
// Conventions: a 2-form evaluates as e^{ij}(e_i, e_j) = 1, and brackets are
// recovered from the differential by de^k(e_i, e_j) = -e^k([e_i, e_j]).

#include "itv/exterior.hpp"

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace itv {

/// The value of d on each generator e^1..e^6 (all 2-forms).
template <class S>
struct StructureTable {
    std::array<KForm<S>, kDim> d_of_generator{
        KForm<S>(2), KForm<S>(2), KForm<S>(2), KForm<S>(2), KForm<S>(2), KForm<S>(2)};

    const KForm<S>& d(int generator) const { return d_of_generator.at(static_cast<std::size_t>(generator - 1)); }

    template <class T>
    StructureTable<T> cast() const {
        StructureTable<T> out;
        for (std::size_t k = 0; k < kDim; ++k) out.d_of_generator[k] = d_of_generator[k].template cast<T>();
        return out;
    }
};

/// de^k = 0 for k <= 4, de^5 = e^{13} + e^{42}, de^6 = e^{14} + e^{23}.
template <class S>
StructureTable<S> iwasawa_table() {
    StructureTable<S> s;
    s.d_of_generator[4] = KForm<S>::basis({1, 3}) - KForm<S>::basis({2, 4});
    s.d_of_generator[5] = KForm<S>::basis({1, 4}) + KForm<S>::basis({2, 3});
    return s;
}

template <class S>
StructureTable<S> abelian_table() {
    return {};
}

/// Parses `{"d": {"e5": "+1 e13 +1 e42", ...}}`; omitted generators are closed.
StructureTable<Rational> structure_table_from_json(std::string_view json_text);
StructureTable<Rational> load_structure_table(const std::filesystem::path& path);

namespace detail {

// Applies the derivation determined by e^j -> images[j-1] to a monomial
// form. Odd derivations pick up (-1)^p when passing p one-forms.
template <class S>
KForm<S> apply_derivation(const KForm<S>& a, const std::array<KForm<S>, kDim>& images, int image_grade, bool odd) {
    KForm<S> out(a.grade() - 1 + image_grade);
    for (const auto& [idx, c] : a.terms()) {
        const auto factors = idx.indices();
        for (std::size_t p = 0; p < factors.size(); ++p) {
            KForm<S> term = KForm<S>::scalar(c);
            for (std::size_t q = 0; q < factors.size(); ++q) {
                term = q == p ? wedge(term, images[static_cast<std::size_t>(factors[q] - 1)])
                              : wedge(term, KForm<S>::basis(MultiIndex::single(factors[q])));
            }
            if (odd && p % 2 == 1) term *= S(-1);
            out += term;
        }
    }
    return out;
}

} // namespace detail

/// Chevalley-Eilenberg differential extended from the generators by the
/// graded Leibniz rule.
template <class S>
KForm<S> ce_differential(const KForm<S>& a, const StructureTable<S>& s) {
    if (a.grade() >= kDim) return KForm<S>(kDim);
    if (a.grade() == 0) return KForm<S>(1);
    return detail::apply_derivation(a, s.d_of_generator, 2, true);
}

/// Generators k with d(de^k) != 0; empty iff the table satisfies Jacobi.
template <class S>
std::vector<int> jacobi_defects(const StructureTable<S>& s) {
    std::vector<int> bad;
    for (int k = 1; k <= kDim; ++k) {
        if (!ce_differential(s.d(k), s).is_zero()) bad.push_back(k);
    }
    return bad;
}

/// nabla(i, j, k) = (nabla_{e_i} e^j)(e_k), indices 1..6.
template <class S>
struct ConnectionTable {
    std::array<std::array<std::array<S, kDim>, kDim>, kDim> coeffs{};

    S& operator()(int i, int j, int k) {
        return coeffs[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)];
    }
    const S& operator()(int i, int j, int k) const {
        return coeffs[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)];
    }

    /// nabla_{e_i} e^j as a 1-form.
    KForm<S> derivative(int i, int j) const {
        CoVector<S> v{};
        for (int k = 1; k <= kDim; ++k) v[static_cast<std::size_t>(k - 1)] = (*this)(i, j, k);
        return KForm<S>::one_form(v);
    }

    /// Symmetric part of nabla e^j as a matrix over (direction, argument).
    std::array<std::array<S, kDim>, kDim> symmetric_part(int j) const {
        std::array<std::array<S, kDim>, kDim> out{};
        const S half = S(1) / S(2);
        for (int i = 1; i <= kDim; ++i)
            for (int k = 1; k <= kDim; ++k)
                out[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)] =
                    half * ((*this)(i, j, k) + (*this)(k, j, i));
        return out;
    }

    template <class T>
    ConnectionTable<T> cast() const {
        ConnectionTable<T> out;
        for (int i = 1; i <= kDim; ++i)
            for (int j = 1; j <= kDim; ++j)
                for (int k = 1; k <= kDim; ++k) {
                    if constexpr (std::is_same_v<T, S>) {
                        out(i, j, k) = (*this)(i, j, k);
                    } else {
                        out(i, j, k) = static_cast<T>(to_double((*this)(i, j, k)));
                    }
                }
        return out;
    }
};

/// Lie bracket coefficients c[i][j][k] with [e_i, e_j] = sum_k c e_k.
template <class S>
std::array<std::array<std::array<S, kDim>, kDim>, kDim> bracket_constants(const StructureTable<S>& s) {
    std::array<std::array<std::array<S, kDim>, kDim>, kDim> c{};
    for (auto& plane : c)
        for (auto& row : plane) row.fill(S(0));
    for (int k = 1; k <= kDim; ++k) {
        for (const auto& [idx, coeff] : s.d(k).terms()) {
            const auto ij = idx.indices();
            const auto i = static_cast<std::size_t>(ij[0] - 1);
            const auto j = static_cast<std::size_t>(ij[1] - 1);
            c[i][j][static_cast<std::size_t>(k - 1)] = -coeff;
            c[j][i][static_cast<std::size_t>(k - 1)] = coeff;
        }
    }
    return c;
}

/// Koszul formula for an orthonormal left-invariant frame:
///   g(nabla_{e_a} e_b, e_c) = 1/2 (c_ab^c - c_bc^a + c_ca^b),
/// transported to the coframe by (nabla_a e^j)(e_k) = -g(nabla_a e_k, e_j).
template <class S>
ConnectionTable<S> levi_civita(const StructureTable<S>& s) {
    const auto c = bracket_constants(s);
    const S half = S(1) / S(2);
    ConnectionTable<S> table;
    for (std::size_t a = 0; a < kDim; ++a)
        for (std::size_t j = 0; j < kDim; ++j)
            for (std::size_t k = 0; k < kDim; ++k)
                table.coeffs[a][j][k] = -half * (c[a][k][j] - c[k][j][a] + c[j][a][k]);
    return table;
}

/// An element of T* (x) Lambda^k: components[i] is the k-form attached to e^{i+1}.
template <class S>
struct CoTensorField {
    int form_grade = 0;
    std::array<KForm<S>, kDim> components{};

    const KForm<S>& operator[](int i) const { return components.at(static_cast<std::size_t>(i - 1)); }

    double norm() const {
        double sq = 0.0;
        for (const auto& f : components) sq += to_double(inner(f, f));
        return std::sqrt(sq);
    }
};

/// Covariant derivative of an invariant form: component i is nabla_{e_i} a,
/// expanded by the Leibniz rule from nabla_{e_i} e^j.
template <class S>
CoTensorField<S> nabla_form(const ConnectionTable<S>& c, const KForm<S>& a) {
    if (a.grade() < 1) throw DegreeOutOfRange("nabla_form expects a form of grade >= 1");
    CoTensorField<S> out;
    out.form_grade = a.grade();
    for (int i = 1; i <= kDim; ++i) {
        std::array<KForm<S>, kDim> images;
        for (int j = 1; j <= kDim; ++j) images[static_cast<std::size_t>(j - 1)] = c.derivative(i, j);
        out.components[static_cast<std::size_t>(i - 1)] = detail::apply_derivation(a, images, 1, false);
    }
    return out;
}

/// sum_i e^i ^ T_i; equals d a for T = nabla a when the connection is torsion-free.
template <class S>
KForm<S> alternation(const CoTensorField<S>& t) {
    KForm<S> out(t.form_grade + 1);
    for (int i = 1; i <= kDim; ++i) out += wedge(KForm<S>::basis(MultiIndex::single(i)), t[i]);
    return out;
}

template <class S>
CoTensorField<S> hodge(const CoTensorField<S>& t) {
    CoTensorField<S> out;
    out.form_grade = kDim - t.form_grade;
    for (std::size_t i = 0; i < kDim; ++i) out.components[i] = hodge(t.components[i]);
    return out;
}

template <class S>
bool operator==(const CoTensorField<S>& a, const CoTensorField<S>& b) {
    return a.form_grade == b.form_grade && a.components == b.components;
}

} // namespace itv
