#pragma once

// Form literals: "e56", "e12 + e34", "+1.0 e13 -1.0 e24", "0.5*e21".
//
// A term is an optional sign, an optional coefficient, an optional '*', and a
// basis monomial 'e' followed by single-digit indices. Indices given out of
// order are sorted with the permutation sign; a repeated index is rejected.
// Whitespace is ignored. Inside a coefficient, an exponent is recognized only
// as 'e'/'E' followed by a sign, or 'E' followed by a digit, so "2e12" reads as
// 2 * e^{12}.

#include "itv/exterior.hpp"

#include <string_view>

namespace itv {

struct LiteralTerm {
    std::string coefficient; // decimal text, sign included
    std::vector<int> indices; // as written
};

/// Tokenizes a literal; throws ParseError with a column on malformed input.
std::vector<LiteralTerm> lex_form_literal(std::string_view text);

template <class S>
KForm<S> parse_form(std::string_view text) {
    const auto terms = lex_form_literal(text);
    const int grade = static_cast<int>(terms.front().indices.size());
    KForm<S> out(grade);
    for (const auto& t : terms) {
        if (static_cast<int>(t.indices.size()) != grade) {
            throw ParseError("mixed grades in form literal '" + std::string(text) + "'");
        }
        // Sort with sign by insertion; duplicates were rejected by the lexer.
        std::vector<int> idx = t.indices;
        int sign = 1;
        for (std::size_t i = 1; i < idx.size(); ++i) {
            for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
                std::swap(idx[j - 1], idx[j]);
                sign = -sign;
            }
        }
        std::uint8_t mask = 0;
        for (int i : idx) mask |= static_cast<std::uint8_t>(1U << (i - 1));
        S c = scalar_from_decimal<S>(t.coefficient);
        out.add(MultiIndex::from_mask(mask), sign > 0 ? c : -c);
    }
    return out;
}

} // namespace itv
