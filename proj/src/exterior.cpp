#include "itv/exterior.hpp"
#include "itv/form_literal.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace itv {

MultiIndex::MultiIndex(std::initializer_list<int> indices) {
    int previous = 0;
    for (int i : indices) {
        if (i < 1 || i > kDim || i <= previous) {
            throw ParseError("multi-index must be strictly increasing in 1..6");
        }
        mask_ |= static_cast<std::uint8_t>(1U << (i - 1));
        previous = i;
    }
}

MultiIndex MultiIndex::single(int index) {
    if (index < 1 || index > kDim) throw ParseError("frame index " + std::to_string(index) + " outside 1..6");
    return from_mask(static_cast<std::uint8_t>(1U << (index - 1)));
}

std::vector<int> MultiIndex::indices() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(grade()));
    for (int i = 1; i <= kDim; ++i) {
        if (contains(i)) out.push_back(i);
    }
    return out;
}

std::string MultiIndex::to_string() const {
    if (mask_ == 0) return "1";
    std::string s = "e";
    for (int i : indices()) s += static_cast<char>('0' + i);
    return s;
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const {
    const auto a = indices();
    const auto b = other.indices();
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

int concatenation_sign(MultiIndex a, MultiIndex b) {
    if (a.mask() & b.mask()) return 0;
    // Each pair (i in a, j in b) with i > j is one inversion.
    int inversions = 0;
    for (int i : a.indices()) {
        for (int j : b.indices()) {
            if (i > j) ++inversions;
        }
    }
    return inversions % 2 == 0 ? 1 : -1;
}

const std::vector<MultiIndex>& basis_indices(int grade) {
    static const auto table = [] {
        std::array<std::vector<MultiIndex>, kDim + 1> t;
        for (unsigned mask = 0; mask < (1U << kDim); ++mask) {
            auto m = MultiIndex::from_mask(static_cast<std::uint8_t>(mask));
            t[static_cast<std::size_t>(m.grade())].push_back(m);
        }
        for (auto& v : t) std::sort(v.begin(), v.end());
        return t;
    }();
    if (grade < 0 || grade > kDim) throw DegreeOutOfRange("grade " + std::to_string(grade) + " outside 0..6");
    return table[static_cast<std::size_t>(grade)];
}

// ---------------------------------------------------------------------------
// Scalars

template <>
double scalar_from_decimal<double>(std::string_view text) {
    const std::string s(text);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw ParseError("bad coefficient '" + s + "'");
    return v;
}

template <>
Rational scalar_from_decimal<Rational>(std::string_view text) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) negative = text[pos++] == '-';
    long long numerator = 0;
    long long denominator = 1;
    bool any_digit = false;
    bool after_point = false;
    constexpr long long kLimit = std::numeric_limits<long long>::max() / 10;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (c == '.' && !after_point) {
            after_point = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) break;
        if (numerator > kLimit || denominator > kLimit) throw ParseError("coefficient too long for exact arithmetic");
        numerator = numerator * 10 + (c - '0');
        if (after_point) denominator *= 10;
        any_digit = true;
    }
    if (!any_digit) throw ParseError("bad coefficient '" + std::string(text) + "'");
    Rational value(numerator, denominator);
    if (pos < text.size() && text[pos] == '/') {
        const long long den = std::stoll(std::string(text.substr(pos + 1)));
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        return (negative ? -value : value) / Rational(den);
    }
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        const int exponent = std::stoi(std::string(text.substr(pos + 1)));
        for (int k = 0; k < std::abs(exponent); ++k) value = exponent > 0 ? value * 10LL : value / 10LL;
        pos = text.size();
    }
    if (pos != text.size()) throw ParseError("bad coefficient '" + std::string(text) + "'");
    return negative ? -value : value;
}

std::string format_scalar(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string format_scalar(const Rational& x) {
    if (x.denominator() == 1) return std::to_string(x.numerator());
    return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

// ---------------------------------------------------------------------------
// Literal lexer

namespace {

class LiteralLexer {
public:
    explicit LiteralLexer(std::string_view text) : text_(text) {}

    std::vector<LiteralTerm> run() {
        std::vector<LiteralTerm> terms;
        skip_space();
        if (at_end()) fail("empty form literal");
        while (!at_end()) {
            terms.push_back(term(terms.empty()));
            skip_space();
        }
        return terms;
    }

private:
    LiteralTerm term(bool first) {
        LiteralTerm t;
        std::string sign = "+";
        if (peek() == '+' || peek() == '-') {
            sign = std::string(1, text_[pos_++]);
            skip_space();
        } else if (!first) {
            fail("expected '+' or '-' between terms");
        }
        std::string number;
        if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') number = coefficient();
        skip_space();
        if (peek() == '*') {
            if (number.empty()) fail("'*' without a coefficient");
            ++pos_;
            skip_space();
        }
        if (peek() != 'e') fail("expected basis monomial 'e<indices>'");
        ++pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            const int index = text_[pos_] - '0';
            if (index < 1 || index > kDim) fail("frame index outside 1..6");
            if (std::find(t.indices.begin(), t.indices.end(), index) != t.indices.end()) {
                fail("repeated index in basis monomial");
            }
            t.indices.push_back(index);
            ++pos_;
        }
        if (t.indices.empty()) fail("basis monomial without indices");
        t.coefficient = sign + (number.empty() ? std::string("1") : number);
        return t;
    }

    std::string coefficient() {
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') ++pos_;
        if (peek() == '/') {
            ++pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("bad fraction");
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        } else if ((peek() == 'e' || peek() == 'E') && pos_ + 1 < text_.size()) {
            const char next = text_[pos_ + 1];
            const bool signed_exp = next == '+' || next == '-';
            const bool upper_digit = peek() == 'E' && std::isdigit(static_cast<unsigned char>(next));
            if (signed_exp || upper_digit) {
                pos_ += signed_exp ? 2 : 1;
                if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("bad exponent");
                while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            }
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at column " + std::to_string(pos_ + 1) + " in '" + std::string(text_) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

std::vector<LiteralTerm> lex_form_literal(std::string_view text) { return LiteralLexer(text).run(); }

} // namespace itv
