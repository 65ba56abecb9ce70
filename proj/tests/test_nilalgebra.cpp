#include "itv/form_literal.hpp"
#include "itv/nilalgebra.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace itv;

namespace {

RForm r(std::string_view literal) { return parse_form<Rational>(literal); }

// Twice the Levi-Civita coefficients of the Iwasawa metric, written out by
// hand from the reference table: twice_nabla[j][i][k] = 2 (nabla_{e_i} e^j)(e_k).
// A symmetric product e^a.e^b contributes e^a(x)e^b + e^b(x)e^a, and
// e^{ab} = e^a(x)e^b - e^b(x)e^a.
std::array<std::array<std::array<int, 6>, 6>, 6> reference_table() {
    std::array<std::array<std::array<int, 6>, 6>, 6> t{};
    auto sym = [&](int j, int a, int b, int c) {
        t[j - 1][a - 1][b - 1] += c;
        t[j - 1][b - 1][a - 1] += c;
    };
    auto alt = [&](int j, int a, int b) {
        t[j - 1][a - 1][b - 1] += 1;
        t[j - 1][b - 1][a - 1] -= 1;
    };
    sym(1, 3, 5, 1);  // 2 nabla e1 = e3.e5 + e4.e6
    sym(1, 4, 6, 1);
    sym(2, 3, 6, 1);  // 2 nabla e2 = e3.e6 - e4.e5
    sym(2, 4, 5, -1);
    sym(3, 1, 5, -1); // 2 nabla e3 = -e1.e5 - e2.e6
    sym(3, 2, 6, -1);
    sym(4, 1, 6, -1); // 2 nabla e4 = -e1.e6 + e2.e5
    sym(4, 2, 5, 1);
    alt(5, 1, 3);     // 2 nabla e5 = e13 + e42
    alt(5, 4, 2);
    alt(6, 1, 4);     // 2 nabla e6 = e14 + e23
    alt(6, 2, 3);
    return t;
}

} // namespace

TEST_CASE("structure equations of the Iwasawa algebra") {
    const auto s = iwasawa_table<Rational>();
    CHECK(ce_differential(RForm::basis({5}), s) == r("e13 + e42"));
    CHECK(ce_differential(RForm::basis({6}), s) == r("e14 + e23"));
    for (int k = 1; k <= 4; ++k) CHECK(ce_differential(RForm::basis(MultiIndex::single(k)), s).is_zero());

    const Rational a(3, 7);
    // d(e5^e6) = de5^e6 - e5^de6; the e5-terms carry a minus sign.
    CHECK(ce_differential(RForm::basis({5, 6}, a), s) == a * r("e613 + e642 - e514 - e523"));
    CHECK(ce_differential(RForm::scalar(Rational(2)), s).is_zero());
    CHECK(jacobi_defects(s).empty());
}

TEST_CASE("d squares to zero on every basis form") {
    const auto s = iwasawa_table<Rational>();
    for (int k = 0; k <= kDim; ++k) {
        for (const auto& idx : basis_indices(k)) {
            CHECK(ce_differential(ce_differential(RForm::basis(idx), s), s).is_zero());
        }
    }
}

TEST_CASE("property: d is a graded derivation") {
    const auto s = iwasawa_table<Rational>();
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const int p = 1 + trial % 3;
        const RForm a = itv::testing::random_rational_form(rng, p);
        const RForm b = itv::testing::random_rational_form(rng, 2);
        const Rational sign = p % 2 == 0 ? Rational(1) : Rational(-1);
        CHECK(ce_differential(wedge(a, b), s) ==
              wedge(ce_differential(a, s), b) + sign * wedge(a, ce_differential(b, s)));
    }
}

TEST_CASE("structure table JSON") {
    const auto parsed = structure_table_from_json(R"({"d": {"e5": "+1 e13 +1 e42", "e6": "+1 e14 +1 e23"}})");
    const auto preset = iwasawa_table<Rational>();
    for (int k = 1; k <= kDim; ++k) CHECK(parsed.d(k) == preset.d(k));

    const auto closed = structure_table_from_json(R"({"d": {}})");
    for (int k = 1; k <= kDim; ++k) CHECK(closed.d(k).is_zero());

    CHECK_THROWS_AS(structure_table_from_json(R"({"d": {"e7": "e12"}})"), ParseError);
    CHECK_THROWS_AS(structure_table_from_json(R"({"d": {"e5": "e123"}})"), ParseError);
    CHECK_THROWS_AS(structure_table_from_json(R"({"x": 1})"), ParseError);
    CHECK_THROWS_AS(structure_table_from_json("{not json"), ParseError);

    // de6 = e15 breaks Jacobi: d(e15) = -e1 ^ (e13 + e42) != 0.
    const auto broken = structure_table_from_json(R"({"d": {"e5": "e13 + e42", "e6": "e15"}})");
    CHECK(jacobi_defects(broken) == std::vector<int>{6});
}

TEST_CASE("Levi-Civita table reproduces the reference connection exactly") {
    const auto c = levi_civita(iwasawa_table<Rational>());
    const auto expected = reference_table();
    for (int i = 1; i <= kDim; ++i)
        for (int j = 1; j <= kDim; ++j)
            for (int k = 1; k <= kDim; ++k) {
                INFO("i=" << i << " j=" << j << " k=" << k);
                CHECK(Rational(2) * c(i, j, k) == Rational(expected[j - 1][i - 1][k - 1]));
            }
}

TEST_CASE("connection is metric and torsion-free") {
    const auto s = iwasawa_table<Rational>();
    const auto c = levi_civita(s);
    for (int i = 1; i <= kDim; ++i)
        for (int j = 1; j <= kDim; ++j)
            for (int k = 1; k <= kDim; ++k) {
                CHECK(c(i, j, k) + c(i, k, j) == Rational(0));
                // (de^j)(e_i, e_k) with e^{ik}(e_i, e_k) = 1
                Rational dj(0);
                if (i < k) dj = s.d(j).coeff(MultiIndex{i, k});
                if (i > k) dj = -s.d(j).coeff(MultiIndex{k, i});
                CHECK(dj == c(i, j, k) - c(k, j, i));
            }
}

TEST_CASE("closed generators have symmetric derivative, Killing duals antisymmetric") {
    const auto c = levi_civita(iwasawa_table<Rational>());
    for (int j = 1; j <= kDim; ++j) {
        const auto sym = c.symmetric_part(j);
        for (int i = 1; i <= kDim; ++i)
            for (int k = 1; k <= kDim; ++k) {
                if (j >= 5) {
                    CHECK(sym[i - 1][k - 1] == Rational(0));
                } else {
                    CHECK(c(i, j, k) == c(k, j, i));
                }
            }
    }
}

TEST_CASE("abelian table gives the flat connection") {
    const auto c = levi_civita(abelian_table<Rational>());
    for (int i = 1; i <= kDim; ++i)
        for (int j = 1; j <= kDim; ++j)
            for (int k = 1; k <= kDim; ++k) CHECK(c(i, j, k) == Rational(0));
    CHECK(nabla_form(c, RForm::basis({5, 6})).norm() == 0.0);
}

TEST_CASE("covariant derivative of forms") {
    const auto s = iwasawa_table<Rational>();
    const auto c = levi_civita(s);

    SUBCASE("alternation of nabla(e56) is d(e56)") {
        const RForm w = RForm::basis({5, 6});
        CHECK(alternation(nabla_form(c, w)) == ce_differential(w, s));
    }
    SUBCASE("nabla commutes with the Hodge star") {
        // *e56 = +e1234, so nabla(e1234) = *nabla(e56) slot by slot.
        CHECK(hodge(RForm::basis({5, 6})) == RForm::basis({1, 2, 3, 4}));
        CHECK(nabla_form(c, RForm::basis({1, 2, 3, 4})) == hodge(nabla_form(c, RForm::basis({5, 6}))));

        std::mt19937_64 rng(6);
        for (int trial = 0; trial < 30; ++trial) {
            const RForm a = itv::testing::random_rational_form(rng, 1 + trial % 5);
            CHECK(nabla_form(c, hodge(a)) == hodge(nabla_form(c, a)));
        }
    }
    SUBCASE("torsion-free: alternation equals d on every basis form") {
        for (int k = 1; k <= 5; ++k) {
            for (const auto& idx : basis_indices(k)) {
                const RForm a = RForm::basis(idx);
                CHECK(alternation(nabla_form(c, a)) == ce_differential(a, s));
            }
        }
    }
    SUBCASE("floating backend matches the exact one") {
        const auto cd = c.cast<double>();
        const RForm a = r("e13 + 2 e25 - 1/3 e46");
        const auto exact = nabla_form(c, a);
        const auto approx = nabla_form(cd, a.cast<double>());
        for (int i = 1; i <= kDim; ++i) CHECK(norm(exact[i].cast<double>() - approx[i]) < 1e-12);
    }
    CHECK_THROWS_AS(nabla_form(c, RForm::scalar(Rational(1))), DegreeOutOfRange);
}
