#include "itv/form_literal.hpp"
#include "itv/torsion.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace itv;
using itv::testing::distance;

namespace {

using Projector = Eigen::Matrix<double, kReducedSize, kReducedSize>;
using Reduced = Eigen::Matrix<double, kReducedSize, 1>;

const ConnectionTable<double>& lc() {
    static const auto c = levi_civita(iwasawa_table<Rational>()).cast<double>();
    return c;
}

const StructureTable<double>& iw() {
    static const auto s = iwasawa_table<double>();
    return s;
}

OpsPoint point(std::string_view literal) { return from_plucker(parse_form<double>(literal)); }

Vector6 unit(int i) { return Vector6::Unit(i - 1); }

Vector6 random_k_unit(std::mt19937_64& rng) {
    Vector6 v = itv::testing::random_vector(rng);
    v(4) = v(5) = 0.0;
    return v.normalized();
}

Vector6 random_kperp_unit(std::mt19937_64& rng) {
    Vector6 v = itv::testing::random_vector(rng);
    v.head<4>().setZero();
    return v.normalized();
}

Reduced as_vector(const ReducedTensor& t) { return Eigen::Map<const Reduced>(t.data()); }

Projector projector_matrix(Component c) {
    Projector m;
    for (int j = 0; j < kReducedSize; ++j) {
        ReducedTensor basis{};
        basis[static_cast<std::size_t>(j)] = 1.0;
        m.col(j) = as_vector(project(c, basis));
    }
    return m;
}

ReducedTensor random_reduced(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ReducedTensor t;
    for (double& x : t) x = g(rng);
    return t;
}

std::vector<Component> active(const OpsPoint& p) { return classify(p, lc()).active_components(); }

// Mixed population: uniform points plus members of every special family.
std::vector<OpsPoint> mixed_sample(std::mt19937_64& rng, int n) {
    std::vector<OpsPoint> out;
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    for (int i = 0; i < n; ++i) {
        const Vector6 f = random_k_unit(rng);
        switch (i % 6) {
        case 0: out.push_back(sample_uniform(rng)); break;
        case 1: out.push_back(OpsPoint::from_pair(f, random_k_unit(rng))); break;
        case 2: out.push_back(OpsPoint::from_pair(f, (i % 12 == 2 ? 1.0 : -1.0) * apply_j1(f))); break;
        case 3: out.push_back(OpsPoint::from_pair(f, random_kperp_unit(rng))); break;
        case 4: {
            const double a1 = angle(rng), a2 = angle(rng), a3 = angle(rng);
            const Vector6 w1 = f * std::cos(a1) + random_kperp_unit(rng) * std::sin(a1);
            const Vector6 w2 = (f * std::cos(a3) + apply_j1(f) * std::sin(a3)) * std::cos(a2) +
                               random_kperp_unit(rng) * std::sin(a2);
            out.push_back(OpsPoint::from_pair(w1, w2));
            break;
        }
        default: out.push_back(OpsPoint::from_pair(unit(5), (i % 12 == 5 ? 1.0 : -1.0) * unit(6))); break;
        }
    }
    return out;
}

} // namespace

TEST_CASE("torsion of the standard structure e56") {
    const auto p = point("e56");
    const auto t = intrinsic_torsion(p, lc());

    // nabla_{e_i} e^5 = 1/2 i_{e_i} beta2, nabla_{e_i} e^6 = 1/2 i_{e_i} beta3
    for (int i = 1; i <= kDim; ++i) {
        const Vec6 ei = to_covector(unit(i));
        const Form expected = 0.5 * wedge(interior(ei, beta2()), Form::basis({6})) +
                              0.5 * wedge(Form::basis({5}), interior(ei, beta3()));
        CHECK(distance(t.raw[i], expected) < 1e-15);
    }
    CHECK(t.raw[5].is_zero());
    CHECK(t.raw[6].is_zero());
    CHECK(t.residual < 1e-15);

    const auto parts = naveira_project(t);
    const double tau = t.norm();
    CHECK(tau > 0.5);
    for (Component c : kAllComponents) {
        if (c == Component::W4plus) {
            CHECK(parts.norm(c) == doctest::Approx(tau).epsilon(1e-12));
        } else {
            CHECK(parts.norm(c) < 1e-10 * tau);
        }
    }
    CHECK(classify(p, lc()).label() == "W4plus");
    // Reversing V reverses the induced orientation of H, so the self-dual
    // block of e56 reads as anti-self-dual for -e56.
    CHECK(classify(p.reversed(), lc()).label() == "W4minus");
    CHECK(classify(point("-e56"), lc()).label() == "W4minus");

    CHECK(tau_rank(t) == 4);
    const auto kernel = tau_kernel(t);
    REQUIRE(kernel.size() == 2);
    Matrix6 pk = Matrix6::Zero();
    for (const auto& k : kernel) pk += k * k.transpose();
    Matrix6 expected = Matrix6::Zero();
    expected(4, 4) = expected(5, 5) = 1.0;
    CHECK((pk - expected).norm() < 1e-12);
}

TEST_CASE("class signatures of basic planes") {
    using C = Component;
    CHECK(active(point("e12")) == std::vector<C>{C::W5});
    CHECK(active(point("e34")) == std::vector<C>{C::W5});
    CHECK(active(point("e13")) == std::vector<C>{C::W3, C::W5});
    // A (1,1) plane: V = <e1, e5> has nabla_{e1} e5 = nabla_{e5} e1 = e3 / 2,
    // a traceless symmetric second fundamental form, so W2 shows up.
    CHECK(active(point("e15")) == std::vector<C>{C::W2, C::W4plus, C::W4minus, C::W5});

    for (const char* literal : {"e12", "e13", "e15", "e56"}) {
        const auto t = intrinsic_torsion(point(literal), lc());
        CHECK(tau_kernel(t).size() == static_cast<std::size_t>(6 - tau_rank(t)));
    }
}

TEST_CASE("flat connection has no torsion") {
    const auto flat = levi_civita(abelian_table<double>());
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const auto t = intrinsic_torsion(sample_uniform(rng), flat);
        CHECK(t.norm() == 0.0);
        CHECK(tau_rank(t) == 0);
        CHECK(tau_kernel(t).size() == 6);
    }
    CHECK(classify(point("e56"), flat).label() == "none");
}

TEST_CASE("non-metric connection trips the tangency guard") {
    ConnectionTable<double> c = lc();
    c(1, 1, 1) = 1.0;
    CHECK_THROWS_AS(intrinsic_torsion(point("e12"), c), InternalInvariantViolation);
}

TEST_CASE("generic sample has every component and full rank") {
    std::mt19937_64 rng(2024);
    const auto p = sample_uniform(rng);
    const auto sig = classify(p, lc());
    CHECK(sig.active_components().size() == 7);
    CHECK(tau_rank(intrinsic_torsion(p, lc())) == 6);
    CHECK(tau_kernel(intrinsic_torsion(p, lc())).empty());
}

TEST_CASE("J1-invariant planes in K are W5") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 200; ++trial) {
        const Vector6 f = random_k_unit(rng);
        const auto p = OpsPoint::from_pair(f, (trial % 2 ? 1.0 : -1.0) * apply_j1(f));
        const auto t = intrinsic_torsion(p, lc());
        const auto parts = naveira_project(t);
        for (Component c : kAllComponents) {
            if (c != Component::W5) CHECK(parts.norm(c) < 1e-10 * t.norm());
        }
        CHECK(parts.norm(Component::W5) > 0.1);
    }
}

TEST_CASE("projector algebra") {
    // dimension fixture, W1 W2 W3 W4plus W4minus W5 W6
    const std::array<int, 7> dims{4, 8, 4, 6, 6, 18, 2};
    std::array<Projector, 7> p;
    Projector sum = Projector::Zero();
    for (Component c : kAllComponents) {
        const auto i = static_cast<std::size_t>(c);
        p[i] = projector_matrix(c);
        sum += p[i];
        INFO(component_name(c));
        CHECK((p[i] * p[i] - p[i]).norm() < 1e-12);
        CHECK((p[i] - p[i].transpose()).norm() < 1e-12);
        CHECK(p[i].trace() == doctest::Approx(dims[i]).epsilon(1e-12));
        CHECK(component_dimension(c) == dims[i]);
        for (std::size_t j = 0; j < i; ++j) CHECK((p[i] * p[j]).norm() < 1e-12);
    }
    CHECK((sum - Projector::Identity()).norm() < 1e-12);

    int total = 0;
    for (int d : dims) total += d;
    CHECK(total == kReducedSize);
}

TEST_CASE("property: projections of random tensors") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 200; ++trial) {
        const ReducedTensor t = random_reduced(rng);
        const auto parts = naveira_project(t);
        double sq = 0.0;
        for (Component c : kAllComponents) {
            const auto i = static_cast<std::size_t>(c);
            sq += parts.norms[i] * parts.norms[i];
            CHECK((as_vector(project(c, parts.parts[i])) - as_vector(parts.parts[i])).norm() < 1e-12);
            for (std::size_t j = 0; j < i; ++j) CHECK(std::abs(as_vector(parts.parts[i]).dot(as_vector(parts.parts[j]))) < 1e-12);
        }
        const double n2 = tensor_norm(t) * tensor_norm(t);
        CHECK(std::abs(sq - n2) <= 1e-9 * n2);
    }
}

TEST_CASE("property: torsion stays tangent to the orbit") {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto t = intrinsic_torsion(sample_uniform(rng), lc());
        CHECK(t.residual < 1e-9 * std::max(1.0, t.raw.norm()));
        CHECK(t.norm() == doctest::Approx(t.raw.norm()).epsilon(1e-9));
        const auto parts = naveira_project(t);
        double sq = 0.0;
        for (double n : parts.norms) sq += n * n;
        CHECK(std::abs(sq - t.norm() * t.norm()) <= 1e-9 * t.norm() * t.norm());
    }
}

TEST_CASE("reduced tensors rebuild the raw tensor") {
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 50; ++trial) {
        const auto t = intrinsic_torsion(sample_uniform(rng), lc());
        const auto raw = reduced_to_raw(t.reduced, t.frame);
        for (int i = 1; i <= kDim; ++i) CHECK(distance(raw[i], t.raw[i]) < 1e-12);
    }
}

TEST_CASE("alternation check") {
    const auto e56 = alternation_check(point("e56"), lc(), iw());
    CHECK(e56.form < 1e-12);
    CHECK(e56.complement < 1e-12);

    const auto p = point("e12");
    CHECK(norm(ce_differential(p.plucker(), iw())) == 0.0);
    const auto e12 = alternation_check(p, lc(), iw());
    CHECK(e12.form < 1e-12);
    CHECK(e12.complement < 1e-12);

    std::mt19937_64 rng(36);
    for (int trial = 0; trial < 300; ++trial) {
        const auto r = alternation_check(sample_uniform(rng), lc(), iw());
        CHECK(r.form < 1e-9);
        CHECK(r.complement < 1e-9);
    }
}

TEST_CASE("Frobenius integrability") {
    CHECK(frobenius_integrable_h(point("e12"), iw()));
    CHECK_FALSE(frobenius_integrable_h(point("e56"), iw()));
    CHECK(frobenius_integrable_v(point("e56"), iw()));
    CHECK_FALSE(frobenius_integrable_v(point("e13"), iw()));

    SUBCASE("property: equivalences on a mixed sample") {
        std::mt19937_64 rng(37);
        int h_count = 0;
        int v_count = 0;
        for (const auto& p : mixed_sample(rng, 1000)) {
            const bool h = frobenius_integrable_h(p, iw());
            const bool v = frobenius_integrable_v(p, iw());
            CHECK(h == (mn_type(p) == MNType{2, 0}));
            CHECK(v == (rho_projection(p).norm() < 1e-7));
            h_count += h;
            v_count += v;
        }
        CHECK(h_count > 100);
        CHECK(v_count > 100);
    }
}

TEST_CASE("only five components are seen by d") {
    std::mt19937_64 rng(38);
    for (int trial = 0; trial < 5; ++trial) {
        const auto s = adapted_splitting(sample_uniform(rng));
        const auto vis = differential_visibility(s, 100 + trial);
        using C = Component;
        for (C c : kAllComponents) {
            const auto i = static_cast<std::size_t>(c);
            INFO(component_name(c));
            // d w sees the antisymmetric parts, d*w the traces
            CHECK(vis.via_form[i] == (c == C::W1 || c == C::W4plus || c == C::W4minus));
            CHECK(vis.via_complement[i] == (c == C::W3 || c == C::W6));
        }
        int visible = 0;
        for (C c : kAllComponents) visible += vis.visible(c);
        CHECK(visible == 5);
    }
}

TEST_CASE("component names round-trip") {
    for (Component c : kAllComponents) CHECK(component_from_name(component_name(c)) == c);
    CHECK_THROWS_AS(component_from_name("W7"), ParseError);
}
