#include "itv/verify.hpp"
#include "itv/form_literal.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

namespace itv {

namespace {

using Clock = std::chrono::steady_clock;

// 2 nabla e^j in the reference table: symmetric products count both orders.
struct PublishedTerm {
    int j, a, b, coeff;
    bool symmetric;
};

constexpr PublishedTerm kPublished[] = {
    {1, 3, 5, 1, true},  {1, 4, 6, 1, true},   // e3.e5 + e4.e6
    {2, 3, 6, 1, true},  {2, 4, 5, -1, true},  // e3.e6 - e4.e5
    {3, 1, 5, -1, true}, {3, 2, 6, -1, true},  // -e1.e5 - e2.e6
    {4, 1, 6, -1, true}, {4, 2, 5, 1, true},   // -e1.e6 + e2.e5
    {5, 1, 3, 1, false}, {5, 4, 2, 1, false},  // e13 + e42
    {6, 1, 4, 1, false}, {6, 2, 3, 1, false},  // e14 + e23
};

// twice[j][i][k] = 2 (nabla_{e_i} e^j)(e_k)
std::array<std::array<std::array<int, kDim>, kDim>, kDim> reference_twice_nabla() {
    std::array<std::array<std::array<int, kDim>, kDim>, kDim> t{};
    for (const auto& p : kPublished) {
        auto& m = t[static_cast<std::size_t>(p.j - 1)];
        m[static_cast<std::size_t>(p.a - 1)][static_cast<std::size_t>(p.b - 1)] += p.coeff;
        m[static_cast<std::size_t>(p.b - 1)][static_cast<std::size_t>(p.a - 1)] += p.symmetric ? p.coeff : -p.coeff;
    }
    return t;
}

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

FamilySpec family(Family f, int count, std::uint64_t seed) {
    FamilySpec s;
    s.variant = f;
    s.count = count;
    s.seed = seed;
    return s;
}

struct Context {
    const VerifyConfig& config;
    StructureTable<double> s;
    ConnectionTable<Rational> exact;
    ConnectionTable<double> c;
};

bool connection_table(const Context& ctx, std::string& detail) {
    const auto start = Clock::now();
    const auto c = levi_civita(ctx.config.algebra);
    const auto expected = reference_twice_nabla();
    int wrong = 0;
    for (int i = 1; i <= kDim; ++i)
        for (int j = 1; j <= kDim; ++j)
            for (int k = 1; k <= kDim; ++k) {
                const Rational want(expected[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)]
                                            [static_cast<std::size_t>(k - 1)]);
                if (Rational(2) * c(i, j, k) != want) ++wrong;
            }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    detail = fmt("%d of 216 coefficients differ from the reference table (exact), %.3f s", wrong, secs);
    return wrong == 0 && secs < 1.0;
}

bool structure_equations(const Context& ctx, std::string& detail) {
    const auto& a = ctx.config.algebra;
    const auto defects = jacobi_defects(a);
    int nonzero = 0;
    for (int k = 0; k <= kDim; ++k) {
        for (const auto& idx : basis_indices(k)) {
            if (!ce_differential(ce_differential(RForm::basis(idx), a), a).is_zero()) ++nonzero;
        }
    }
    const bool d5 = ce_differential(RForm::basis({5}), a) == parse_form<Rational>("e13 + e42");
    const bool d6 = ce_differential(RForm::basis({6}), a) == parse_form<Rational>("e14 + e23");
    std::ostringstream os;
    if (!defects.empty()) {
        os << "Jacobi failure at";
        for (int k : defects) os << " e" << k;
        os << "; ";
    }
    os << "d^2 nonzero on " << nonzero << " of 64 basis forms; de5 " << (d5 ? "ok" : "WRONG") << ", de6 "
       << (d6 ? "ok" : "WRONG");
    detail = os.str();
    return defects.empty() && nonzero == 0 && d5 && d6;
}

bool standard_structure(const Context& ctx, std::string& detail) {
    const auto t = intrinsic_torsion(from_plucker(Form::basis({5, 6})), ctx.c);
    const auto parts = naveira_project(t);
    const ClassSignature sig(parts, t.norm(), ctx.config.tol);
    double others = 0.0;
    for (Component c : kAllComponents) {
        if (c != Component::W4plus) others = std::max(others, parts.norm(c));
    }
    const int rank = tau_rank(t, ctx.config.tol);
    detail = fmt("signature %s, largest other component %.3e |tau|, rank %d", sig.label().c_str(),
                 t.norm() > 0 ? others / t.norm() : 0.0, rank);
    return sig.label() == "W4plus" && others < 1e-10 * t.norm() && rank == 4;
}

bool itv_sweeps(const Context& ctx, std::string& detail) {
    const auto start = Clock::now();
    const int n = std::max(500, ctx.config.sweep_samples);
    std::ostringstream os;
    bool ok = true;
    for (Family f : {Family::StandardVertical, Family::GeodesicSpheres, Family::HorizontalGr2K, Family::Type11,
                     Family::VSlice}) {
        const auto r = sweep(family(f, n, ctx.config.seed), ctx.c, ctx.config.tol, ctx.config.threads);
        ok = ok && r.violations.empty();
        os << family_name(r.family) << ": " << r.violations.size() << " violations";
        if (!r.violations.empty()) {
            os << " {";
            bool first = true;
            for (const auto& [label, count] : r.histogram) {
                os << (first ? "" : ", ") << label << ": " << count;
                first = false;
            }
            os << "}";
        }
        os << "; ";
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    os << fmt("%.2f s", secs);
    detail = os.str();
    return ok && secs < 30.0;
}

bool genericity(const Context& ctx, std::string& detail) {
    const auto f = family(Family::Generic, ctx.config.generic_samples, ctx.config.seed);
    int full = 0;
    for (int i = 0; i < f.count; ++i) {
        const auto t = intrinsic_torsion(generate_point(f, i), ctx.c);
        const auto parts = naveira_project(t);
        bool all = true;
        for (double n : parts.norms) all = all && n > 1e-7 * t.norm();
        if (all && tau_rank(t, ctx.config.tol) == 6) ++full;
    }
    const double fraction = f.count > 0 ? static_cast<double>(full) / f.count : 0.0;
    detail = fmt("%d of %d samples have all seven components and rank 6 (fraction %.4f)", full, f.count, fraction);
    return fraction >= 0.99;
}

bool projector_algebra(const Context& ctx, std::string& detail) {
    std::mt19937_64 rng(ctx.config.seed + 1);
    std::normal_distribution<double> g(0.0, 1.0);
    double idem = 0.0, ortho = 0.0, parseval = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        ReducedTensor t;
        for (double& x : t) x = g(rng);
        const double n2 = tensor_norm(t) * tensor_norm(t);
        const auto parts = naveira_project(t);
        double sq = 0.0;
        for (std::size_t i = 0; i < 7; ++i) {
            sq += parts.norms[i] * parts.norms[i];
            const auto again = project(kAllComponents[i], parts.parts[i]);
            double diff = 0.0;
            for (int k = 0; k < kReducedSize; ++k) {
                const double d = again[static_cast<std::size_t>(k)] - parts.parts[i][static_cast<std::size_t>(k)];
                diff += d * d;
            }
            idem = std::max(idem, std::sqrt(diff / n2));
            for (std::size_t j = 0; j < i; ++j) {
                double dot = 0.0;
                for (int k = 0; k < kReducedSize; ++k)
                    dot += parts.parts[i][static_cast<std::size_t>(k)] * parts.parts[j][static_cast<std::size_t>(k)];
                ortho = std::max(ortho, std::abs(dot) / n2);
            }
        }
        parseval = std::max(parseval, std::abs(sq - n2) / n2);
    }
    const auto f = family(Family::Generic, 1000, ctx.config.seed + 2);
    double residual = 0.0;
    for (int i = 0; i < f.count; ++i) residual = std::max(residual, intrinsic_torsion(generate_point(f, i), ctx.c).residual);
    detail = fmt("idempotence %.2e, orthogonality %.2e, Parseval %.2e (relative); max tangency residual %.2e", idem,
                 ortho, parseval, residual);
    return idem <= 1e-9 && ortho <= 1e-9 && parseval <= 1e-9 && residual < 1e-9;
}

bool integrability(const Context& ctx, std::string& detail) {
    const std::array<Family, 6> mix{Family::Generic, Family::HorizontalGr2K, Family::GeodesicSpheres,
                                    Family::Type11,  Family::VSlice,         Family::StandardVertical};
    int h_bad = 0, v_bad = 0, h_true = 0, v_true = 0;
    double alt = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto f = family(mix[static_cast<std::size_t>(i % 6)], 0, ctx.config.seed + 3);
        const auto p = generate_point(f, i / 6);
        const bool h = frobenius_integrable_h(p, ctx.s, ctx.config.tol);
        const bool v = frobenius_integrable_v(p, ctx.s, ctx.config.tol);
        h_true += h;
        v_true += v;
        if (h != (mn_type(p) == MNType{2, 0})) ++h_bad;
        if (v != (rho_projection(p).norm() < 1e-7)) ++v_bad;
        const auto r = alternation_check(p, ctx.c, ctx.s);
        alt = std::max({alt, r.form, r.complement});
    }
    detail = fmt("H-test mismatches %d (integrable %d), V-test mismatches %d (integrable %d), max alternation "
                 "residual %.2e",
                 h_bad, h_true, v_bad, v_true, alt);
    return h_bad == 0 && v_bad == 0 && alt <= 1e-9;
}

bool moment_theorem(const Context& ctx, std::string& detail) {
    const auto up = moment_map(from_plucker(Form::basis({5, 6})));
    const auto down = moment_map(from_plucker(-1.0 * Form::basis({5, 6})));
    const bool vertices = up.x == 0 && up.y == 0 && up.z == 1 && down.x == 0 && down.y == 0 && down.z == -1;
    MomentCounts counts;
    counts.geodesic_spheres = counts.horizontal = counts.type11 = counts.vslice = ctx.config.sweep_samples;
    counts.uniform = ctx.config.uniform_samples;
    const auto r = verify_moment_images(ctx.c, 1e-9, counts, ctx.config.seed + 4, ctx.config.threads);
    std::ostringstream os;
    os << "mu(+-e56) " << (vertices ? "= (0,0,+-1)" : "WRONG");
    for (const auto& c : r.checks) {
        if (!c.passed) os << "; FAILED " << c.name << " (" << c.detail << ")";
    }
    for (const auto& c : r.checks) {
        if (c.name.rfind("vslice", 0) == 0) os << "; " << c.detail;
    }
    detail = os.str();
    return vertices && r.passed();
}

bool stabilizer(const Context& ctx, std::string& detail) {
    std::mt19937_64 rng(ctx.config.seed + 5);
    const auto w = from_plucker(Form::basis({5, 6}));
    int good = 0;
    for (int i = 0; i < 100; ++i) {
        const auto p = w.transformed(sample_stabilizer_element(rng));
        if (classify(p, ctx.c, ctx.config.tol).label() == "W4plus") ++good;
    }
    detail = fmt("%d of 100 sampled elements give {W4plus}", good);
    return good == 100;
}

struct Criterion {
    const char* id;
    const char* title;
    bool (*run)(const Context&, std::string&);
};

constexpr Criterion kCriteria[] = {
    {"connection-table", "Levi-Civita table reproduces the reference connection", connection_table},
    {"structure-equations", "structure equations and d^2 = 0", structure_equations},
    {"standard-structure", "e56 is pure W4plus with rank 4", standard_structure},
    {"itv-sweeps", "family sweeps stay inside their classes", itv_sweeps},
    {"genericity", "generic planes have all seven components and rank 6", genericity},
    {"projector-algebra", "projectors are complete and orthogonal; torsion is orbit-tangent", projector_algebra},
    {"integrability", "Frobenius tests agree with (m,n) type and rho", integrability},
    {"moment-theorem", "moment images of the families", moment_theorem},
    {"stabilizer", "coupled stabilizer keeps e56 in W4plus", stabilizer},
};

} // namespace

bool VerifyReport::passed() const {
    return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.passed; });
}

VerifyReport run_verification(const VerifyConfig& config) {
    VerifyReport report{config, {}};
    const Context ctx{config, config.algebra.cast<double>(), levi_civita(config.algebra),
                      levi_civita(config.algebra).cast<double>()};
    for (const auto& c : kCriteria) {
        CriterionResult r{c.id, c.title, false, "", 0.0};
        const auto start = Clock::now();
        try {
            r.passed = c.run(ctx, r.detail);
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("error: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        report.criteria.push_back(std::move(r));
    }
    return report;
}

std::string verify_text(const VerifyReport& r) {
    std::ostringstream os;
    os << "# itv verify: algebra=" << r.config.algebra_source << " tol=" << r.config.tol << " seed=" << r.config.seed
       << " threads=" << r.config.threads << " sweep_samples=" << r.config.sweep_samples
       << " generic_samples=" << r.config.generic_samples << " uniform_samples=" << r.config.uniform_samples << '\n';
    int failed = 0;
    for (const auto& c : r.criteria) {
        os << (c.passed ? "PASS " : "FAIL ") << c.id << ": " << c.title << " -- " << c.detail
           << fmt(" [%.2f s]", c.seconds) << '\n';
        failed += !c.passed;
    }
    os << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
    return os.str();
}

Json verify_json(const VerifyReport& r) {
    Json criteria = Json::array();
    for (const auto& c : r.criteria) {
        criteria.push_back(
            {{"id", c.id}, {"title", c.title}, {"passed", c.passed}, {"detail", c.detail}, {"seconds", c.seconds}});
    }
    const Json config = {{"algebra", r.config.algebra_source},     {"tol", r.config.tol},
                         {"seed", r.config.seed},                  {"threads", r.config.threads},
                         {"sweep_samples", r.config.sweep_samples}, {"generic_samples", r.config.generic_samples},
                         {"uniform_samples", r.config.uniform_samples}};
    return {{"config", config}, {"criteria", criteria}, {"passed", r.passed()}};
}

} // namespace itv
