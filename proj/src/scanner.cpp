#include "itv/scanner.hpp"

#include <boost/math/distributions/binomial.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

namespace itv {

namespace detail {
extern const char* const kItvTableJson;
}

namespace {

constexpr double kPi = 3.14159265358979323846;

struct NamedFamily {
    std::string_view name;
    Family variant;
    int sign;
};

constexpr std::array<NamedFamily, 10> kNames{{
    {"standard-vertical", Family::StandardVertical, 0},
    {"standard-vertical-plus", Family::StandardVertical, 1},
    {"standard-vertical-minus", Family::StandardVertical, -1},
    {"horizontal-gr2k", Family::HorizontalGr2K, 0},
    {"geodesic-spheres", Family::GeodesicSpheres, 0},
    {"geodesic-spheres-plus", Family::GeodesicSpheres, 1},
    {"geodesic-spheres-minus", Family::GeodesicSpheres, -1},
    {"type11", Family::Type11, 0},
    {"vslice", Family::VSlice, 0},
    {"generic", Family::Generic, 0},
}};

std::string_view base_name(Family f) {
    for (const auto& n : kNames) {
        if (n.variant == f && n.sign == 0) return n.name;
    }
    return "?";
}

std::mt19937_64 point_rng(std::uint64_t seed, int index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index)};
    return std::mt19937_64(seq);
}

// k-th grid digit of the index mapped to [0, 1], both ends included.
double grid_fraction(int index, int digit, int grid) {
    if (grid <= 1) return 0.0;
    int k = index;
    for (int i = 0; i < digit; ++i) k /= grid;
    return static_cast<double>(k % grid) / (grid - 1);
}

Vector6 gaussian_in_k(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vector6 v = Vector6::Zero();
    do {
        for (int i = 0; i < 4; ++i) v(i) = g(rng);
    } while (v.norm() < 1e-6);
    return v.normalized();
}

Vector6 unit_in_kperp(double phase) {
    Vector6 v = Vector6::Zero();
    v(4) = std::cos(phase);
    v(5) = std::sin(phase);
    return v;
}

double uniform_angle(std::mt19937_64& rng, double hi) { return std::uniform_real_distribution<double>(0.0, hi)(rng); }

// Alternating families walk the grid once per sign.
int pick_sign(int sign, int& index) {
    if (sign != 0) return sign;
    const int s = index % 2 == 0 ? 1 : -1;
    index /= 2;
    return s;
}

OpsPoint standard_vertical(const FamilySpec& f, int index) {
    const int s = pick_sign(f.sign, index);
    return OpsPoint::from_pair(Vector6::Unit(4), s * Vector6::Unit(5));
}

OpsPoint geodesic_sphere(const FamilySpec& f, int index, std::mt19937_64& rng) {
    const int s = pick_sign(f.sign, index);
    Vector6 u;
    if (f.random_angles) {
        u = gaussian_in_k(rng);
    } else {
        const double theta = 0.5 * kPi * grid_fraction(index, 0, f.grid);
        const double p1 = uniform_angle(rng, 2 * kPi);
        const double p2 = uniform_angle(rng, 2 * kPi);
        u = Vector6::Zero();
        u << std::cos(theta) * std::cos(p1), std::cos(theta) * std::sin(p1), std::sin(theta) * std::cos(p2),
            std::sin(theta) * std::sin(p2), 0, 0;
    }
    return OpsPoint::from_pair(u, s * apply_j1(u));
}

OpsPoint horizontal(const FamilySpec& f, int index, std::mt19937_64& rng) {
    const Vector6 u = gaussian_in_k(rng);
    if (f.random_angles) {
        for (;;) {
            const Vector6 w = gaussian_in_k(rng);
            if ((w - u.dot(w) * u).norm() > 1e-6) return OpsPoint::from_pair(u, w);
        }
    }
    // the plane turns from <u, J1 u> through a totally real plane to <u, -J1 u>
    const Vector6 ju = apply_j1(u);
    Vector6 h;
    do {
        h = gaussian_in_k(rng);
        h -= u.dot(h) * u + ju.dot(h) * ju;
    } while (h.norm() < 1e-6);
    h.normalize();
    const double theta = kPi * grid_fraction(index, 0, f.grid);
    return OpsPoint::from_pair(u, std::cos(theta) * ju + std::sin(theta) * h);
}

OpsPoint type11(const FamilySpec& f, int index, std::mt19937_64& rng) {
    const Vector6 u = gaussian_in_k(rng);
    const double phi = f.random_angles ? uniform_angle(rng, 2 * kPi)
                                       : 2 * kPi * static_cast<double>(index % std::max(1, f.grid)) / std::max(1, f.grid);
    return OpsPoint::from_pair(u, unit_in_kperp(phi));
}

// (u c1 + e s1) ^ ((u c3 + J1 u s3) c2 + d s2)
OpsPoint vslice(const FamilySpec& f, int index, std::mt19937_64& rng) {
    const Vector6 u = gaussian_in_k(rng);
    const Vector6 e = unit_in_kperp(uniform_angle(rng, 2 * kPi));
    const Vector6 d = unit_in_kperp(uniform_angle(rng, 2 * kPi));
    double a1 = f.random_angles ? uniform_angle(rng, kPi) : kPi * grid_fraction(index, 0, f.grid);
    double a2 = f.random_angles ? uniform_angle(rng, kPi) : kPi * grid_fraction(index, 1, f.grid);
    const double a3 = uniform_angle(rng, 2 * kPi);
    for (;;) {
        const Vector6 w1 = u * std::cos(a1) + e * std::sin(a1);
        const Vector6 w2 = (u * std::cos(a3) + apply_j1(u) * std::sin(a3)) * std::cos(a2) + d * std::sin(a2);
        if ((w2 - w1.dot(w2) * w1).norm() > 1e-6) return OpsPoint::from_pair(w1, w2);
        a1 = uniform_angle(rng, kPi);
        a2 = uniform_angle(rng, kPi);
    }
}

std::vector<Component> parse_components(const nlohmann::json& list) {
    std::vector<Component> out;
    for (const auto& name : list) out.push_back(component_from_name(name.get<std::string>()));
    return out;
}

} // namespace

std::string family_name(const FamilySpec& f) {
    for (const auto& n : kNames) {
        if (n.variant == f.variant && n.sign == f.sign) return std::string(n.name);
    }
    return std::string(base_name(f.variant));
}

FamilySpec family_from_name(std::string_view name) {
    for (const auto& n : kNames) {
        if (n.name == name) {
            FamilySpec f;
            f.variant = n.variant;
            f.sign = n.sign;
            return f;
        }
    }
    throw ParseError("unknown family '" + std::string(name) + "'");
}

OpsPoint generate_point(const FamilySpec& f, int index) {
    auto rng = point_rng(f.seed, index);
    switch (f.variant) {
    case Family::StandardVertical: return standard_vertical(f, index);
    case Family::HorizontalGr2K: return horizontal(f, index, rng);
    case Family::GeodesicSpheres: return geodesic_sphere(f, index, rng);
    case Family::Type11: return type11(f, index, rng);
    case Family::VSlice: return vslice(f, index, rng);
    case Family::Generic: return sample_uniform(rng);
    }
    throw InternalInvariantViolation("unhandled family");
}

std::vector<OpsPoint> generate(const FamilySpec& f) {
    std::vector<OpsPoint> out;
    out.reserve(static_cast<std::size_t>(std::max(0, f.count)));
    for (int i = 0; i < f.count; ++i) out.push_back(generate_point(f, i));
    return out;
}

const std::string& itv_table_json() {
    static const std::string text(detail::kItvTableJson);
    return text;
}

std::optional<std::vector<Component>> expected_superset(Family f) {
    static const nlohmann::json table = nlohmann::json::parse(itv_table_json());
    const auto& entry = table.at("families").at(std::string(base_name(f)));
    if (entry.is_null()) return std::nullopt;
    return parse_components(entry);
}

MomentPoint moment_map(const OpsPoint& p) {
    const Form& w = p.plucker();
    return {w.coeff(MultiIndex{1, 2}), w.coeff(MultiIndex{3, 4}), w.coeff(MultiIndex{5, 6})};
}

// ---------------------------------------------------------------------------

int SweepReport::total() const {
    int n = 0;
    for (const auto& [label, count] : histogram) n += count;
    return n;
}

SweepReport sweep(const FamilySpec& f, const ConnectionTable<double>& c, double tol, unsigned threads) {
    SweepReport report;
    report.family = f;
    report.tol = tol;
    const int n = std::max(0, f.count);
    report.points.resize(static_cast<std::size_t>(n));

    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(1, n)));

    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&](unsigned worker) {
        try {
            for (int i = static_cast<int>(worker); i < n; i += static_cast<int>(threads)) {
                const auto p = generate_point(f, i);
                const auto t = intrinsic_torsion(p, c);
                auto& rec = report.points[static_cast<std::size_t>(i)];
                rec.plucker = p.plucker();
                rec.moment = moment_map(p);
                rec.signature = ClassSignature(naveira_project(t), t.norm(), tol);
                rec.rank = tau_rank(t, tol);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < threads; ++w) pool.emplace_back(work, w);
        work(0);
    }
    if (failure) std::rethrow_exception(failure);

    const auto allowed = expected_superset(f.variant);
    std::string expected_label = "any";
    if (allowed) {
        expected_label.clear();
        for (Component comp : *allowed) {
            if (!expected_label.empty()) expected_label += '|';
            expected_label += component_name(comp);
        }
    }
    for (int i = 0; i < n; ++i) {
        const auto& rec = report.points[static_cast<std::size_t>(i)];
        ++report.histogram[rec.signature.label()];
        if (allowed && !rec.signature.subset_of(*allowed)) {
            report.violations.push_back({i, rec.plucker, rec.signature.label(), expected_label});
        }
    }
    return report;
}

std::string moment_csv(const SweepReport& r) {
    std::string out = "x,y,z,signature,rank\n";
    char buf[128];
    for (const auto& rec : r.points) {
        std::snprintf(buf, sizeof buf, "%.12e,%.12e,%.12e,", rec.moment.x, rec.moment.y, rec.moment.z);
        out += buf;
        out += rec.signature.label();
        out += ',';
        out += std::to_string(rec.rank);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------

bool MomentImageReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

double binomial_two_sided_p(int k, int n) {
    if (n <= 0) return 1.0;
    const boost::math::binomial_distribution<double> dist(n, 0.5);
    const int tail = std::min(k, n - k);
    return std::min(1.0, 2.0 * boost::math::cdf(dist, tail));
}

MomentImageReport verify_moment_images(const ConnectionTable<double>& c, double tol, const MomentCounts& counts,
                                       std::uint64_t seed, unsigned threads) {
    MomentImageReport report;
    auto cloud = [&](Family variant, int count) {
        FamilySpec f;
        f.variant = variant;
        f.count = count;
        f.seed = seed;
        return sweep(f, c, kDefaultClassTol, threads);
    };
    char buf[256];

    {
        const auto r = cloud(Family::StandardVertical, counts.standard_vertical);
        double worst = 0.0;
        bool up = false, down = false;
        for (const auto& p : r.points) {
            const auto& m = p.moment;
            worst = std::max({worst, std::abs(m.x), std::abs(m.y), std::abs(std::abs(m.z) - 1.0)});
            up = up || m.z > 0;
            down = down || m.z < 0;
        }
        std::snprintf(buf, sizeof buf, "max deviation from (0,0,+-1) %.3e, both vertices %s", worst,
                      up && down ? "hit" : "missed");
        report.checks.push_back({"standard-vertical images are the vertices (0,0,+-1)", worst <= tol && up && down, buf});
    }
    {
        const auto r = cloud(Family::GeodesicSpheres, counts.geodesic_spheres);
        double worst = 0.0;
        for (const auto& p : r.points) {
            const auto& m = p.moment;
            worst = std::max({worst, std::abs(m.z), std::abs(std::abs(m.x + m.y) - 1.0), std::max(0.0, -m.x * m.y)});
        }
        std::snprintf(buf, sizeof buf, "max violation of z=0, |x+y|=1, xy>=0: %.3e", worst);
        report.checks.push_back({"geodesic-spheres images lie on segments AB and DE", worst <= tol, buf});
    }
    {
        const auto r = cloud(Family::HorizontalGr2K, counts.horizontal);
        double worst_z = 0.0, worst_l1 = 0.0;
        for (const auto& p : r.points) {
            worst_z = std::max(worst_z, std::abs(p.moment.z));
            worst_l1 = std::max(worst_l1, std::abs(p.moment.x) + std::abs(p.moment.y));
        }
        std::snprintf(buf, sizeof buf, "max |z| %.3e, max |x|+|y| %.12f", worst_z, worst_l1);
        report.checks.push_back(
            {"horizontal-gr2k images fill the square z=0, |x|+|y|<=1", worst_z <= tol && worst_l1 <= 1.0 + 1e-9, buf});
    }
    {
        const auto r = cloud(Family::Type11, counts.type11);
        double worst = 0.0;
        for (const auto& p : r.points) worst = std::max(worst, p.moment.l1());
        std::snprintf(buf, sizeof buf, "max |x|+|y|+|z| %.3e", worst);
        report.checks.push_back({"type11 images are the origin", worst <= 1e-12, buf});
    }
    {
        const auto r = cloud(Family::VSlice, counts.vslice);
        double worst = 0.0;
        int up = 0, down = 0;
        for (const auto& p : r.points) {
            worst = std::max(worst, p.moment.l1());
            if (p.moment.z > tol) ++up;
            if (p.moment.z < -tol) ++down;
        }
        const double pval = binomial_two_sided_p(up, up + down);
        std::snprintf(buf, sizeof buf, "max |x|+|y|+|z| %.12f, z>0: %d, z<0: %d, two-sided p = %.4f", worst, up, down,
                      pval);
        report.checks.push_back({"vslice images are z-symmetric inside the octahedron",
                                 worst <= 1.0 + 1e-9 && up > 0 && down > 0 && pval >= 0.05, buf});
    }
    {
        FamilySpec f;
        f.variant = Family::Generic;
        f.count = counts.uniform;
        f.seed = seed;
        double worst = 0.0;
        for (int i = 0; i < f.count; ++i) worst = std::max(worst, moment_map(generate_point(f, i)).l1());
        std::snprintf(buf, sizeof buf, "%d samples, max |x|+|y|+|z| %.12f", f.count, worst);
        report.checks.push_back({"uniform samples lie in the octahedron", worst <= 1.0 + 1e-9, buf});
    }
    return report;
}

// ---------------------------------------------------------------------------

Matrix6 sample_stabilizer_element(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
    using Matrix4 = Eigen::Matrix4d;
    auto k_block = [](const Form& a) -> Matrix4 { return form_to_matrix(a).topLeftCorner<4, 4>(); };

    // anti-self-dual generators square to -1 and anticommute
    const std::array<Matrix4, 3> asd{k_block(Form::basis({1, 2}) - Form::basis({3, 4})),
                                     k_block(Form::basis({1, 3}) + Form::basis({2, 4})),
                                     k_block(Form::basis({1, 4}) - Form::basis({2, 3}))};
    Matrix4 a = Matrix4::Zero();
    for (const auto& m : asd) a += gauss(rng) * m;
    const double r = std::sqrt(-(a * a).trace() / 4.0);
    const double phi = angle(rng);
    const Matrix4 su2 = r > 0 ? Matrix4(std::cos(phi) * Matrix4::Identity() + std::sin(phi) / r * a)
                              : Matrix4(Matrix4::Identity());

    const double t = angle(rng);
    const Matrix4 j = k_block(beta1());
    const Matrix4 turn = std::cos(t) * Matrix4::Identity() + std::sin(t) * j;

    Matrix6 g = Matrix6::Identity();
    g.topLeftCorner<4, 4>() = su2 * turn;

    // angle by which g turns beta2 towards beta3
    const Matrix6 b2 = g * form_to_matrix(beta2()) * g.transpose();
    const double theta = std::atan2((b2.cwiseProduct(form_to_matrix(beta3()))).sum(),
                                    (b2.cwiseProduct(form_to_matrix(beta2()))).sum());
    g(4, 4) = std::cos(theta);
    g(5, 4) = std::sin(theta);
    g(4, 5) = -std::sin(theta);
    g(5, 5) = std::cos(theta);
    return g;
}

} // namespace itv
