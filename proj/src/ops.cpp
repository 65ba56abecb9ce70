#include "itv/ops.hpp"

#include <cmath>

namespace itv {

namespace {

constexpr double kGaugeThreshold = 1e-6;
constexpr double kDependenceThreshold = 1e-9;

Form wedge_vectors(const Vector6& a, const Vector6& b) {
    Form out(2);
    for (int j = 0; j < kDim; ++j) {
        for (int k = j + 1; k < kDim; ++k) {
            out.add(MultiIndex{j + 1, k + 1}, a(j) * b(k) - a(k) * b(j));
        }
    }
    return out;
}

Eigen::Matrix<double, kDim, 2> plane_basis(const OpsPoint& p) {
    Eigen::Matrix<double, kDim, 2> m;
    m.col(0) = p.v1();
    m.col(1) = p.v2();
    return m;
}

Matrix6 k_projector() {
    Matrix6 p = Matrix6::Zero();
    p.diagonal() << 1, 1, 1, 1, 0, 0;
    return p;
}

int count_unit_singular_values(const Eigen::Matrix<double, kDim, 2>& m, double tol) {
    Eigen::JacobiSVD<Eigen::Matrix<double, kDim, 2>> svd(m);
    int count = 0;
    for (int i = 0; i < 2; ++i) {
        if (svd.singularValues()(i) >= 1.0 - tol) ++count;
    }
    return count;
}

} // namespace

Vec6 to_covector(const Vector6& v) {
    Vec6 out{};
    for (int i = 0; i < kDim; ++i) out[static_cast<std::size_t>(i)] = v(i);
    return out;
}

Vector6 to_vector(const Vec6& v) {
    Vector6 out;
    for (int i = 0; i < kDim; ++i) out(i) = v[static_cast<std::size_t>(i)];
    return out;
}

Matrix6 form_to_matrix(const Form& a) {
    if (a.grade() != 2) throw GradeMismatch("form_to_matrix expects a 2-form");
    Matrix6 m = Matrix6::Zero();
    for (const auto& [idx, c] : a.terms()) {
        const auto ij = idx.indices();
        m(ij[0] - 1, ij[1] - 1) = c;
        m(ij[1] - 1, ij[0] - 1) = -c;
    }
    return m;
}

Form matrix_to_form(const Matrix6& m) {
    Form out(2);
    for (int j = 0; j < kDim; ++j) {
        for (int k = j + 1; k < kDim; ++k) out.add(MultiIndex{j + 1, k + 1}, 0.5 * (m(j, k) - m(k, j)));
    }
    return out;
}

const Form& beta1() {
    static const Form f = Form::basis({1, 2}) + Form::basis({3, 4});
    return f;
}

const Form& beta2() {
    static const Form f = Form::basis({1, 3}) - Form::basis({2, 4});
    return f;
}

const Form& beta3() {
    static const Form f = Form::basis({1, 4}) + Form::basis({2, 3});
    return f;
}

Vector6 apply_j1(const Vector6& v) {
    Vector6 out = Vector6::Zero();
    out(1) = v(0);
    out(0) = -v(1);
    out(3) = v(2);
    out(2) = -v(3);
    return out;
}

// ---------------------------------------------------------------------------

OpsPoint::OpsPoint(Vector6 v1, Vector6 v2) : v1_(std::move(v1)), v2_(std::move(v2)), plucker_(wedge_vectors(v1_, v2_)) {}

OpsPoint OpsPoint::from_pair(const Vector6& a, const Vector6& b) {
    const double na = a.norm();
    if (na <= kDependenceThreshold) throw ZeroForm("first vector of the pair is zero");
    const Vector6 u1 = a / na;
    Vector6 u2 = b - u1.dot(b) * u1;
    u2 -= u1.dot(u2) * u1;
    const double nb = u2.norm();
    if (nb <= kDependenceThreshold * std::max(1.0, b.norm())) throw ZeroForm("pair does not span a plane");
    return OpsPoint(u1, u2 / nb);
}

OpsPoint OpsPoint::gauge_rotated(double angle) const {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return OpsPoint(c * v1_ + s * v2_, -s * v1_ + c * v2_);
}

OpsPoint OpsPoint::transformed(const Matrix6& g) const { return from_pair(g * v1_, g * v2_); }

OpsPoint OpsPoint::reversed() const { return OpsPoint(v2_, v1_); }

OpsPoint from_plucker(const Form& a, double tol) {
    if (a.grade() != 2) throw GradeMismatch("an OPS is given by a 2-form");
    const double n = norm(a);
    if (n == 0.0) throw ZeroForm("zero 2-form does not define a plane");
    if (!is_simple(a, tol)) throw NotSimple("2-form " + to_literal(a) + " is not simple");
    const Matrix6 omega = form_to_matrix(a) / n;
    // For a unit simple form w = v1^v2, -Omega^2 projects onto the plane.
    const Matrix6 projector = -omega * omega;
    for (int k = 0; k < kDim; ++k) {
        const Vector6 column = projector.col(k);
        if (column.norm() > kGaugeThreshold) {
            const Vector6 v1 = column.normalized();
            // i_{v1}(v1^v2) = v2, i.e. v2_k = sum_j v1_j Omega_jk.
            const Vector6 v2 = omega.transpose() * v1;
            return OpsPoint::from_pair(v1, v2);
        }
    }
    throw NotSimple("2-form " + to_literal(a) + " has no plane");
}

// ---------------------------------------------------------------------------

Matrix6 Splitting::frame() const {
    Matrix6 f;
    f.row(0) = v_frame[0].transpose();
    f.row(1) = v_frame[1].transpose();
    for (int i = 0; i < 4; ++i) f.row(2 + i) = h_frame[static_cast<std::size_t>(i)].transpose();
    return f;
}

Splitting adapted_splitting(const OpsPoint& p) {
    Splitting s;
    s.v_frame = {p.v1(), p.v2()};
    s.p_v = p.v1() * p.v1().transpose() + p.v2() * p.v2().transpose();
    s.p_h = Matrix6::Identity() - s.p_v;

    std::array<bool, kDim> used{};
    Matrix6 residual = s.p_h;
    for (auto& h : s.h_frame) {
        int best = -1;
        double best_norm = -1.0;
        for (int k = 0; k < kDim; ++k) {
            const double nk = residual.col(k).norm();
            if (!used[static_cast<std::size_t>(k)] && nk > best_norm) {
                best = k;
                best_norm = nk;
            }
        }
        used[static_cast<std::size_t>(best)] = true;
        Vector6 w = residual.col(best);
        // Second pass against the accepted vectors for orthogonality to rounding.
        for (const auto* prev = s.h_frame.data(); prev != &h; ++prev) w -= prev->dot(w) * *prev;
        for (int j = 0; j < 2; ++j) w -= s.v_frame[static_cast<std::size_t>(j)].dot(w) * s.v_frame[static_cast<std::size_t>(j)];
        h = w.normalized();
        residual -= h * (h.transpose() * residual);
    }
    if (s.frame().determinant() < 0) {
        s.h_frame[3] = -s.h_frame[3];
        s.h_orientation = -1;
    }
    return s;
}

MNType mn_type(const OpsPoint& p, double tol) {
    const auto basis = plane_basis(p);
    const Matrix6 pk = k_projector();
    const Matrix6 pk_perp = Matrix6::Identity() - pk;
    return {count_unit_singular_values(pk * basis, tol), count_unit_singular_values(pk_perp * basis, tol)};
}

RhoProjection rho_projection(const OpsPoint& p) {
    const double scale = 1.0 / std::sqrt(2.0);
    return {inner(p.plucker(), beta2()) * scale, inner(p.plucker(), beta3()) * scale};
}

bool is_j1_invariant(const OpsPoint& p, double tol) {
    const Matrix6 pk_perp = Matrix6::Identity() - k_projector();
    if ((pk_perp * p.v1()).norm() > tol || (pk_perp * p.v2()).norm() > tol) return false;
    const Matrix6 pv = p.v1() * p.v1().transpose() + p.v2() * p.v2().transpose();
    for (const Vector6* v : {&p.v1(), &p.v2()}) {
        const Vector6 jv = apply_j1(*v);
        if ((jv - pv * jv).norm() > tol) return false;
    }
    return true;
}

OpsPoint sample_uniform(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (;;) {
        Vector6 a;
        Vector6 b;
        for (int i = 0; i < kDim; ++i) a(i) = gauss(rng);
        for (int i = 0; i < kDim; ++i) b(i) = gauss(rng);
        if (a.norm() < 1e-6) continue;
        const Vector6 u1 = a.normalized();
        if ((b - u1.dot(b) * u1).norm() < 1e-6) continue;
        return OpsPoint::from_pair(a, b);
    }
}

} // namespace itv
