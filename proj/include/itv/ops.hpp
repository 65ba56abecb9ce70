#pragma once

// Orthogonal almost-product structures on R^6 = V + H with dim V = 2, encoded
// as oriented 2-planes (points of Gr_2(R^6)). V is the plane, H its
// orthogonal complement. K = <e^1..e^4> is the kernel of d on 1-forms of the
// Iwasawa algebra and K^perp = <e^5, e^6> is tangent to the toric fibre.

#include "itv/exterior.hpp"

#include <Eigen/Dense>

#include <array>
#include <compare>
#include <random>

namespace itv {

using Vector6 = Eigen::Matrix<double, kDim, 1>;
using Matrix6 = Eigen::Matrix<double, kDim, kDim>;

Vec6 to_covector(const Vector6& v);
Vector6 to_vector(const Vec6& v);

/// Antisymmetric matrix M with M(j,k) = a(e_j, e_k) for a 2-form a.
Matrix6 form_to_matrix(const Form& a);
Form matrix_to_form(const Matrix6& m);

/// The three self-dual forms on K: beta1 = e12+e34, beta2 = e13+e42, beta3 = e14+e23.
const Form& beta1();
const Form& beta2();
const Form& beta3();

/// Complex structure on K associated with beta1: e1 -> e2 -> -e1, e3 -> e4 -> -e3;
/// zero on K^perp.
Vector6 apply_j1(const Vector6& v);

inline constexpr double kDefaultIntersectionTol = 1e-9;

/// An oriented 2-plane given by an orthonormal pair (v1, v2) and its unit
/// Pluecker form v1 ^ v2.
class OpsPoint {
public:
    /// Orthonormalizes a linearly independent pair, keeping the orientation
    /// of (a, b). Throws ZeroForm when the pair is (numerically) dependent.
    static OpsPoint from_pair(const Vector6& a, const Vector6& b);

    const Vector6& v1() const { return v1_; }
    const Vector6& v2() const { return v2_; }
    const Form& plucker() const { return plucker_; }

    /// Same plane, basis rotated by `angle` inside it.
    OpsPoint gauge_rotated(double angle) const;
    /// Image under an orthogonal map acting on 1-forms.
    OpsPoint transformed(const Matrix6& g) const;
    /// Same plane with opposite orientation.
    OpsPoint reversed() const;

private:
    OpsPoint(Vector6 v1, Vector6 v2);

    Vector6 v1_;
    Vector6 v2_;
    Form plucker_;
};

/// Recovers the oriented pair from a simple 2-form. The S^1 gauge is fixed by
/// taking v1 along the projection of the first standard basis vector whose
/// projection onto the plane has norm above 1e-6; then v2 = i_{v1} w for the
/// normalized form w.
OpsPoint from_plucker(const Form& a, double tol = kDefaultSimpleTol);

/// Adapted frame for V + H. Rows of frame() are v1, v2, h1, h2, h3, h4 and form
/// a positively oriented orthonormal basis.
struct Splitting {
    Matrix6 p_v;
    Matrix6 p_h;
    std::array<Vector6, 2> v_frame;
    std::array<Vector6, 4> h_frame;
    /// -1 when h4 had to be flipped to make the full frame positive.
    int h_orientation = 1;

    Matrix6 frame() const;
};

/// H-frame by pivoted Gram-Schmidt over the standard basis (at each step the
/// basis vector with the largest residual is taken, lowest index on ties).
Splitting adapted_splitting(const OpsPoint& p);

/// (dim P cap K, dim P cap K^perp).
struct MNType {
    int m = 0;
    int n = 0;
    auto operator<=>(const MNType&) const = default;
};

MNType mn_type(const OpsPoint& p, double tol = kDefaultIntersectionTol);

/// Coordinates of the orthogonal projection of the Pluecker form onto the
/// plane <beta2, beta3>, in the orthonormal basis beta2/|beta2|, beta3/|beta3|.
struct RhoProjection {
    double beta2 = 0.0;
    double beta3 = 0.0;
    double norm() const { return std::hypot(beta2, beta3); }
};

RhoProjection rho_projection(const OpsPoint& p);

/// True iff the plane lies in K (within tol) and is mapped to itself by J1.
bool is_j1_invariant(const OpsPoint& p, double tol = kDefaultIntersectionTol);

/// Haar-uniform oriented 2-plane from two Gaussian vectors.
OpsPoint sample_uniform(std::mt19937_64& rng);

} // namespace itv
