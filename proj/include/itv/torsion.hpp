#pragma once

// Intrinsic torsion of an orthogonal almost-product structure R^6 = V + H
// (dim V = 2, dim H = 4) on a Lie algebra with an invariant metric.
//
// For the structure defined by the unit simple form w, the intrinsic torsion
// is tau = nabla w. Metricity forces every nabla_X w into V* ^ H*, so tau is
// stored in the adapted frame as tau[a][v][h] = (nabla_{f_a} w)(v_v, h_h) with
// f = (v1, v2, h1..h4). Slot order is (direction, V factor, H factor).
//
// Components (p = 2, q = 4):
//   direction in V, block V (x) V (x) H, split over the two V slots:
//     W1 antisymmetric, W2 traceless symmetric, W3 trace;
//   direction in H, block H (x) V (x) H, reordered (no sign) to V (x) H (x) H
//   and split over the two H slots:
//     W4plus / W4minus self-dual / anti-self-dual antisymmetric part,
//     W5 traceless symmetric, W6 trace.
// Self-duality on H refers to the orientation of (h1..h4) inherited from the
// positively oriented full frame.

#include "itv/nilalgebra.hpp"
#include "itv/ops.hpp"

#include <array>
#include <bitset>
#include <string>
#include <string_view>
#include <vector>

namespace itv {

inline constexpr int kReducedSize = kDim * 2 * 4;
using ReducedTensor = std::array<double, kReducedSize>;

inline constexpr std::size_t reduced_index(int direction, int v, int h) {
    return static_cast<std::size_t>((direction * 2 + v) * 4 + h);
}

double tensor_norm(const ReducedTensor& t);

struct TorsionTensor {
    CoTensorField<double> raw;
    ReducedTensor reduced{};
    /// Norm of the Lambda^2 V + Lambda^2 H part of raw, which must vanish.
    double residual = 0.0;
    Splitting frame;

    double at(int direction, int v, int h) const { return reduced[reduced_index(direction, v, h)]; }
    double norm() const { return tensor_norm(reduced); }
};

/// Relative bound on the orbit-tangency residual; exceeding it throws
/// InternalInvariantViolation.
inline constexpr double kResidualTol = 1e-9;

TorsionTensor intrinsic_torsion(const OpsPoint& p, const ConnectionTable<double>& c);

enum class Component { W1, W2, W3, W4plus, W4minus, W5, W6 };

inline constexpr std::array<Component, 7> kAllComponents{Component::W1, Component::W2, Component::W3,
                                                         Component::W4plus, Component::W4minus,
                                                         Component::W5, Component::W6};

std::string_view component_name(Component c);
Component component_from_name(std::string_view name);

/// Orthogonal projection of a reduced tensor onto one component.
ReducedTensor project(Component c, const ReducedTensor& t);

/// Dimension of each component inside the 48-dimensional reduced space.
int component_dimension(Component c);

struct NaveiraComponents {
    std::array<double, 7> norms{};
    std::array<ReducedTensor, 7> parts{};

    double norm(Component c) const { return norms[static_cast<std::size_t>(c)]; }
    const ReducedTensor& part(Component c) const { return parts[static_cast<std::size_t>(c)]; }
};

NaveiraComponents naveira_project(const ReducedTensor& t);
NaveiraComponents naveira_project(const TorsionTensor& t);

inline constexpr double kDefaultClassTol = 1e-7;

/// Set of nonvanishing components. A label is active iff its norm exceeds
/// tol * max(1, |tau|).
class ClassSignature {
public:
    ClassSignature() = default;
    ClassSignature(const NaveiraComponents& parts, double tau_norm, double tol);

    bool active(Component c) const { return bits_.test(static_cast<std::size_t>(c)); }
    std::vector<Component> active_components() const;
    double norm(Component c) const { return norms_[static_cast<std::size_t>(c)]; }
    const std::array<double, 7>& norms() const { return norms_; }
    double tol() const { return tol_; }
    unsigned long bits() const { return bits_.to_ulong(); }

    /// Labels joined with '|', e.g. "W3|W5"; "none" for the empty set.
    std::string label() const;

    bool subset_of(const std::vector<Component>& allowed) const;
    friend bool operator==(const ClassSignature& a, const ClassSignature& b) { return a.bits_ == b.bits_; }

private:
    std::bitset<7> bits_;
    std::array<double, 7> norms_{};
    double tol_ = kDefaultClassTol;
};

ClassSignature classify(const OpsPoint& p, const ConnectionTable<double>& c, double tol = kDefaultClassTol);

/// Rows: directions in the adapted frame; columns: the 8 entries of V* (x) H*.
Eigen::Matrix<double, kDim, 8> tau_matrix(const TorsionTensor& t);

/// Numerical rank of tau as a map T -> V* (x) H*, singular values above
/// tol * max(1, |tau|).
int tau_rank(const TorsionTensor& t, double tol = kDefaultClassTol);

/// Orthonormal basis (standard coordinates) of the kernel of tau.
std::vector<Vector6> tau_kernel(const TorsionTensor& t, double tol = kDefaultClassTol);

struct AlternationResidual {
    double form = 0.0;       // |alt(nabla w) - dw|
    double complement = 0.0; // |alt(nabla *w) - d*w|
};

AlternationResidual alternation_check(const OpsPoint& p, const ConnectionTable<double>& c,
                                      const StructureTable<double>& s);

/// H = <h1..h4> is integrable iff d(v^1 ^ v^2) = 0.
bool frobenius_integrable_h(const OpsPoint& p, const StructureTable<double>& s, double tol = kDefaultClassTol);
/// V = <v1, v2> is integrable iff d(*(v^1 ^ v^2)) = 0.
bool frobenius_integrable_v(const OpsPoint& p, const StructureTable<double>& s, double tol = kDefaultClassTol);

/// Rebuilds the T* (x) Lambda^2 tensor (standard frame) from a reduced tensor.
CoTensorField<double> reduced_to_raw(const ReducedTensor& t, const Splitting& frame);

/// For each component, whether it contributes to dw (alternation of tau) or
/// to d*w (alternation of *tau). Decided by pushing random elements of the
/// component through both alternations.
struct DifferentialVisibility {
    std::array<bool, 7> via_form{};
    std::array<bool, 7> via_complement{};
    bool visible(Component c) const {
        return via_form[static_cast<std::size_t>(c)] || via_complement[static_cast<std::size_t>(c)];
    }
};

DifferentialVisibility differential_visibility(const Splitting& frame, unsigned seed = 7);

} // namespace itv
