#include "itv/torsion.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace itv {

namespace {

// Levi-Civita symbol on four indices.
int epsilon4(int a, int b, int c, int d) {
    const int idx[4] = {a, b, c, d};
    int sign = 1;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            if (idx[i] == idx[j]) return 0;
            if (idx[i] > idx[j]) sign = -sign;
        }
    }
    return sign;
}

Matrix6 direction_matrix(const CoTensorField<double>& raw, const Vector6& direction) {
    Matrix6 w = Matrix6::Zero();
    for (int k = 0; k < kDim; ++k) {
        if (direction(k) != 0.0) w += direction(k) * form_to_matrix(raw.components[static_cast<std::size_t>(k)]);
    }
    return w;
}

void project_vertical_block(Component c, const ReducedTensor& t, ReducedTensor& out) {
    for (int h = 0; h < 4; ++h) {
        const double trace = 0.5 * (t[reduced_index(0, 0, h)] + t[reduced_index(1, 1, h)]);
        for (int a = 0; a < 2; ++a) {
            for (int v = 0; v < 2; ++v) {
                const double x = t[reduced_index(a, v, h)];
                const double y = t[reduced_index(v, a, h)];
                const double delta = a == v ? 1.0 : 0.0;
                double value = 0.0;
                switch (c) {
                case Component::W1: value = 0.5 * (x - y); break;
                case Component::W2: value = 0.5 * (x + y) - delta * trace; break;
                case Component::W3: value = delta * trace; break;
                default: break;
                }
                out[reduced_index(a, v, h)] = value;
            }
        }
    }
}

// Horizontal block read as C[v][p][h] = t[2 + p][v][h].
void project_horizontal_block(Component c, const ReducedTensor& t, ReducedTensor& out) {
    auto at = [&](int v, int p, int h) { return t[reduced_index(2 + p, v, h)]; };
    for (int v = 0; v < 2; ++v) {
        double trace = 0.0;
        for (int p = 0; p < 4; ++p) trace += at(v, p, p);
        trace /= 4.0;
        for (int p = 0; p < 4; ++p) {
            for (int h = 0; h < 4; ++h) {
                const double delta = p == h ? 1.0 : 0.0;
                const double anti = 0.5 * (at(v, p, h) - at(v, h, p));
                double dual = 0.0;
                for (int r = 0; r < 4; ++r) {
                    for (int s = 0; s < 4; ++s) dual += 0.5 * epsilon4(p, h, r, s) * 0.5 * (at(v, r, s) - at(v, s, r));
                }
                double value = 0.0;
                switch (c) {
                case Component::W4plus: value = 0.5 * (anti + dual); break;
                case Component::W4minus: value = 0.5 * (anti - dual); break;
                case Component::W5: value = 0.5 * (at(v, p, h) + at(v, h, p)) - delta * trace; break;
                case Component::W6: value = delta * trace; break;
                default: break;
                }
                out[reduced_index(2 + p, v, h)] = value;
            }
        }
    }
}

} // namespace

double tensor_norm(const ReducedTensor& t) {
    double sq = 0.0;
    for (double x : t) sq += x * x;
    return std::sqrt(sq);
}

TorsionTensor intrinsic_torsion(const OpsPoint& p, const ConnectionTable<double>& c) {
    TorsionTensor t;
    t.raw = nabla_form(c, p.plucker());
    t.frame = adapted_splitting(p);
    const Matrix6 f = t.frame.frame();

    double residual_sq = 0.0;
    for (int a = 0; a < kDim; ++a) {
        const Matrix6 w = direction_matrix(t.raw, f.row(a).transpose());
        for (int v = 0; v < 2; ++v) {
            for (int h = 0; h < 4; ++h) {
                t.reduced[reduced_index(a, v, h)] =
                    t.frame.v_frame[static_cast<std::size_t>(v)].dot(w * t.frame.h_frame[static_cast<std::size_t>(h)]);
            }
        }
        const double vv = t.frame.v_frame[0].dot(w * t.frame.v_frame[1]);
        residual_sq += vv * vv;
        for (int h = 0; h < 4; ++h) {
            for (int k = h + 1; k < 4; ++k) {
                const double hh = t.frame.h_frame[static_cast<std::size_t>(h)].dot(w * t.frame.h_frame[static_cast<std::size_t>(k)]);
                residual_sq += hh * hh;
            }
        }
    }
    t.residual = std::sqrt(residual_sq);
    if (t.residual > kResidualTol * std::max(1.0, t.raw.norm())) {
        throw InternalInvariantViolation("nabla w leaves V*^H*: residual " + std::to_string(t.residual));
    }
    return t;
}

std::string_view component_name(Component c) {
    switch (c) {
    case Component::W1: return "W1";
    case Component::W2: return "W2";
    case Component::W3: return "W3";
    case Component::W4plus: return "W4plus";
    case Component::W4minus: return "W4minus";
    case Component::W5: return "W5";
    case Component::W6: return "W6";
    }
    return "?";
}

Component component_from_name(std::string_view name) {
    for (Component c : kAllComponents) {
        if (component_name(c) == name) return c;
    }
    throw ParseError("unknown torsion component '" + std::string(name) + "'");
}

ReducedTensor project(Component c, const ReducedTensor& t) {
    ReducedTensor out{};
    switch (c) {
    case Component::W1:
    case Component::W2:
    case Component::W3: project_vertical_block(c, t, out); break;
    default: project_horizontal_block(c, t, out); break;
    }
    return out;
}

int component_dimension(Component c) {
    switch (c) {
    case Component::W1: return 4;
    case Component::W2: return 8;
    case Component::W3: return 4;
    case Component::W4plus: return 6;
    case Component::W4minus: return 6;
    case Component::W5: return 18;
    case Component::W6: return 2;
    }
    return 0;
}

NaveiraComponents naveira_project(const ReducedTensor& t) {
    NaveiraComponents out;
    for (Component c : kAllComponents) {
        const auto i = static_cast<std::size_t>(c);
        out.parts[i] = project(c, t);
        out.norms[i] = tensor_norm(out.parts[i]);
    }
    return out;
}

NaveiraComponents naveira_project(const TorsionTensor& t) { return naveira_project(t.reduced); }

// ---------------------------------------------------------------------------

ClassSignature::ClassSignature(const NaveiraComponents& parts, double tau_norm, double tol)
    : norms_(parts.norms), tol_(tol) {
    const double threshold = tol * std::max(1.0, tau_norm);
    for (std::size_t i = 0; i < norms_.size(); ++i) bits_.set(i, norms_[i] > threshold);
}

std::vector<Component> ClassSignature::active_components() const {
    std::vector<Component> out;
    for (Component c : kAllComponents) {
        if (active(c)) out.push_back(c);
    }
    return out;
}

std::string ClassSignature::label() const {
    std::string out;
    for (Component c : active_components()) {
        if (!out.empty()) out += '|';
        out += component_name(c);
    }
    return out.empty() ? "none" : out;
}

bool ClassSignature::subset_of(const std::vector<Component>& allowed) const {
    for (Component c : active_components()) {
        if (std::find(allowed.begin(), allowed.end(), c) == allowed.end()) return false;
    }
    return true;
}

ClassSignature classify(const OpsPoint& p, const ConnectionTable<double>& c, double tol) {
    const auto t = intrinsic_torsion(p, c);
    return ClassSignature(naveira_project(t), t.norm(), tol);
}

// ---------------------------------------------------------------------------

Eigen::Matrix<double, kDim, 8> tau_matrix(const TorsionTensor& t) {
    Eigen::Matrix<double, kDim, 8> m;
    for (int a = 0; a < kDim; ++a) {
        for (int v = 0; v < 2; ++v) {
            for (int h = 0; h < 4; ++h) m(a, v * 4 + h) = t.at(a, v, h);
        }
    }
    return m;
}

int tau_rank(const TorsionTensor& t, double tol) {
    Eigen::JacobiSVD<Eigen::Matrix<double, kDim, 8>> svd(tau_matrix(t));
    const double threshold = tol * std::max(1.0, t.norm());
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()(i) > threshold) ++rank;
    }
    return rank;
}

std::vector<Vector6> tau_kernel(const TorsionTensor& t, double tol) {
    Eigen::JacobiSVD<Eigen::Matrix<double, kDim, 8>> svd(tau_matrix(t), Eigen::ComputeFullU);
    const int rank = tau_rank(t, tol);
    const Matrix6 f = t.frame.frame();
    std::vector<Vector6> kernel;
    for (int i = rank; i < kDim; ++i) {
        // Adapted coordinates y map to the standard vector sum_a y_a f_a.
        kernel.push_back(f.transpose() * svd.matrixU().col(i));
    }
    return kernel;
}

AlternationResidual alternation_check(const OpsPoint& p, const ConnectionTable<double>& c,
                                      const StructureTable<double>& s) {
    const Form& w = p.plucker();
    const Form star_w = hodge(w);
    AlternationResidual r;
    r.form = norm(alternation(nabla_form(c, w)) - ce_differential(w, s));
    r.complement = norm(alternation(nabla_form(c, star_w)) - ce_differential(star_w, s));
    return r;
}

bool frobenius_integrable_h(const OpsPoint& p, const StructureTable<double>& s, double tol) {
    return norm(ce_differential(p.plucker(), s)) <= tol;
}

bool frobenius_integrable_v(const OpsPoint& p, const StructureTable<double>& s, double tol) {
    return norm(ce_differential(hodge(p.plucker()), s)) <= tol;
}

CoTensorField<double> reduced_to_raw(const ReducedTensor& t, const Splitting& frame) {
    const Matrix6 f = frame.frame();
    std::array<Matrix6, kDim> along_frame;
    for (int a = 0; a < kDim; ++a) {
        Matrix6 w = Matrix6::Zero();
        for (int v = 0; v < 2; ++v) {
            for (int h = 0; h < 4; ++h) {
                const Vector6& vv = frame.v_frame[static_cast<std::size_t>(v)];
                const Vector6& hh = frame.h_frame[static_cast<std::size_t>(h)];
                w += t[reduced_index(a, v, h)] * (vv * hh.transpose() - hh * vv.transpose());
            }
        }
        along_frame[static_cast<std::size_t>(a)] = w;
    }
    CoTensorField<double> raw;
    raw.form_grade = 2;
    for (int k = 0; k < kDim; ++k) {
        Matrix6 w = Matrix6::Zero();
        for (int a = 0; a < kDim; ++a) w += f(a, k) * along_frame[static_cast<std::size_t>(a)];
        raw.components[static_cast<std::size_t>(k)] = matrix_to_form(w);
    }
    return raw;
}

DifferentialVisibility differential_visibility(const Splitting& frame, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    DifferentialVisibility out;
    constexpr int kTrials = 4;
    constexpr double kZero = 1e-10;
    for (Component c : kAllComponents) {
        const auto i = static_cast<std::size_t>(c);
        for (int trial = 0; trial < kTrials; ++trial) {
            ReducedTensor t{};
            for (double& x : t) x = gauss(rng);
            const auto part = project(c, t);
            const auto raw = reduced_to_raw(part, frame);
            if (norm(alternation(raw)) > kZero * tensor_norm(part)) out.via_form[i] = true;
            if (norm(alternation(hodge(raw))) > kZero * tensor_norm(part)) out.via_complement[i] = true;
        }
    }
    return out;
}

} // namespace itv
