#pragma once

// Parametrized families of OPS, classification sweeps and the moment map
// onto <e12, e34, e56>.

#include "itv/torsion.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace itv {

enum class Family { StandardVertical, HorizontalGr2K, GeodesicSpheres, Type11, VSlice, Generic };

inline constexpr std::array<Family, 6> kAllFamilies{Family::StandardVertical, Family::HorizontalGr2K,
                                                    Family::GeodesicSpheres,  Family::Type11,
                                                    Family::VSlice,           Family::Generic};

inline constexpr int kDefaultGrid = 24;
inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct FamilySpec {
    Family variant = Family::Generic;
    /// GeodesicSpheres: +1 or -1 picks one sphere, 0 alternates between both.
    /// StandardVertical: +1 / -1 picks one orientation, 0 alternates.
    int sign = 0;
    int count = 500;
    std::uint64_t seed = kDefaultSeed;
    /// Points per angle on the deterministic grid.
    int grid = kDefaultGrid;
    /// Draw angles at random instead of from the grid.
    bool random_angles = false;
};

/// "standard-vertical", "geodesic-spheres", "geodesic-spheres-plus", ...
std::string family_name(const FamilySpec& f);
/// Inverse of family_name; throws ParseError on unknown names.
FamilySpec family_from_name(std::string_view name);

/// Point `index` of the family, a pure function of (spec, index).
OpsPoint generate_point(const FamilySpec& f, int index);
std::vector<OpsPoint> generate(const FamilySpec& f);

/// Allowed components per family, read from the checked-in table; nullopt
/// when the family is unconstrained.
std::optional<std::vector<Component>> expected_superset(Family f);
/// Raw text of the embedded table.
const std::string& itv_table_json();

struct MomentPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double l1() const { return std::abs(x) + std::abs(y) + std::abs(z); }
};

MomentPoint moment_map(const OpsPoint& p);

struct PointRecord {
    Form plucker{2};
    MomentPoint moment;
    ClassSignature signature;
    int rank = 0;
};

struct Violation {
    int index = 0;
    Form plucker{2};
    std::string observed;
    std::string expected;
};

struct SweepReport {
    FamilySpec family;
    double tol = kDefaultClassTol;
    std::vector<PointRecord> points;
    std::map<std::string, int> histogram;
    std::vector<Violation> violations;

    int total() const;
};

/// Classifies every point of the family on `threads` workers (0 = hardware
/// concurrency). The result does not depend on the number of workers.
SweepReport sweep(const FamilySpec& f, const ConnectionTable<double>& c, double tol = kDefaultClassTol,
                  unsigned threads = 0);

/// x,y,z,signature,rank with one row per point.
std::string moment_csv(const SweepReport& r);

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct MomentCounts {
    int standard_vertical = 2;
    int geodesic_spheres = 500;
    int horizontal = 500;
    int type11 = 500;
    int vslice = 500;
    int uniform = 10000;
};

struct MomentImageReport {
    std::vector<Check> checks;
    bool passed() const;
};

MomentImageReport verify_moment_images(const ConnectionTable<double>& c, double tol, const MomentCounts& counts,
                                       std::uint64_t seed = kDefaultSeed, unsigned threads = 0);

/// Two-sided exact binomial test of k successes in n trials against p = 1/2.
double binomial_two_sided_p(int k, int n);

/// Element of the coupled group (SU(2)_- x SO(2)) x SO(2) acting on 1-forms:
/// an SU(2)_- rotation of K, a rotation of K by exp(t J1) turning the
/// <beta2, beta3> plane, and the matching rotation of <e5, e6>.
Matrix6 sample_stabilizer_element(std::mt19937_64& rng);

} // namespace itv
