#pragma once

#include <vector>

#include "cherry/diagram.hpp"

namespace cherry {

// Monotone parameter map s with rho_B(s(theta)) = rho_A(theta): affine
// plateau-to-plateau on shared rationals, extended on residual gaps by
// rotation-number matching against family B.
class ParameterConjugacy {
public:
    struct Anchor {
        double theta_a_lo, theta_a_hi;
        double theta_b_lo, theta_b_hi;
        Rational pq;
    };

    ParameterConjugacy(MapFamily fam_a, MapFamily fam_b, Interval range_a, Interval range_b,
                       std::vector<Anchor> anchors, long rot_max_iter, double rot_enclosure);

    double operator()(double theta) const;

    const std::vector<Anchor>& anchors() const { return anchors_; }
    Interval range_a() const { return range_a_; }
    Interval range_b() const { return range_b_; }
    const MapFamily& family_a() const { return fam_a_; }
    const MapFamily& family_b() const { return fam_b_; }

private:
    MapFamily fam_a_, fam_b_;
    Interval range_a_, range_b_;
    std::vector<Anchor> anchors_;  // ascending in theta_a
    long rot_max_iter_;
    double rot_enclosure_;
};

struct ConjugacyOptions {
    long rot_max_iter = 100000;
    double rot_enclosure = 1e-6;
    double range_tolerance = 1e-6;
};

// Throws RangeMismatch when the cropped rotation ranges differ beyond
// tolerance. Diagrams must come from the given families.
ParameterConjugacy build_parameter_conjugacy(const MapFamily& fam_a, const BifDiagram& diag_a,
                                             const MapFamily& fam_b, const BifDiagram& diag_b,
                                             const ConjugacyOptions& opt = {});

struct ConjugacyReport {
    struct Probe {
        double theta;
        double s_theta;
        double rho_a, width_a;
        double rho_b, width_b;
        double mismatch;  // gap between the two rotation enclosures
    };
    std::vector<Probe> probes;
    double max_mismatch = 0.0;
    double max_width = 0.0;
};

ConjugacyReport audit_conjugacy(const ParameterConjugacy& s, int n_probes,
                                const ConjugacyOptions& opt = {});

}  // namespace cherry
