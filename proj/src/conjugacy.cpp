#include "cherry/conjugacy.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace cherry {

ParameterConjugacy::ParameterConjugacy(MapFamily fam_a, MapFamily fam_b, Interval range_a,
                                       Interval range_b, std::vector<Anchor> anchors,
                                       long rot_max_iter, double rot_enclosure)
    : fam_a_(std::move(fam_a)),
      fam_b_(std::move(fam_b)),
      range_a_(range_a),
      range_b_(range_b),
      anchors_(std::move(anchors)),
      rot_max_iter_(rot_max_iter),
      rot_enclosure_(rot_enclosure) {}

namespace {

// Enclosure-aware comparison of rho_B(theta) against the target value:
// -1 below, +1 above, 0 when the enclosure straddles it.
int compare_rotation(const RotationNumber& r, double target) {
    double lo = r.is_rational() ? r.rational.value() : r.lo.value();
    double hi = r.is_rational() ? r.rational.value() : r.hi.value();
    if (hi < target) return -1;
    if (lo > target) return 1;
    return 0;
}

}  // namespace

double ParameterConjugacy::operator()(double theta) const {
    theta = std::clamp(theta, range_a_.lo, range_a_.hi);
    // Anchor plateaus are affine; between them match rotation numbers.
    double ga_lo = range_a_.lo, ga_hi = range_a_.hi;
    double gb_lo = range_b_.lo, gb_hi = range_b_.hi;
    for (const auto& an : anchors_) {
        if (theta >= an.theta_a_lo && theta <= an.theta_a_hi) {
            double len = an.theta_a_hi - an.theta_a_lo;
            double t = len > 0.0 ? (theta - an.theta_a_lo) / len : 0.5;
            return an.theta_b_lo + t * (an.theta_b_hi - an.theta_b_lo);
        }
        if (an.theta_a_hi < theta && an.theta_a_hi > ga_lo) {
            ga_lo = an.theta_a_hi;
            gb_lo = an.theta_b_hi;
        }
        if (an.theta_a_lo > theta && an.theta_a_lo < ga_hi) {
            ga_hi = an.theta_a_lo;
            gb_hi = an.theta_b_lo;
        }
    }
    (void)ga_lo;
    (void)ga_hi;
    RotationNumber ra = rotation_number(fam_a_.at(theta), rot_max_iter_, rot_enclosure_);
    double target = ra.midpoint();
    double lo = gb_lo, hi = gb_hi;
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        double mid = 0.5 * (lo + hi);
        RotationNumber rb = rotation_number(fam_b_.at(mid), rot_max_iter_, rot_enclosure_);
        int cmp = compare_rotation(rb, target);
        if (cmp == 0) return mid;
        if (cmp < 0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

ParameterConjugacy build_parameter_conjugacy(const MapFamily& fam_a, const BifDiagram& diag_a,
                                             const MapFamily& fam_b, const BifDiagram& diag_b,
                                             const ConjugacyOptions& opt) {
    RotationNumber a0 = rotation_number(fam_a.at(diag_a.theta_range.lo), opt.rot_max_iter,
                                        opt.rot_enclosure);
    RotationNumber a1 = rotation_number(fam_a.at(diag_a.theta_range.hi), opt.rot_max_iter,
                                        opt.rot_enclosure);
    RotationNumber b0 = rotation_number(fam_b.at(diag_b.theta_range.lo), opt.rot_max_iter,
                                        opt.rot_enclosure);
    RotationNumber b1 = rotation_number(fam_b.at(diag_b.theta_range.hi), opt.rot_max_iter,
                                        opt.rot_enclosure);
    double tol = opt.range_tolerance;
    if (std::fabs(a0.midpoint() - b0.midpoint()) > tol + a0.width() + b0.width() ||
        std::fabs(a1.midpoint() - b1.midpoint()) > tol + a1.width() + b1.width())
        throw RangeMismatch("endpoints rho_A = [" + std::to_string(a0.midpoint()) + ", " +
                            std::to_string(a1.midpoint()) + "], rho_B = [" +
                            std::to_string(b0.midpoint()) + ", " + std::to_string(b1.midpoint()) +
                            "]");

    std::map<Rational, const Plateau*> by_value;
    for (const auto& p : diag_b.plateaus) by_value[p.pq] = &p;

    std::vector<ParameterConjugacy::Anchor> anchors;
    for (const auto& pa : diag_a.plateaus) {
        auto it = by_value.find(pa.pq);
        if (it == by_value.end()) continue;
        const Plateau& pb = *it->second;
        anchors.push_back({pa.theta_lo, pa.theta_hi, pb.theta_lo, pb.theta_hi, pa.pq});
    }
    std::sort(anchors.begin(), anchors.end(),
              [](const auto& x, const auto& y) { return x.theta_a_lo < y.theta_a_lo; });

    return ParameterConjugacy(fam_a, fam_b, diag_a.theta_range, diag_b.theta_range,
                              std::move(anchors), opt.rot_max_iter, opt.rot_enclosure);
}

ConjugacyReport audit_conjugacy(const ParameterConjugacy& s, int n_probes,
                                const ConjugacyOptions& opt) {
    ConjugacyReport rep;
    Interval ra = s.range_a();
    for (int i = 0; i < n_probes; ++i) {
        double theta = ra.lo + (ra.hi - ra.lo) * i / (n_probes - 1.0);
        double image = s(theta);
        RotationNumber va =
            rotation_number(s.family_a().at(theta), opt.rot_max_iter, opt.rot_enclosure);
        RotationNumber vb =
            rotation_number(s.family_b().at(image), opt.rot_max_iter, opt.rot_enclosure);
        double lo_a = va.is_rational() ? va.rational.value() : va.lo.value();
        double hi_a = va.is_rational() ? va.rational.value() : va.hi.value();
        double lo_b = vb.is_rational() ? vb.rational.value() : vb.lo.value();
        double hi_b = vb.is_rational() ? vb.rational.value() : vb.hi.value();
        double gap = std::max(0.0, std::max(lo_a, lo_b) - std::min(hi_a, hi_b));
        rep.probes.push_back(
            {theta, image, va.midpoint(), va.width(), vb.midpoint(), vb.width(), gap});
        rep.max_mismatch = std::max(rep.max_mismatch, gap);
        rep.max_width = std::max(rep.max_width, std::max(va.width(), vb.width()));
    }
    return rep;
}

}  // namespace cherry
