#pragma once

#include <memory>
#include <vector>

#include "cherry/flow/poincare.hpp"
#include "cherry/map_family.hpp"

namespace cherry {

// Minimal theta-family of extended circle maps, shared by the map level and
// sampled flow level.
class ParamCircleFamily {
public:
    virtual ~ParamCircleFamily() = default;
    virtual double eval_lift(double theta, double y) const = 0;
    virtual double flat_a(double theta) const = 0;
    virtual double flat_b(double theta) const = 0;
    virtual double critical_lift(double theta) const = 0;
};

class MapFamilyAdapter : public ParamCircleFamily {
public:
    explicit MapFamilyAdapter(MapFamily fam) : fam_(std::move(fam)) {}
    double eval_lift(double theta, double y) const override {
        return fam_.at(theta).eval_lift(y);
    }
    double flat_a(double theta) const override { return fam_.at(theta).flat_a(); }
    double flat_b(double theta) const override { return fam_.at(theta).flat_b(); }
    double critical_lift(double theta) const override {
        return fam_.at(theta).critical_lift();
    }

private:
    MapFamily fam_;
};

struct NaturalChartOptions {
    double eps = 0.08;          // chart differs from identity only this close to a, b
    int theta_samples = 7;
    int y_samples = 16;         // interior probes
    std::vector<double> corner_offsets = {1e-2, 1e-3, 1e-4};
    double fd_h = 1e-5;
};

// Parameter-dependent coordinate pinning a and b via a partition of unity.
class NaturalChart {
public:
    NaturalChart(const ParamCircleFamily& fam, double theta_ref, double eps);

    double to_chart(double theta, double y) const;    // y -> yhat (lift)
    double from_chart(double theta, double yhat) const;
    double a_ref() const { return a_ref_; }
    double b_ref() const { return b_ref_; }

    // Family rewritten in the chart.
    double eval_lift(double theta, double yhat) const;

private:
    const ParamCircleFamily& fam_;
    double a_ref_, b_ref_, eps_;
};

struct NaturalChartReport {
    double a_ref = 0, b_ref = 0;
    double min_dtheta_raw = 0;      // worst raw-chart derivative over the probes
    double min_dtheta_natural = 0;  // same probes, pinned chart
    double raw_at_closest_corner = 0;
    int probes = 0;
};

// Finite-difference check of strong parameter monotonicity in the raw and
// pinned charts, including corner-adjacent probes.
NaturalChartReport natural_chart_check(const ParamCircleFamily& fam, Interval theta_range,
                                       const NaturalChartOptions& opt = {});

struct DulacLadderRow {
    double u;        // distance above b on Sigma
    double dtheta;   // finite-difference d/dtheta of the natural-chart monodromy
};

struct DulacFit {
    std::vector<DulacLadderRow> rows;
    double c_const = 0;       // fitted constant in |d Delta/d theta| <= C u^lambda |log u|
    double lambda_fit = 0;    // fitted exponent
    double lambda_saddle = 0; // eigenvalue-ratio reference
    double max_local_slope_dev = 0;
};

// Fits the corner bound for the Sigma -> Sigma-hat monodromy of the family in
// natural charts on a shrinking ladder. Throws CornerFitFailed when the bound
// degrades toward the corner.
DulacFit dulac_corner_fit(const FlowFamily& fam, double theta0,
                          const std::vector<double>& ladder, double fd_h = 1e-4,
                          const ShootOptions& shoot = {});

}  // namespace cherry
