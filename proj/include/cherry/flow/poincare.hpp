#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cherry/flat_map.hpp"
#include "cherry/flow/equilibria.hpp"

namespace cherry {

// Per-condition class-N certificate; failed conditions are reported, never
// thrown.
struct ClassNReport {
    bool cond_equilibria = false;   // exactly two hyperbolic zeros, saddle trace > 0
    bool cond_transversal = false;  // field transverse to Sigma
    bool cond_crossings = false;    // separatrix first crossings a, b, c exist
    bool cond_expansive = false;    // sampled return-map slopes > 1 on the bridge
    int n_equilibria = 0;
    double saddle_trace = 0.0;
    double min_abs_vx_on_sigma = 0.0;
    double gamma_hat = 0.0;  // min finite-difference slope on the bridge grid
    double a = 0, b = 0, c = 0;
    std::string detail;

    bool all() const {
        return cond_equilibria && cond_transversal && cond_crossings && cond_expansive;
    }
};

ClassNReport class_N_report(const FlowFamily& fam, double theta, int n_grid = 64);

// Sampled extended return map on Sigma with a fitted flat-map model. The
// chart shift rotates the section coordinate so the flat arc does not wrap.
struct SectionMapSample {
    double theta = 0.0;
    double shift = 0.0;
    SeparatrixMarks marks;
    std::vector<double> y;      // bridge grid, shifted chart, in (b, a+1)
    std::vector<double> image;  // lift images in the shifted chart
    std::optional<FlatCircleMap> fitted;
    double fit_residual_max = 0.0;
    double lambda_fit_b = 0.0, lambda_fit_a = 0.0;  // near-corner log-log slopes
};

SectionMapSample empirical_poincare(const FlowFamily& fam, double theta, int n_grid,
                                    const ShootOptions& shoot = {});

// Birkhoff rotation number of the flow's return dynamics from direct
// crossing counts.
double flow_rotation_number(const FlowFamily& fam, double theta, int n_returns,
                            double y_start = 0.0);

struct LoopResult {
    double theta = 0.0;
    int crossing_index = 0;  // index of the last intersection
    double endpoint = 0.0;   // circle point a or b used
    double residual = 0.0;   // circle distance of the crossing to the endpoint
};

// Bisects the signed distance of the indexed crossing of the free unstable
// separatrix to the chosen flat-arc endpoint. Throws NoSignChange when the
// bracket does not straddle a loop.
LoopResult loop_bisect(const FlowFamily& fam, Interval bracket, char endpoint,
                       double theta_tol = 1e-9, const ShootOptions& shoot = {});

struct WindingReport {
    bool loop_confirmed = false;
    bool terminated_at_flat_arc = false;  // Morse-Smale outcome
    int forward_returns = 0;
    double entry_point = 0.0;              // circle point of the last intersection
    std::vector<double> distances;         // backward-follow distances to the loop crossing
    std::vector<double> ratios;
    double rate = 0.0;                     // geometric mean contraction per return
    double gamma_hat = 0.0;
};

// Follows the free separatrix in the time direction where the loop attracts
// (reversed for class N; handle-field inputs are negated first by the
// caller). Throws DivergenceDetected when a claimed loop repels the
// diagnostic orbit.
WindingReport winding_check(const FlowFamily& fam, double theta, double gamma_hat,
                            const ShootOptions& shoot = {});

}  // namespace cherry
