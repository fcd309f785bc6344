#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "cherry/flat_map.hpp"
#include "cherry/flow/poincare.hpp"
#include "cherry/flow/spline.hpp"

namespace cherry {

// Arrival coordinates in the cylinder between Sigma-hat and Sigma: a chart in
// which the field is horizontal, realized by reparameterizing trajectories
// by x.
class Rectifier {
public:
    virtual ~Rectifier() = default;
    virtual double forward(double x, double y) const = 0;  // arrival y at Sigma
    virtual double inverse(double x, double yhat) const = 0;
    virtual double d_inverse_dx(double x, double yhat) const = 0;
    virtual double d_inverse_dyhat(double x, double yhat) const = 0;
};

using RectifierPtr = std::shared_ptr<const Rectifier>;

// Cylinder field (1, omega): trajectories are straight lines.
RectifierPtr affine_rectifier(double omega, double x_sigma);

// Measured full return map Sigma -> Sigma of one family member, sampled on a
// graded bridge grid, as lifts in arrival coordinates.
struct MonodromySample {
    double theta = 0.0;
    SeparatrixMarks marks;
    std::vector<double> y;      // bridge points (b, a+1), unshifted chart
    std::vector<double> image;  // return lifts
    double min_slope = 0.0;     // finite-difference expansion floor
};

MonodromySample measure_monodromy(const FlowFamily& fam, double theta, int n_grid,
                                  const ShootOptions& shoot = {});

// Surgery target: the measured monodromy itself (identity deformation) or a
// flat-map bridge on the measured arcs.
struct SurgeryTarget {
    enum class Kind { Monodromy, Bridge } kind = Kind::Monodromy;
    std::optional<FlatCircleMap> bridge;

    static SurgeryTarget monodromy() { return {}; }
    static SurgeryTarget bridge_map(const FlatCircleMap& m) {
        SurgeryTarget t;
        t.kind = Kind::Bridge;
        t.bridge = m;
        return t;
    }
};

struct SurgeryOptions {
    int n_samples = 900;
    double theta_base = 0.0;  // member used to measure the monodromy
    ShootOptions shoot;
};

struct FenceResult {
    FlowFamily family;             // modified family
    MonodromySample base;          // measured monodromy used for phi
    double max_phi_deviation = 0;  // sup |phi(w) - w| over knots
};

// phi = f o Delta^{-1} applied through H(x, y) = (x, phi_sigma(x)(y)) and the
// pushforward between Sigma-hat and Sigma; the field is unchanged wherever
// the target coincides with the monodromy. The Boyd shear enters before the
// cylinder, so the deformation composes per parameter in closed form and the
// modified return map equals target + theta exactly.
// Throws NotExpanding when the target's minimum slope is <= 1.
FenceResult fence_surgery(const FlowFamily& fam, const SurgeryTarget& target,
                          const SurgeryOptions& opt = {});

// Measured-arc flat-map target with corner exponents from the saddle ratio.
FlatCircleMap std_bridge_target(const SeparatrixMarks& marks);

struct MonotonizeOptions {
    double alpha = 0.08;   // protected band margin around [d1, d2]
    int theta_grid = 21;   // certificate grids
    int y_grid = 40;
    double fd_h = 1e-4;
    int n_theta_band = 9;  // samples used to locate the protected band
    ShootOptions shoot;
};

struct MonotonizeResult {
    FlowFamily family;
    double d1 = 0, d2 = 0;  // protected band on Sigma-hat
    double min_direct = 0;  // min of the finite-difference d/dtheta of the return map
    double min_composed = 0;  // min of A + B*C over the grid
    std::vector<double> term_a, term_b, term_c;  // flattened grid reports
};

// Adds Phi = K theta sigma(x) (1 - kappa(y)) d/dy and certifies strong
// monotonicity of the modified return maps by finite differences, reporting
// the chain-rule decomposition A + B*C. Throws MonotonicityNotAchieved when
// the certificate fails.
struct MonotonicityNotAchieved : Error {
    std::vector<std::pair<double, double>> failing;  // (theta, y)
    explicit MonotonicityNotAchieved(std::vector<std::pair<double, double>> pts)
        : Error(ErrorClass::Certificate, "d/dtheta of the return map is not positive"),
          failing(std::move(pts)) {}
};

MonotonizeResult monotonize(const FlowFamily& fam, double K, const MonotonizeOptions& opt = {});

// Supremum over a probe grid of the field difference between two families at
// one parameter value.
double field_difference_sup(const FlowFamily& f1, const FlowFamily& f2, double theta,
                            int grid = 64);

}  // namespace cherry
