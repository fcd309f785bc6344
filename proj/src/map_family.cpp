#include "cherry/map_family.hpp"

#include <cmath>
#include <cstdio>

#include "cherry/circle.hpp"

namespace cherry {

MapFamily MapFamily::boyd(const FlatCircleMap& base, double theta_lo, double theta_hi) {
    if (!(theta_lo < theta_hi))
        throw Error(ErrorClass::Config, "family parameter range must be nondegenerate");
    char buf[160];
    std::snprintf(buf, sizeof buf, "beta(a=%.17g,b=%.17g,c=%.17g,lb=%.17g,la=%.17g)+boyd",
                  base.flat_a(), base.flat_b(), base.critical(), base.lambda_b(),
                  base.lambda_a());
    Action act = [base](double theta) {
        double c_tot = base.critical_lift() + theta;
        double c_raw = wrap_unit(c_tot);
        int offset = (int)std::lround(c_tot - c_raw);
        return make_beta_model(base.flat_a(), base.flat_b(), c_raw, base.lambda_b(),
                               base.lambda_a(), offset);
    };
    return MapFamily(buf, std::move(act), theta_lo, theta_hi, 1.0);
}

MapFamily MapFamily::custom(std::string name, Action action, double theta_lo, double theta_hi,
                            double floor_delta) {
    if (!(theta_lo < theta_hi))
        throw Error(ErrorClass::Config, "family parameter range must be nondegenerate");
    if (!(floor_delta > 0.0))
        throw Error(ErrorClass::Config, "monotonicity floor must be positive");
    return MapFamily(std::move(name), std::move(action), theta_lo, theta_hi, floor_delta);
}

}  // namespace cherry
