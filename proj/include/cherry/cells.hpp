#pragma once

#include <optional>
#include <vector>

#include "cherry/diagram.hpp"

namespace cherry {

// Cherry cell marked point on the transversal: d(theta) = d0 - beta * theta,
// strictly inside the open flat arc for every theta in range, decaying so the
// crossing with the rising critical orbit is unique inside each plateau.
struct CherryCell {
    double d0;
    double beta;  // > 0
    int label = 0;

    double d(double theta) const { return d0 - beta * theta; }
};

struct ConnectionOptions {
    int bisect_budget = 200;
    double theta_tol = 1e-12;
};

// Unique saddle-connection parameter inside the open plateau window, or
// nullopt when the monotone difference does not cross zero strictly inside.
// Throws NotInsideFlatArc when d(theta) leaves the open flat arc within the
// window.
std::optional<double> connection_parameter(const MapFamily& fam, const Plateau& plat,
                                           const CherryCell& cell,
                                           const ConnectionOptions& opt = {});

// Adds the sorted connection parameters of each unflagged plateau to the
// diagram; with no cells the diagram is returned unchanged.
BifDiagram augment_diagram(BifDiagram diagram, const MapFamily& fam,
                           const std::vector<CherryCell>& cells,
                           const ConnectionOptions& opt = {});

// Common per-plateau connection count over unflagged plateaus, or nullopt
// when the counts disagree ("inconsistent").
std::optional<int> germ_signature(const BifDiagram& diagram);

// Germ diagrams are equivalent exactly when both signatures are consistent
// and carry the same count.
bool germs_equivalent(const std::optional<int>& s1, const std::optional<int>& s2);

}  // namespace cherry
