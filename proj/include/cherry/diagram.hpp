#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cherry/intervals.hpp"
#include "cherry/map_family.hpp"
#include "cherry/rational.hpp"
#include "cherry/rotation.hpp"

namespace cherry {

enum class EndpointTag { LoopAtA, LoopAtB, RangeCropped };

const char* endpoint_tag_name(EndpointTag tag);

// Mode-locking window of one rational. At an uncropped endpoint the last
// intersection of the critical orbit meets the named flat-arc endpoint; the
// certificate is the residual of the loop condition c = f^{-(q-1)}(e),
// measured on the contracting side where it is numerically meaningful.
struct Plateau {
    Rational pq;
    double theta_lo = 0.0, theta_hi = 0.0;
    EndpointTag tag_lo = EndpointTag::LoopAtA;
    EndpointTag tag_hi = EndpointTag::LoopAtB;
    int hit_index = 0;  // q - 1
    double cert_lo = 0.0, cert_hi = 0.0;

    bool cropped() const {
        return tag_lo == EndpointTag::RangeCropped || tag_hi == EndpointTag::RangeCropped;
    }
    double width() const { return theta_hi - theta_lo; }
};

struct Connection {
    Rational pq;  // plateau carrying the point
    int cell;     // cell label
    double theta;
};

struct BifDiagram {
    std::string family;
    int max_den = 0;
    Interval theta_range;
    std::vector<Plateau> plateaus;  // ascending in theta
    std::vector<double> loops;      // plateau endpoints strictly inside the range
    IntervalCover residual;         // theta_range minus open plateau interiors
    std::vector<Connection> connections;  // filled by the cells module
    std::vector<BoxCountEntry> boxcounts;
};

struct PlateauOptions {
    int bisect_budget = 200;
    double theta_tol = 1e-12;
};

// Isolates the mode-locking window of p/q inside the given window, or
// nullopt when the window's rotation range excludes it. Endpoints falling on
// the family range boundary are tagged RangeCropped.
std::optional<Plateau> plateau_for(const MapFamily& fam, const Rational& pq, Interval window,
                                   const PlateauOptions& opt = {});

struct ScanOptions {
    PlateauOptions plateau;
    int jobs = 1;
    long rot_max_iter = 100000;
    double rot_enclosure = 1e-9;
};

BifDiagram scan_diagram(const MapFamily& fam, Interval theta_range, int max_den,
                        const ScanOptions& opt = {});

double residual_measure(const BifDiagram& d);

// Least-squares box-count slope of the residual cover over the ladder.
DimensionFit box_dimension_estimate(const BifDiagram& d, const std::vector<double>& ladder);

// Ladder spanning the resolved scales of the residual cover.
std::vector<double> default_residual_ladder(const BifDiagram& d, int n = 12);

struct StaircaseSample {
    double theta;
    double rho;    // exact rational or enclosure midpoint
    double width;  // 0 for exact values
};

std::vector<StaircaseSample> staircase(const MapFamily& fam, Interval range, int n,
                                       long max_iter = 100000, double enclosure = 1e-9);

// Lift-consistent backward bridge orbit: pulls the lift value z back through
// the inverse branch the given number of steps.
double backward_lift(const FlatCircleMap& m, double z, int steps);

}  // namespace cherry
