#pragma once

#include <array>
#include <vector>

#include "cherry/flow/integrate.hpp"

namespace cherry {

struct Jacobian2 {
    double a11, a12, a21, a22;
    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a21; }
};

struct EigenPair {
    double value;
    Vec2 vector;  // unit
};

// Central finite-difference Jacobian of the field.
Jacobian2 field_jacobian(const FieldPtr& field, Vec2 z, double h = 1e-6);

// Real eigen decomposition of a 2x2 matrix; throws when eigenvalues are
// complex (not hyperbolic saddle/node analysis territory).
std::array<EigenPair, 2> real_eigen(const Jacobian2& j);

// Newton-polished zero of the field from a seed. Throws SaddleNotFound when
// Newton fails to converge to tolerance.
Vec2 find_equilibrium(const FieldPtr& field, Vec2 seed, double tol = 1e-12);

// Zeros on a coarse grid + Newton polish + dedupe; meant for validation.
std::vector<Vec2> locate_equilibria(const FieldPtr& field, int grid = 96);

enum class SeparatrixKind { StableUpper, StableLower, UnstableFree, UnstableToSink };

struct SeparatrixShot {
    SeparatrixKind kind;
    Vec2 saddle;
    std::vector<CrossingEvent> crossings;  // ordered along the (possibly backward) orbit
    bool captured = false;                 // reached the sink (forward kinds)
    bool saddle_reached = false;           // returned to the saddle (loop)
    std::vector<Vec2> polyline;            // decimated trace
};

struct ShootOptions {
    double offset = 1e-7;  // launch displacement along the eigenvector
    int max_crossings = 64;
    double t_budget = 3000.0;
    double capture_radius = 1e-3;
};

// Launches from the saddle along the appropriate eigenvector, forward for
// unstable kinds and backward for stable kinds, collecting section crossings
// until capture, saddle return, or budget.
SeparatrixShot shoot_separatrix(const FlowFamily& fam, double theta, SeparatrixKind kind,
                                const ShootOptions& opt = {});

// First crossings of the four separatrices: the flat arc [a, b] on Sigma and
// the critical value c, oriented so the open arc (a, b) flows to the sink.
struct SeparatrixMarks {
    double a, b, c;       // circle points on Sigma
    double c_hat;         // free separatrix crossing on Sigma-hat
    Vec2 saddle, sink;
    double lambda;        // |stable| / unstable eigenvalue ratio
    double trace;
};

SeparatrixMarks separatrix_marks(const FlowFamily& fam, double theta,
                                 const ShootOptions& opt = {});

}  // namespace cherry
