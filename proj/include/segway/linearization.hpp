#pragma once

#include <array>

#include "segway/numerics.hpp"
#include "segway/plant.hpp"

namespace segway {

// Which linear plant the pipeline runs on. Derived: linearize the Figure-1
// physics. Paper: the numeric state matrix printed in the reference work,
// which no positive parameter set reproduces (kept for comparison runs).
enum class PlantSource { Derived, Paper };

const char* plant_source_name(PlantSource s);

// State order (x, v, theta, omega); single torque input.
// A has the companion-like sparsity
//   [0 1 0   0]      [0 ]
//   [0 0 a23 0]  B = [b2]
//   [0 0 0   1]      [0 ]
//   [0 0 a43 0]      [b4]
struct StateSpace {
    Mat4 A;
    Vec4 B;
};

// First-order expansion of the free nonlinear model about the upright
// equilibrium (theta = 0, omega = 0):
//   a23 = -k2 k5 / delta   a43 =  k1 k5 / delta
//   b2  = (K k2 + k4) / delta   b4 = -(K k1 + k3) / delta
// Signs follow from solving the linearized pair for (xdd, thetadd); the
// gravity-destabilized tilt pole pair +/- sqrt(a43) requires a43 > 0.
StateSpace linearize(const SystemConstants& c, double torque_ratio);

// The reference work's printed numeric matrix, pinned verbatim.
StateSpace paper_numeric_plant();

// The four transfer functions from torque to each state over the shared
// denominator det(sI - A). Numerators come from the adjugate columns, so
// num[1] = s * num[0] and num[3] = s * num[2] hold as polynomial identities.
// Common factors (the double pole at the origin against numerator zeros
// there) are reported downstream, never cancelled here.
struct TransferSet {
    RealPolynomial den;                 // monic, degree 4
    std::array<RealPolynomial, 4> num;  // x, v, theta, omega
};

TransferSet transfer_functions(const StateSpace& ss);

struct StabilityReport {
    std::array<Complex, 4> poles;
    bool unstable;  // some pole has real part > 1e-9
    bool marginal;  // some pole sits on the imaginary axis (|re| <= 1e-9)
};

StabilityReport classify_stability(const StateSpace& ss);

}  // namespace segway
