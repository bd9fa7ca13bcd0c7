#pragma once

#include <vector>

#include "segway/linearization.hpp"

namespace segway {

// Columns [B, AB, A^2 B, A^3 B].
Mat4 controllability_matrix(const StateSpace& ss);

// Controllable canonical realization of a monic degree-4 characteristic
// polynomial: ones on the superdiagonal, negated ascending coefficients on
// the bottom row, B = [0, 0, 0, 1].
// Throws: InvalidArgument (wrong degree or non-monic).
StateSpace canonical_form(const RealPolynomial& char_poly);

// Everything the placement produced, kept for reporting and verification.
// Convention: u = gains . (reference - state), so the closed-loop matrix is
// A - B * gains and the achieved poles are its eigenvalues.
struct Placement {
    RealPolynomial desired;                 // monic, degree 4, ascending
    std::array<Complex, 4> desired_roots;
    Vec4 k_canon;                           // feedback in canonical coordinates
    Vec4 gains;                             // feedback in physical coordinates
    std::array<Complex, 4> achieved;        // eigenvalues of A - B * gains
    double max_pole_error;                  // worst desired-to-achieved match distance
};

// Pole placement through the canonical similarity: k_canon[i] is the gap
// between desired and open-loop coefficient of s^i, and the physical gains
// are k_canon * Cz * Cx^-1. The result is always re-verified against the
// requested poles.
// Throws: InvalidArgument, Uncontrollable (rank(Cx) < 4),
//         VerificationFailed (worst pole mismatch > 1e-6), NoConvergence.
Placement place_poles(const StateSpace& ss, const RealPolynomial& desired);
Placement place_poles(const StateSpace& ss, const std::vector<Complex>& desired_roots);

struct ClosedLoop {
    std::array<Complex, 4> poles;
    RealPolynomial char_poly;
    bool stable;    // no pole with real part > 1e-9
    bool marginal;  // some pole on the imaginary axis
};

ClosedLoop verify_closed_loop(const StateSpace& ss, const Vec4& gains);

// Greedy multiset matching distance between two pole sets: each wanted pole
// consumes its nearest remaining candidate; returns the worst pairing.
double pole_match_error(const std::array<Complex, 4>& wanted, const std::array<Complex, 4>& got);

}  // namespace segway
