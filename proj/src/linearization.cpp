#include "segway/linearization.hpp"

#include <cmath>

namespace segway {

const char* plant_source_name(PlantSource s) {
    return s == PlantSource::Derived ? "derived" : "paper";
}

namespace {

StateSpace from_entries(double a23, double a43, double b2, double b4) {
    StateSpace ss;
    ss.A = Mat4::zero();
    ss.A[0][1] = 1.0;
    ss.A[1][2] = a23;
    ss.A[2][3] = 1.0;
    ss.A[3][2] = a43;
    ss.B = {0.0, b2, 0.0, b4};
    return ss;
}

}  // namespace

StateSpace linearize(const SystemConstants& c, double torque_ratio) {
    const double a23 = -c.k2 * c.k5 / c.delta;
    const double a43 = c.k1 * c.k5 / c.delta;
    const double b2 = (torque_ratio * c.k2 + c.k4) / c.delta;
    const double b4 = -(torque_ratio * c.k1 + c.k3) / c.delta;
    for (double e : {a23, a43, b2, b4})
        if (!std::isfinite(e)) raise(ErrorCode::NonFinite, "linearize: non-finite entry");
    return from_entries(a23, a43, b2, b4);
}

StateSpace paper_numeric_plant() {
    return from_entries(-3.7200, 6.7425, 4.3735, -2.9270);
}

TransferSet transfer_functions(const StateSpace& ss) {
    const CharPoly cp = characteristic_polynomial(ss.A);
    TransferSet out;
    out.den = cp.poly;
    // Numerator of state i: row i of adj(sI - A) * B, assembled per power.
    for (int i = 0; i < 4; ++i) {
        std::vector<double> coeffs(4, 0.0);
        for (int p = 0; p < 3; ++p) {
            double acc = 0.0;
            for (int j = 0; j < 4; ++j) acc += cp.adj_power[p][i][j] * ss.B[j];
            coeffs[p] = acc;
        }
        coeffs[3] = ss.B[i];  // s^3 term comes from the identity part
        out.num[i] = RealPolynomial(std::move(coeffs));
    }
    return out;
}

StabilityReport classify_stability(const StateSpace& ss) {
    StabilityReport r{};
    r.poles = eigenvalues_4x4(ss.A);
    r.unstable = false;
    r.marginal = false;
    for (const Complex& p : r.poles) {
        if (p.real() > 1e-9) r.unstable = true;
        if (std::fabs(p.real()) <= 1e-9) r.marginal = true;
    }
    return r;
}

}  // namespace segway
