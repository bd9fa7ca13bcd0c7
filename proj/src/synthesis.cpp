#include "segway/synthesis.hpp"

#include <algorithm>
#include <cmath>

namespace segway {

Mat4 controllability_matrix(const StateSpace& ss) {
    Mat4 c;
    Vec4 col = ss.B;
    for (int k = 0; k < 4; ++k) {
        for (int i = 0; i < 4; ++i) c[i][k] = col[i];
        col = mat_vec(ss.A, col);
    }
    return c;
}

StateSpace canonical_form(const RealPolynomial& char_poly) {
    if (char_poly.degree() != 4)
        raise(ErrorCode::InvalidArgument, "canonical_form: polynomial must have degree 4");
    if (std::fabs(char_poly.c[4] - 1.0) > 1e-12)
        raise(ErrorCode::InvalidArgument, "canonical_form: polynomial must be monic");
    StateSpace ss;
    ss.A = Mat4::zero();
    for (int i = 0; i < 3; ++i) ss.A[i][i + 1] = 1.0;
    for (int j = 0; j < 4; ++j) ss.A[3][j] = -char_poly.c[j];
    ss.B = {0.0, 0.0, 0.0, 1.0};
    return ss;
}

double pole_match_error(const std::array<Complex, 4>& wanted, const std::array<Complex, 4>& got) {
    std::array<bool, 4> used{};
    double worst = 0.0;
    for (const Complex& w : wanted) {
        int best = -1;
        double best_d = 0.0;
        for (int j = 0; j < 4; ++j) {
            if (used[j]) continue;
            const double d = std::abs(w - got[j]);
            if (best < 0 || d < best_d) {
                best = j;
                best_d = d;
            }
        }
        used[best] = true;
        worst = std::max(worst, best_d);
    }
    return worst;
}

namespace {

Placement place_common(const StateSpace& ss, RealPolynomial desired,
                       std::array<Complex, 4> desired_roots) {
    const Mat4 cx = controllability_matrix(ss);
    if (rank(cx) < 4)
        raise(ErrorCode::Uncontrollable, "place_poles: controllability matrix rank-deficient");

    const RealPolynomial open = characteristic_polynomial(ss.A).poly;
    Placement out;
    out.desired = std::move(desired);
    out.desired_roots = desired_roots;
    for (int i = 0; i < 4; ++i) out.k_canon[i] = out.desired.c[i] - open.c[i];

    const StateSpace canon = canonical_form(open);
    const Mat4 cz = controllability_matrix(canon);
    Mat4 cx_inv;
    try {
        cx_inv = invert_4x4(cx);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SingularMatrix)
            raise(ErrorCode::Uncontrollable, "place_poles: controllability matrix not invertible");
        throw;
    }
    out.gains = vec_mat(vec_mat(out.k_canon, cz), cx_inv);
    for (double g : out.gains)
        if (!std::isfinite(g)) raise(ErrorCode::NonFinite, "place_poles: non-finite gain");

    const ClosedLoop cl = verify_closed_loop(ss, out.gains);
    out.achieved = cl.poles;
    out.max_pole_error = pole_match_error(out.desired_roots, out.achieved);
    if (out.max_pole_error > 1e-6)
        raise(ErrorCode::VerificationFailed,
              "place_poles: achieved poles off by " + std::to_string(out.max_pole_error));
    return out;
}

}  // namespace

Placement place_poles(const StateSpace& ss, const RealPolynomial& desired) {
    if (desired.degree() != 4)
        raise(ErrorCode::InvalidArgument, "place_poles: desired polynomial must have degree 4");
    if (std::fabs(desired.c[4] - 1.0) > 1e-12)
        raise(ErrorCode::InvalidArgument, "place_poles: desired polynomial must be monic");
    const std::vector<Complex> roots = poly_roots(desired);
    std::array<Complex, 4> r4;
    std::copy_n(roots.begin(), 4, r4.begin());
    return place_common(ss, desired, r4);
}

Placement place_poles(const StateSpace& ss, const std::vector<Complex>& desired_roots) {
    if (desired_roots.size() != 4)
        raise(ErrorCode::InvalidArgument, "place_poles: exactly four desired poles required");
    RealPolynomial desired = poly_from_roots(desired_roots);
    std::array<Complex, 4> r4;
    std::copy_n(desired_roots.begin(), 4, r4.begin());
    std::sort(r4.begin(), r4.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return place_common(ss, std::move(desired), r4);
}

ClosedLoop verify_closed_loop(const StateSpace& ss, const Vec4& gains) {
    const Mat4 closed = ss.A - outer(ss.B, gains);
    ClosedLoop out;
    out.char_poly = characteristic_polynomial(closed).poly;
    out.poles = eigenvalues_4x4(closed);
    out.stable = true;
    out.marginal = false;
    for (const Complex& p : out.poles) {
        if (p.real() > 1e-9) out.stable = false;
        if (std::fabs(p.real()) <= 1e-9) out.marginal = true;
    }
    return out;
}

}  // namespace segway
