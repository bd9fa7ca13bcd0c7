#pragma once

#include <array>
#include <complex>
#include <vector>

#include "segway/errors.hpp"

namespace segway {

using Complex = std::complex<double>;
using Vec2 = std::array<double, 2>;
using Vec4 = std::array<double, 4>;

// Row-major 4x4. Everything in this project is 4-state, so the dense kernel
// stays fixed-size; no general n-by-n linear algebra lives here.
struct Mat4 {
    std::array<std::array<double, 4>, 4> m{};

    static Mat4 identity();
    static Mat4 zero();

    std::array<double, 4>& operator[](int r) { return m[r]; }
    const std::array<double, 4>& operator[](int r) const { return m[r]; }
};

Mat4 operator*(const Mat4& a, const Mat4& b);
Mat4 operator+(const Mat4& a, const Mat4& b);
Mat4 operator-(const Mat4& a, const Mat4& b);
Mat4 scale(const Mat4& a, double s);
Vec4 mat_vec(const Mat4& a, const Vec4& v);
Vec4 vec_mat(const Vec4& v, const Mat4& a);  // row vector times matrix
Mat4 outer(const Vec4& col, const Vec4& row);
double max_abs(const Mat4& a);
double max_abs(const Vec4& v);

// Dense polynomial with real coefficients, ascending order: c[i] multiplies s^i.
// Leading coefficient is kept nonzero by trim() except for the zero polynomial.
struct RealPolynomial {
    std::vector<double> c;

    RealPolynomial() = default;
    explicit RealPolynomial(std::vector<double> coeffs) : c(std::move(coeffs)) { trim(); }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    double eval(double x) const;
    Complex eval(Complex x) const;
    void trim(double tol = 0.0);
};

RealPolynomial poly_mul(const RealPolynomial& a, const RealPolynomial& b);
RealPolynomial poly_shift_up(const RealPolynomial& a);  // multiply by s

// Builds the monic polynomial with the given roots. The root set must be
// closed under conjugation; the imaginary residue of each coefficient is
// checked against 1e-9 * max|coefficient|.
// Throws: InvalidArgument.
RealPolynomial poly_from_roots(const std::vector<Complex>& roots);

// 2x2 solve by Cramer's rule, used by the nonlinear mass-matrix inversion.
// Throws: SingularMatrix when |det| <= 1e-12.
Vec2 solve_linear_2x2(const std::array<std::array<double, 2>, 2>& m, const Vec2& rhs);

// Gauss-Jordan with partial pivoting. Pivot threshold 1e-10; the result is
// accepted only if max|M * inv(M) - I| <= 1e-8.
// Throws: SingularMatrix.
Mat4 invert_4x4(const Mat4& m);

// Numerical rank via row elimination. Rows are pre-scaled by their own max
// magnitude so the tolerance is relative to the matrix's scale.
int rank(const Mat4& m, double tol = 1e-9);

// Characteristic polynomial of a 4x4 by the Faddeev-LeVerrier recurrence,
// together with the matrix powers that make up adj(sI - A):
//   adj(sI - A) = s^3 I + s^2 adj[2] + s adj[1] + adj[0]
// Coefficients come back ascending and monic (c[4] == 1).
struct CharPoly {
    RealPolynomial poly;            // degree 4, monic
    std::array<Mat4, 3> adj_power;  // adj_power[p] multiplies s^p
};

CharPoly characteristic_polynomial(const Mat4& a);

// All roots of a real polynomial of degree >= 1 by simultaneous Durand-Kerner
// iteration. Deterministic: fixed starting circle, at most 500 sweeps, early
// stop when the largest update falls below 1e-14 * (1 + max|root|). Results
// are symmetrized into exact conjugate pairs (lone near-real roots collapse
// onto the axis) and sorted by (real, imag).
// Throws: InvalidArgument (degree < 1 or non-finite coefficients),
//         NoConvergence (some residual exceeds 1e-10 * max|coefficient|).
std::vector<Complex> poly_roots(const RealPolynomial& p);

// Eigenvalues of a 4x4 as the roots of its characteristic polynomial.
// Throws: NoConvergence.
std::array<Complex, 4> eigenvalues_4x4(const Mat4& a);

}  // namespace segway
