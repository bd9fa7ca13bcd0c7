#include "segway/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace segway {

namespace {

bool all_finite(const std::vector<double>& v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

}  // namespace

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::SingularMatrix: return "SingularMatrix";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::Uncontrollable: return "Uncontrollable";
        case ErrorCode::VerificationFailed: return "VerificationFailed";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

Mat4 Mat4::identity() {
    Mat4 r;
    for (int i = 0; i < 4; ++i) r[i][i] = 1.0;
    return r;
}

Mat4 Mat4::zero() { return Mat4{}; }

Mat4 operator*(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 4; ++i) {
        for (int k = 0; k < 4; ++k) {
            const double aik = a[i][k];
            if (aik == 0.0) continue;
            for (int j = 0; j < 4; ++j) r[i][j] += aik * b[k][j];
        }
    }
    return r;
}

Mat4 operator+(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
}

Mat4 operator-(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = a[i][j] - b[i][j];
    return r;
}

Mat4 scale(const Mat4& a, double s) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = a[i][j] * s;
    return r;
}

Vec4 mat_vec(const Mat4& a, const Vec4& v) {
    Vec4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i] += a[i][j] * v[j];
    return r;
}

Vec4 vec_mat(const Vec4& v, const Mat4& a) {
    Vec4 r{};
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) r[j] += v[i] * a[i][j];
    return r;
}

Mat4 outer(const Vec4& col, const Vec4& row) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = col[i] * row[j];
    return r;
}

double max_abs(const Mat4& a) {
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m = std::max(m, std::fabs(a[i][j]));
    return m;
}

double max_abs(const Vec4& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

double RealPolynomial::eval(double x) const {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Complex RealPolynomial::eval(Complex x) const {
    Complex acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

void RealPolynomial::trim(double tol) {
    while (c.size() > 1 && std::fabs(c.back()) <= tol) c.pop_back();
}

RealPolynomial poly_mul(const RealPolynomial& a, const RealPolynomial& b) {
    if (a.c.empty() || b.c.empty()) return RealPolynomial{{0.0}};
    std::vector<double> out(a.c.size() + b.c.size() - 1, 0.0);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) out[i + j] += a.c[i] * b.c[j];
    RealPolynomial r;
    r.c = std::move(out);
    return r;
}

RealPolynomial poly_shift_up(const RealPolynomial& a) {
    RealPolynomial r;
    r.c.assign(a.c.size() + 1, 0.0);
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i + 1] = a.c[i];
    return r;
}

RealPolynomial poly_from_roots(const std::vector<Complex>& roots) {
    if (roots.empty()) raise(ErrorCode::InvalidArgument, "poly_from_roots: empty root set");
    std::vector<Complex> c{1.0};
    for (const Complex& r : roots) {
        std::vector<Complex> next(c.size() + 1, 0.0);
        for (size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= c[i] * r;
        }
        c = std::move(next);
    }
    double scale = 0.0, imag = 0.0;
    for (const Complex& z : c) {
        scale = std::max(scale, std::abs(z));
        imag = std::max(imag, std::fabs(z.imag()));
    }
    if (imag > 1e-9 * scale)
        raise(ErrorCode::InvalidArgument, "poly_from_roots: roots not closed under conjugation");
    RealPolynomial p;
    p.c.resize(c.size());
    for (size_t i = 0; i < c.size(); ++i) p.c[i] = c[i].real();
    return p;
}

Vec2 solve_linear_2x2(const std::array<std::array<double, 2>, 2>& m, const Vec2& rhs) {
    const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (std::fabs(det) <= 1e-12)
        raise(ErrorCode::SingularMatrix, "solve_linear_2x2: |det| <= 1e-12");
    return {(rhs[0] * m[1][1] - rhs[1] * m[0][1]) / det,
            (rhs[1] * m[0][0] - rhs[0] * m[1][0]) / det};
}

Mat4 invert_4x4(const Mat4& m) {
    // Augmented [m | I], partial pivoting by magnitude.
    double aug[4][8] = {};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) aug[i][j] = m[i][j];
        aug[i][4 + i] = 1.0;
    }
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::fabs(aug[r][col]) > std::fabs(aug[pivot][col])) pivot = r;
        if (std::fabs(aug[pivot][col]) <= 1e-10)
            raise(ErrorCode::SingularMatrix, "invert_4x4: pivot below 1e-10");
        if (pivot != col)
            for (int j = 0; j < 8; ++j) std::swap(aug[pivot][j], aug[col][j]);
        const double inv_p = 1.0 / aug[col][col];
        for (int j = 0; j < 8; ++j) aug[col][j] *= inv_p;
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = aug[r][col];
            if (f == 0.0) continue;
            for (int j = 0; j < 8; ++j) aug[r][j] -= f * aug[col][j];
        }
    }
    Mat4 inv;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) inv[i][j] = aug[i][4 + j];

    // Residual gate: an inverse that passed pivoting can still be garbage for
    // nearly singular input.
    const Mat4 residual = m * inv - Mat4::identity();
    if (max_abs(residual) > 1e-8)
        raise(ErrorCode::SingularMatrix, "invert_4x4: residual above 1e-8, matrix ill-conditioned");
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!std::isfinite(inv[i][j])) raise(ErrorCode::NonFinite, "invert_4x4: non-finite result");
    return inv;
}

int rank(const Mat4& m, double tol) {
    if (!(tol > 0.0)) raise(ErrorCode::InvalidArgument, "rank: tol must be positive");
    double a[4][4];
    // Scale each row to unit max magnitude so tol acts relative to scale.
    for (int i = 0; i < 4; ++i) {
        double row_max = 0.0;
        for (int j = 0; j < 4; ++j) row_max = std::max(row_max, std::fabs(m[i][j]));
        const double s = row_max > 0.0 ? 1.0 / row_max : 0.0;
        for (int j = 0; j < 4; ++j) a[i][j] = m[i][j] * s;
    }
    int r = 0;
    for (int col = 0; col < 4 && r < 4; ++col) {
        int pivot = r;
        for (int i = r + 1; i < 4; ++i)
            if (std::fabs(a[i][col]) > std::fabs(a[pivot][col])) pivot = i;
        if (std::fabs(a[pivot][col]) <= tol) continue;
        for (int j = 0; j < 4; ++j) std::swap(a[pivot][j], a[r][j]);
        for (int i = r + 1; i < 4; ++i) {
            const double f = a[i][col] / a[r][col];
            for (int j = col; j < 4; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

CharPoly characteristic_polynomial(const Mat4& a) {
    // Faddeev-LeVerrier: M1 = A, p_k = -tr(A M_{k-1} ...)/k, and the B_k
    // matrices accumulated along the way assemble adj(sI - A).
    auto trace = [](const Mat4& x) { return x[0][0] + x[1][1] + x[2][2] + x[3][3]; };

    Mat4 mk = a;
    const double p1 = -trace(mk) / 1.0;
    Mat4 b1 = mk + scale(Mat4::identity(), p1);

    mk = a * b1;
    const double p2 = -trace(mk) / 2.0;
    Mat4 b2 = mk + scale(Mat4::identity(), p2);

    mk = a * b2;
    const double p3 = -trace(mk) / 3.0;
    Mat4 b3 = mk + scale(Mat4::identity(), p3);

    mk = a * b3;
    const double p4 = -trace(mk) / 4.0;

    CharPoly out;
    out.poly.c = {p4, p3, p2, p1, 1.0};
    out.adj_power = {b3, b2, b1};  // adj_power[0] is the s^0 term
    for (double c : out.poly.c)
        if (!std::isfinite(c)) raise(ErrorCode::NonFinite, "characteristic_polynomial: non-finite coefficient");
    return out;
}

std::vector<Complex> poly_roots(const RealPolynomial& p) {
    if (p.degree() < 1)
        raise(ErrorCode::InvalidArgument, "poly_roots: degree must be at least 1");
    if (!all_finite(p.c))
        raise(ErrorCode::InvalidArgument, "poly_roots: non-finite coefficient");
    const int n = p.degree();
    const double lead = p.c.back();

    double max_coeff = 0.0;
    for (double c : p.c) max_coeff = std::max(max_coeff, std::fabs(c));

    // Starting points on a circle that encloses all roots (Cauchy bound).
    double ratio = 0.0;
    for (int i = 0; i < n; ++i) ratio = std::max(ratio, std::fabs(p.c[i] / lead));
    const double radius = 1.0 + ratio;
    const double two_pi = 6.283185307179586;
    std::vector<Complex> x(n);
    for (int i = 0; i < n; ++i) {
        const double ang = two_pi * (static_cast<double>(i) / n + 0.61803398875);
        x[i] = radius * Complex(std::cos(ang), std::sin(ang));
    }

    for (int iter = 0; iter < 500; ++iter) {
        double max_delta = 0.0;
        for (int i = 0; i < n; ++i) {
            Complex denom = lead;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                denom *= x[i] - x[j];
            }
            // A collapsed denominator means two iterates collided; nudge apart.
            if (std::abs(denom) < 1e-300) {
                x[i] += Complex(1e-8, 1e-8);
                max_delta = 1.0;
                continue;
            }
            const Complex delta = p.eval(x[i]) / denom;
            x[i] -= delta;
            max_delta = std::max(max_delta, std::abs(delta));
        }
        double max_x = 0.0;
        for (const Complex& xi : x) max_x = std::max(max_x, std::abs(xi));
        if (max_delta <= 1e-14 * (1.0 + max_x)) break;
    }

    for (const Complex& r : x)
        if (std::abs(p.eval(r)) > 1e-10 * max_coeff)
            raise(ErrorCode::NoConvergence, "poly_roots: residual above 1e-10 of coefficient scale");

    // Force exact conjugate symmetry: greedily pair each remaining root with
    // the best mirror candidate; a root that pairs with itself becomes real.
    std::vector<Complex> out;
    std::vector<bool> used(n, false);
    for (int i = 0; i < n; ++i) {
        if (used[i]) continue;
        used[i] = true;
        int best = -1;
        double best_dist = 0.0;
        for (int j = 0; j < n; ++j) {
            if (used[j]) continue;
            const double d = std::abs(std::conj(x[i]) - x[j]);
            if (best < 0 || d < best_dist) {
                best = j;
                best_dist = d;
            }
        }
        const double self_dist = 2.0 * std::fabs(x[i].imag());
        if (best >= 0 && best_dist < self_dist) {
            used[best] = true;
            const double re = 0.5 * (x[i].real() + x[best].real());
            const double im = 0.5 * (std::fabs(x[i].imag()) + std::fabs(x[best].imag()));
            out.emplace_back(re, im);
            out.emplace_back(re, -im);
        } else {
            out.emplace_back(x[i].real(), 0.0);
        }
    }
    std::sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

std::array<Complex, 4> eigenvalues_4x4(const Mat4& a) {
    const std::vector<Complex> roots = poly_roots(characteristic_polynomial(a).poly);
    std::array<Complex, 4> out;
    std::copy_n(roots.begin(), 4, out.begin());
    return out;
}

}  // namespace segway
