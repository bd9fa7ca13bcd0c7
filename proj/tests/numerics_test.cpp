#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "common.hpp"
#include "segway/numerics.hpp"

using namespace segway;

namespace {

Mat4 paper_a() {
    Mat4 a = Mat4::zero();
    a[0][1] = 1.0;
    a[1][2] = ref::p_a23;
    a[2][3] = 1.0;
    a[3][2] = ref::p_a43;
    return a;
}

double match_error(const std::vector<Complex>& wanted, const std::vector<Complex>& got) {
    std::vector<bool> used(got.size(), false);
    double worst = 0.0;
    for (const Complex& w : wanted) {
        int best = -1;
        double best_d = 0.0;
        for (size_t j = 0; j < got.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(w - got[j]);
            if (best < 0 || d < best_d) {
                best = static_cast<int>(j);
                best_d = d;
            }
        }
        used[best] = true;
        worst = std::max(worst, best_d);
    }
    return worst;
}

}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("mat4 identity and multiplication") {
    const Mat4 i = Mat4::identity();
    const Mat4 a = paper_a();
    const Mat4 ia = i * a;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) CHECK(ia[r][c] == a[r][c]);

    const Vec4 v{1.0, 2.0, 3.0, 4.0};
    const Vec4 av = mat_vec(a, v);
    CHECK(av[0] == doctest::Approx(2.0));
    CHECK(av[1] == doctest::Approx(ref::p_a23 * 3.0));
    CHECK(av[2] == doctest::Approx(4.0));
    CHECK(av[3] == doctest::Approx(ref::p_a43 * 3.0));

    const Vec4 va = vec_mat(v, a);
    CHECK(va[0] == doctest::Approx(0.0));
    CHECK(va[1] == doctest::Approx(1.0));
    CHECK(va[2] == doctest::Approx(2.0 * ref::p_a23 + 4.0 * ref::p_a43));
    CHECK(va[3] == doctest::Approx(3.0));

    const Mat4 o = outer(v, v);
    CHECK(o[2][3] == doctest::Approx(12.0));
    CHECK(max_abs(o) == doctest::Approx(16.0));
}

TEST_CASE("solve_linear_2x2 against the constants matrix") {
    const std::array<std::array<double, 2>, 2> m{{{ref::k1, ref::k2}, {ref::k3, ref::k4}}};
    const Vec2 u = solve_linear_2x2(m, {1.0, 0.0});
    CHECK(u[0] == doctest::Approx(ref::unit_solve_x).epsilon(1e-12));
    CHECK(u[1] == doctest::Approx(ref::unit_solve_y).epsilon(1e-12));

    const std::array<std::array<double, 2>, 2> singular{{{1.0, 2.0}, {2.0, 4.0}}};
    CHECK(raises(ErrorCode::SingularMatrix,
                 [&] { solve_linear_2x2(singular, {1.0, 1.0}); }));
}

TEST_CASE("invert_4x4 round trip and singular rejection") {
    Mat4 m = paper_a();
    m[0][0] = 0.5;
    m[1][1] = -1.25;
    m[3][0] = 2.0;
    m[2][2] = 3.0;
    const Mat4 inv = invert_4x4(m);
    const Mat4 residual = m * inv - Mat4::identity();
    CHECK(max_abs(residual) <= 1e-10);

    const Mat4 rank1 = outer({1.0, 2.0, 3.0, 4.0}, {1.0, 1.0, 1.0, 1.0});
    CHECK(raises(ErrorCode::SingularMatrix, [&] { invert_4x4(rank1); }));
}

TEST_CASE("rank") {
    CHECK(rank(Mat4::identity()) == 4);
    CHECK(rank(Mat4::zero()) == 0);
    CHECK(rank(outer({1.0, 2.0, 3.0, 4.0}, {1.0, -1.0, 2.0, 0.5})) == 1);
    // Row scaling keeps the verdict for wildly scaled full-rank input.
    Mat4 scaled = Mat4::identity();
    scaled[0][0] = 1e-8;
    scaled[3][3] = 1e9;
    CHECK(rank(scaled) == 4);
    CHECK(raises(ErrorCode::InvalidArgument, [&] { rank(Mat4::identity(), 0.0); }));
}

TEST_CASE("polynomial basics") {
    const RealPolynomial p{{-1.0, 0.0, 1.0}};  // s^2 - 1
    CHECK(p.degree() == 2);
    CHECK(p.eval(3.0) == doctest::Approx(8.0));
    const Complex at_i = p.eval(Complex(0.0, 1.0));
    CHECK(at_i.real() == doctest::Approx(-2.0));
    CHECK(at_i.imag() == doctest::Approx(0.0));

    const RealPolynomial a{{1.0, 1.0}};   // s + 1
    const RealPolynomial b{{-1.0, 1.0}};  // s - 1
    const RealPolynomial ab = poly_mul(a, b);
    REQUIRE(ab.degree() == 2);
    CHECK(ab.c[0] == doctest::Approx(-1.0));
    CHECK(ab.c[1] == doctest::Approx(0.0));
    CHECK(ab.c[2] == doctest::Approx(1.0));

    const RealPolynomial shifted = poly_shift_up(a);
    REQUIRE(shifted.degree() == 2);
    CHECK(shifted.c[0] == 0.0);
    CHECK(shifted.c[1] == 1.0);
    CHECK(shifted.c[2] == 1.0);

    RealPolynomial t{{2.0, 3.0, 0.0, 0.0}};
    CHECK(t.degree() == 1);  // constructor trims trailing zeros
    RealPolynomial zero{{0.0, 0.0}};
    CHECK(zero.degree() == 0);
}

TEST_CASE("poly_from_roots requires conjugate closure") {
    const RealPolynomial q = poly_from_roots({Complex(-1.0, 2.0), Complex(-1.0, -2.0)});
    REQUIRE(q.degree() == 2);
    CHECK(q.c[0] == doctest::Approx(5.0));
    CHECK(q.c[1] == doctest::Approx(2.0));
    CHECK(q.c[2] == doctest::Approx(1.0));

    CHECK(raises(ErrorCode::InvalidArgument,
                 [&] { poly_from_roots({Complex(-1.0, 2.0), Complex(-1.0, 2.0)}); }));
    CHECK(raises(ErrorCode::InvalidArgument, [&] { poly_from_roots({}); }));
}

TEST_CASE("characteristic polynomial of the pinned plant is exact") {
    const CharPoly cp = characteristic_polynomial(paper_a());
    REQUIRE(cp.poly.degree() == 4);
    CHECK(cp.poly.c[0] == 0.0);
    CHECK(cp.poly.c[1] == 0.0);
    CHECK(cp.poly.c[2] == doctest::Approx(-ref::p_a43).epsilon(1e-14));
    CHECK(cp.poly.c[3] == 0.0);
    CHECK(cp.poly.c[4] == 1.0);
}

TEST_CASE("adjugate powers reconstruct det(sI - A) I") {
    const Mat4 a = paper_a();
    const CharPoly cp = characteristic_polynomial(a);
    const double s = 1.7;
    Mat4 m_s = scale(Mat4::identity(), s) - a;
    Mat4 adj = scale(Mat4::identity(), s * s * s);
    adj = adj + scale(cp.adj_power[2], s * s);
    adj = adj + scale(cp.adj_power[1], s);
    adj = adj + cp.adj_power[0];
    const Mat4 product = m_s * adj;
    const double det = cp.poly.eval(s);
    const Mat4 want = scale(Mat4::identity(), det);
    CHECK(max_abs(product - want) <= 1e-9 * std::max(1.0, std::fabs(det)));
}

TEST_CASE("poly_roots on the pinned characteristic polynomial") {
    const std::vector<Complex> roots = poly_roots(characteristic_polynomial(paper_a()).poly);
    REQUIRE(roots.size() == 4);
    // Sorted by (re, im): -p, 0, 0, +p with the double origin root recovered.
    CHECK(std::abs(roots[0] - Complex(-ref::p_pole, 0.0)) <= 1e-9);
    CHECK(std::abs(roots[1]) <= 1e-9);
    CHECK(std::abs(roots[2]) <= 1e-9);
    CHECK(std::abs(roots[3] - Complex(ref::p_pole, 0.0)) <= 1e-9);
}

TEST_CASE("poly_roots conjugate symmetry is exact") {
    // (s^2 + 2s + 5)(s + 3): pair -1 +- 2i and real -3.
    const RealPolynomial p = poly_mul(RealPolynomial{{5.0, 2.0, 1.0}}, RealPolynomial{{3.0, 1.0}});
    const std::vector<Complex> roots = poly_roots(p);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0].imag() == 0.0);
    CHECK(roots[0].real() == doctest::Approx(-3.0).epsilon(1e-12));
    CHECK(roots[1].real() == roots[2].real());
    CHECK(roots[1].imag() == -roots[2].imag());
    CHECK(roots[2].real() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(roots[2].imag() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("poly_roots recovers random well-separated root sets") {
    std::mt19937_64 rng(20260822u);
    std::uniform_real_distribution<double> span(-5.0, 5.0);
    std::uniform_real_distribution<double> im_span(0.1, 5.0);
    std::uniform_real_distribution<double> lead_mag(0.5, 2.0);
    std::uniform_int_distribution<int> deg_pick(2, 4);
    std::bernoulli_distribution pick_pair(0.4);
    std::bernoulli_distribution pick_neg(0.5);

    for (int trial = 0; trial < 100; ++trial) {
        const int deg = deg_pick(rng);
        std::vector<Complex> roots;
        while (true) {
            roots.clear();
            int i = 0;
            while (i < deg) {
                if (deg - i >= 2 && pick_pair(rng)) {
                    const double re = span(rng), im = im_span(rng);
                    roots.emplace_back(re, im);
                    roots.emplace_back(re, -im);
                    i += 2;
                } else {
                    roots.emplace_back(span(rng), 0.0);
                    i += 1;
                }
            }
            bool separated = true;
            for (size_t a = 0; a < roots.size() && separated; ++a)
                for (size_t b = a + 1; b < roots.size(); ++b)
                    if (std::abs(roots[a] - roots[b]) <= 1e-2) {
                        separated = false;
                        break;
                    }
            if (separated) break;
        }
        RealPolynomial p = poly_from_roots(roots);
        const double lead = (pick_neg(rng) ? -1.0 : 1.0) * lead_mag(rng);
        for (double& c : p.c) c *= lead;
        std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
        const std::vector<Complex> got = poly_roots(p);
        REQUIRE(got.size() == roots.size());
        CHECK(match_error(roots, got) <= 1e-8);
    }
}

TEST_CASE("poly_roots quadruple root stays within the linear-convergence floor") {
    // (s - 1)^4: evaluation noise limits a multiple root to ~1e-4 accuracy.
    const RealPolynomial p{{1.0, -4.0, 6.0, -4.0, 1.0}};
    const std::vector<Complex> roots = poly_roots(p);
    REQUIRE(roots.size() == 4);
    for (const Complex& r : roots) CHECK(std::abs(r - Complex(1.0, 0.0)) <= 1e-3);
}

TEST_CASE("poly_roots input validation") {
    CHECK(raises(ErrorCode::InvalidArgument, [] { poly_roots(RealPolynomial{{3.0}}); }));
    RealPolynomial bad{{1.0, 1.0}};
    bad.c[0] = std::nan("");
    CHECK(raises(ErrorCode::InvalidArgument, [&] { poly_roots(bad); }));
}

TEST_CASE("eigenvalues_4x4 matches poly_roots") {
    const Mat4 a = paper_a();
    const std::array<Complex, 4> eig = eigenvalues_4x4(a);
    const std::vector<Complex> roots = poly_roots(characteristic_polynomial(a).poly);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(eig[i] - roots[i]) == 0.0);
}

}  // TEST_SUITE
