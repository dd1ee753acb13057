#include "test_main.hpp"

#include <random>

#include "ell/holomorphic.hpp"

using namespace ell;
using namespace ell::holo;

namespace {

const ModularParam kMp(cplx(0.2, 1.1));

SectionVector unit(int n, cplx u, int k)
{
    SectionVector s{{n, u, {}}, Eigen::VectorXcd::Zero(std::abs(n))};
    s.coeffs[k] = 1;
    return s;
}

} // namespace

TEST_CASE("degree -1 dual class is alpha")
{
    for (cplx z : {cplx(0.3, 0.2), cplx(-0.4, 0.9)})
        CHECK(std::abs(dual_class_rep(0, 1, 0, z, kMp) - alpha(z, kMp)) < 1e-14);
}

TEST_CASE("Serre pairing normalization")
{
    const ModularParam mp(cplx(0, 1));
    CHECK(std::abs(serre_pairing_numeric(unit(1, 0, 0), unit(-1, 0, 0), 256, mp) - 1.0) < 1e-6);
    const cplx w(0.13, 0.27);
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
            const cplx b = serre_pairing_numeric(unit(2, w, j), unit(-2, -w, k), 96, kMp);
            CHECK(std::abs(b - (j == k ? 1.0 : 0.0)) < 1e-9);
        }
    SectionVector f = unit(1, 0, 0);
    f.coeffs[0] = cplx(2, -1);
    CHECK(std::abs(serre_pairing_numeric(f, unit(-1, 0, 0), 64, mp) - cplx(2, -1)) < 1e-8);
    CHECK_THROWS_AS(serre_pairing_numeric(unit(1, 0, 0), unit(-2, 0, 0), 64, mp), HoloError);
    CHECK_THROWS_AS(serre_pairing_numeric(unit(1, 0, 0), unit(-1, 0.1, 0), 64, mp), HoloError);
}

TEST_CASE("m2 constants: fit, commutativity, associativity, dimensions")
{
    const cplx t(0.11, 0.23), u(-0.31, 0.07), v(0.05, -0.19);
    const auto C = m2_structure_constants<cplx>(1, t, 1, u, kMp);
    CHECK(C.fit_residual < 1e-9);
    CHECK(C.c.size() == 2);
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) {
            const auto A = m2_structure_constants<cplx>(a, t, b, u, kMp);
            const auto B = m2_structure_constants<cplx>(b, u, a, t, kMp);
            for (int i = 0; i < a; ++i)
                for (int j = 0; j < b; ++j)
                    for (int k = 0; k < a + b; ++k) CHECK(std::abs(A.at(i, j, k) - B.at(j, i, k)) < 1e-12);
        }
    std::vector<cplx> s1 = {cplx(0.7, 0.1)}, s2 = {cplx(-0.2, 0.5), cplx(1.0, 0.3)}, s3 = {cplx(0.4, -0.6)};
    const auto l = multiply_h0<cplx>(3, t + u, multiply_h0<cplx>(1, t, s1, 2, u, s2, kMp), 1, v, s3, kMp);
    const auto r = multiply_h0<cplx>(1, t, s1, 3, u + v, multiply_h0<cplx>(2, u, s2, 1, v, s3, kMp), kMp);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(l[k] - r[k]) < 1e-8);
    for (int n = 1; n <= 4; ++n) CHECK(h0_dim(n) == n);
    CHECK(h0_dim(-2) == 0);
    CHECK(h1_dim(-3) == 3);
}

TEST_CASE("H^0 x H^1 product agrees with the pairing integral")
{
    const cplx ws(0.17, 0.21), we(-0.09, 0.33);
    std::vector<cplx> s = {cplx(0.8, -0.3)}, e = {cplx(0.3, 0.2), cplx(-0.5, 0.1), cplx(0.2, 0.7)};
    const auto p = multiply_h0_h1<cplx>(1, ws, s, 3, we, e, kMp);
    REQUIRE(p.size() == 2);
    const SectionVector S{{1, ws, {}}, Eigen::Map<Eigen::VectorXcd>(s.data(), 1)};
    const SectionVector E{{-3, we, {}}, Eigen::Map<Eigen::VectorXcd>(e.data(), 3)};
    const int G = 96;
    for (int j = 0; j < 2; ++j) {
        cplx acc = 0;
        for (int a = 0; a < G; ++a)
            for (int b = 0; b < G; ++b) {
                const cplx z = recompose({(a + 0.5) / G, (b + 0.5) / G}, kMp);
                acc += theta_basis<cplx>(j, 2, -ws - we, z, kMp) * section_value(S, z, kMp) * section_value(E, z, kMp);
            }
        acc *= -2.0 * cplx(0, 1) * kMp.im() / double(G * G);
        CHECK(std::abs(acc - p[j]) < 1e-9);
    }
}

TEST_CASE("closed-form triple product reproduces the primitive identity")
{
    const cplx t(0.3, 0.45), u(-0.1, 0.62);
    const cplx c = m3_basic<cplx>(t, 0, u, kMp);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> U(-0.5, 0.5);
    for (int i = 0; i < 20; ++i) {
        const cplx z(U(rng), U(rng));
        const cplx lhs = h<cplx>(z, t, kMp) * theta<cplx>(z + u, kMp) - h<cplx>(z, u, kMp) * theta<cplx>(z + t, kMp);
        CHECK(std::abs(lhs - c * theta<cplx>(z + t + u, kMp)) < 1e-9);
    }
}

TEST_CASE("matrix m3_H with a Jordan block matches the derivative of F")
{
    const cplx t(0.3, 0.45), u(-0.1, 0.62);
    Eigen::MatrixXcd Z = Eigen::MatrixXcd::Zero(1, 1), J(2, 2);
    J << 0, 1, 0, 0;
    Eigen::MatrixXcd v01(1, 1), v12(2, 1), v23(1, 2);
    v01 << cplx(0.7, 0.2);
    v12 << cplx(0.3, -0.1), cplx(-0.4, 0.5);
    v23 << cplx(1.1, 0.0), cplx(0.2, 0.9);
    const Eigen::MatrixXcd r = m3_H(t, u, {Z, Z, J, Z}, v01, v12, v23, kMp);
    const double hstep = 1e-5;
    const cplx dF = (kronecker_F_theta<cplx>(t + hstep, u, kMp) - kronecker_F_theta<cplx>(t - hstep, u, kMp)) / (2 * hstep);
    const cplx F = kronecker_F_theta<cplx>(t, u, kMp);
    const cplx expect = (-F * (v23 * v12 * v01) + dF * (v23 * J * v12 * v01))(0, 0);
    CHECK(std::abs(r(0, 0) - expect) < 1e-6);
    const Eigen::MatrixXcd r0 = m3_H(t, u, {Z, Z, Z, Z}, v01, Eigen::MatrixXcd::Constant(1, 1, 2.0),
                                     Eigen::MatrixXcd::Constant(1, 1, cplx(0, 1)), kMp);
    CHECK(std::abs(r0(0, 0) + F * v01(0, 0) * 2.0 * cplx(0, 1)) < 1e-12);
}

TEST_CASE("spectral triple product")
{
    const cplx t(0.3, 0.45), u(-0.1, 0.62);
    SUBCASE("(1,-1,1) equals the closed form")
    {
        const auto r = m3_spectral<cplx>(1, t + 0.2, -0.2, u + 0.2, {1.0}, {1.0}, {1.0}, kMp, 64);
        CHECK(std::abs(r.coeffs[0] - m3_basic<cplx>(t + 0.2, -0.2, u + 0.2, kMp)) < 1e-9);
        CHECK(r.fit_residual < 1e-9);
    }
    SUBCASE("(2,-2,2) is grid converged")
    {
        const cplx w1 = cplx(0.1) + 0.3 * kMp.tau, we = cplx(-0.05) - 0.1 * kMp.tau, w2 = cplx(0.2) + 0.45 * kMp.tau;
        const auto a = m3_spectral<cplx>(2, w1, we, w2, {1.0, 0.0}, {0.0, 1.0}, {0.0, 1.0}, kMp, 48);
        const auto b = m3_spectral<cplx>(2, w1, we, w2, {1.0, 0.0}, {0.0, 1.0}, {0.0, 1.0}, kMp, 96);
        for (int k = 0; k < 2; ++k) CHECK(std::abs(a.coeffs[k] - b.coeffs[k]) < 1e-10);
        CHECK(b.fit_residual < 1e-9);
    }
    SUBCASE("jet in the source translation is the derivative")
    {
        const Jet2 w1 = Jet2::variable(1, t, 2, 1);
        const auto r = m3_spectral<Jet2>(1, w1, 0, u, {Jet2(1.0)}, {1.0}, {1.0}, kMp, 64);
        const double hs = 1e-5;
        const cplx fd = (m3_spectral<cplx>(1, t + hs, 0, u, {1.0}, {1.0}, {1.0}, kMp, 64).coeffs[0] -
                         m3_spectral<cplx>(1, t - hs, 0, u, {1.0}, {1.0}, {1.0}, kMp, 64).coeffs[0]) /
                        (2 * hs);
        CHECK(std::abs(r.coeffs[0].at(1, 0) - fd) < 1e-6);
    }
}

TEST_CASE("Lemma exactness at desk scale")
{
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> U(0.05, 0.95);
    auto family = [&](int size) {
        std::vector<LineBundleLabel> S;
        for (int i = 0; i < size; ++i) S.push_back({1 + i % 3, cplx(U(rng), U(rng)) * 0.9, {}});
        return S;
    };
    for (int deg : {3, 4}) {
        MainLemReport last;
        for (int size : {6, 8, 12}) {
            const auto rep = mainlem_exactness_check({deg, cplx(0.21, 0.34), {}}, family(size), kMp);
            CHECK(rep.beta_surjective);
            CHECK(rep.beta_alpha_norm < 1e-9);
            CHECK(rep.rank_alpha <= rep.dim_ker_beta);
            last = rep;
        }
        CHECK(last.rank_alpha == last.dim_ker_beta);
    }
}
