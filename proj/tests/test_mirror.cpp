#include "test_main.hpp"

#include <random>

#include "ell/mirror.hpp"

using namespace ell;
using namespace ell::mirror;

namespace {

Eigen::MatrixXcd jordan(int r, cplx s = 1)
{
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(r, r);
    for (int i = 0; i + 1 < r; ++i) J(i, i + 1) = s;
    return J;
}

Eigen::MatrixXcd random_matrix(std::mt19937& g, int r, int c)
{
    std::normal_distribution<double> nd;
    Eigen::MatrixXcd M(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) M(i, j) = cplx(nd(g), nd(g));
    return M;
}

} // namespace

TEST_CASE("objects map to circles of the same slope")
{
    const ModularParam mp(cplx(0.2, 1.1));
    const auto o = to_fukaya_object(2, cplx(0.3) + 0.4 * mp.tau, jordan(2), mp);
    CHECK(o.circle.p == 2);
    CHECK(o.circle.q == 1);
    CHECK(std::abs(o.circle.c + 0.4) < 1e-14);
    CHECK(std::abs(o.conn.lambda + 0.3) < 1e-14);
    CHECK(o.rank() == 2);
    CHECK_THROWS_AS((CorrespondenceContext{mp, {1, 0.1, {}}, {1, 0.3, {}}}.validate()), MirrorError);
    CHECK_THROWS_AS((CorrespondenceContext{mp, {1, 0.1, jordan(2).transpose() + Eigen::MatrixXcd::Identity(2, 2)},
                                           {2, 0.3, {}}}.validate()),
                    MirrorError);
}

TEST_CASE("identification round trip in both degrees")
{
    const ModularParam mp(cplx(0.5, 0.8));
    std::mt19937 g(5);
    const LineBundleLabel a{0, cplx(0.1) + 0.27 * mp.tau, jordan(2)}, b{2, cplx(-0.3) + 0.61 * mp.tau, jordan(3, 0.5)};
    for (auto [s, t] : {std::pair{a, b}, std::pair{b, a}}) {
        HoloMorphism h = HoloMorphism::zero(s, t);
        for (auto& c : h.coeff) c = random_matrix(g, t.rank(), s.rank());
        const HoloMorphism back = from_fukaya(to_fukaya(h, mp), s, t, mp);
        for (std::size_t k = 0; k < h.coeff.size(); ++k) CHECK((back.coeff[k] - h.coeff[k]).norm() < 1e-12);
    }
}

TEST_CASE("m2 agrees on random triples")
{
    std::mt19937 g(11);
    std::uniform_real_distribution<double> ud(-0.5, 0.5);
    std::uniform_int_distribution<int> deg(-2, 2), rk(1, 2);
    int checked = 0;
    for (cplx tau : {cplx(0.2, 1.1), cplx(0.5, 0.8)}) {
        const ModularParam mp(tau);
        while (checked < (tau.real() < 0.3 ? 8 : 16)) {
            std::vector<LineBundleLabel> objs;
            for (int i = 0; i < 3; ++i) {
                const int r = rk(g);
                objs.push_back({deg(g), cplx(ud(g)) + ud(g) * tau, jordan(r, cplx(ud(g) + 1.0, ud(g)))});
            }
            if (objs[0].n == objs[1].n || objs[1].n == objs[2].n || objs[0].n == objs[2].n) continue;
            const Report r = compare_m2(objs, mp);
            INFO("degrees " << objs[0].n << " " << objs[1].n << " " << objs[2].n << " residual " << r.residual);
            CHECK(r.pass());
            ++checked;
        }
    }
}

TEST_CASE("m3 on the basic configuration")
{
    for (cplx tau : {cplx(0.2, 1.1), cplx(0.5, 0.8)}) {
        const ModularParam mp(tau);
        const cplx t = cplx(0.13) + 0.31 * tau, u = cplx(-0.21) + 0.44 * tau;
        const Eigen::MatrixXcd Z = Eigen::MatrixXcd::Zero(1, 1), one = Eigen::MatrixXcd::Ones(1, 1);
        const M3Report s = compare_m3({t, u, {Z, Z, Z, Z}}, one, one, one, mp);
        CHECK(s.residual < 1e-9);
        CHECK(s.closed_vs_polygon < 1e-8);
        CHECK(s.closed_vs_lattice < 1e-9);

        std::mt19937 g(3);
        const BasicConfig cfg{t, u, {jordan(2), jordan(1), jordan(2, 0.7), jordan(2, cplx(0.2, 0.5))}};
        const M3Report r = compare_m3(cfg, random_matrix(g, 1, 2), random_matrix(g, 2, 1), random_matrix(g, 2, 2), mp);
        INFO("residual " << r.residual << " polygon " << r.closed_vs_polygon << " lattice " << r.closed_vs_lattice);
        CHECK(r.residual < 1e-9);
        CHECK(r.closed_vs_polygon < 1e-8);
        CHECK(r.closed_vs_lattice < 1e-9);
    }
}

TEST_CASE("the C factor is what separates raw and corrected m3")
{
    const ModularParam mp(cplx(0.2, 1.1));
    const CFactorReport r = c_factor_isolation(cplx(0.13) + 0.31 * mp.tau, cplx(-0.21) + 0.44 * mp.tau, mp);
    CHECK(r.raw_residual > 1e-3);
    CHECK(r.corrected_residual < 1e-10);
}
