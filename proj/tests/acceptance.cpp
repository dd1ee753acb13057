// Acceptance run: one PASS/FAIL line per criterion with the tolerances fixed
// below. Prints "criteria evaluated: 9" at the end and exits with the number
// of failing criteria.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "ainf_fixtures.hpp"
#include "ell/ainf.hpp"
#include "ell/fukaya.hpp"
#include "ell/holomorphic.hpp"
#include "ell/mirror.hpp"
#include "ell/theta.hpp"
#include "ell/triple.hpp"

using namespace ell;

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI(0, 1);

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome
{
    bool pass;
    std::string detail;
};

std::string fmt(double x)
{
    std::ostringstream s;
    s.precision(3);
    s << x;
    return s.str();
}

Eigen::MatrixXcd jordan(int r, cplx s = 1)
{
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(r, r);
    for (int i = 0; i + 1 < r; ++i) J(i, i + 1) = s;
    return J;
}

Eigen::MatrixXcd random_matrix(std::mt19937& g, int r, int c)
{
    std::uniform_real_distribution<double> ud(-1, 1);
    Eigen::MatrixXcd M(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) M(i, j) = cplx(ud(g), ud(g));
    return M;
}

// 1. Kronecker identity on a 5x5 grid, three values of tau, under 10 s
Outcome kronecker()
{
    const double tol = 1e-9, budget = 10;
    const auto start = Clock::now();
    double worst = 0;
    for (cplx tau : {cplx(0, 1), cplx(0.5, 0.8), cplx(0, 2)}) {
        const ModularParam mp(tau);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                const cplx t = cplx(0.07 + 0.19 * i) + (0.11 + 0.17 * i) * tau;
                const cplx u = cplx(-0.31 + 0.13 * j) + (0.23 + 0.16 * j) * tau;
                worst = std::max(worst, std::abs(kronecker_F_lattice<cplx>(t, u, mp) - kronecker_F_theta<cplx>(t, u, mp)));
            }
    }
    const double s = seconds_since(start);
    return {worst < tol && s < budget, "max |lattice - theta| = " + fmt(worst) + " (tol 1e-9), " + fmt(s) + " s"};
}

// 2. primitive identity at 100 random triples; F antisymmetry and quasi-periodicity
Outcome primitive()
{
    const ModularParam mp(cplx(0, 1));
    std::mt19937 g(2);
    std::uniform_real_distribution<double> mag(0.05, 0.45), any(0, 1);
    std::bernoulli_distribution sgn(0.5);
    const auto coord = [&] { return sgn(g) ? mag(g) : -mag(g); };
    double prim = 0, laws = 0;
    for (int r = 0; r < 100; ++r) {
        const cplx z = cplx(any(g)) + any(g) * mp.tau;
        const cplx t = cplx(coord()) + coord() * mp.tau, u = cplx(coord()) + coord() * mp.tau;
        const cplx F = kronecker_F_theta<cplx>(t, u, mp);
        const cplx res = h<cplx>(z, t, mp) * theta<cplx>(z + u, mp) - h<cplx>(z, u, mp) * theta<cplx>(z + t, mp) +
                         F * theta<cplx>(z + t + u, mp);
        prim = std::max(prim, std::abs(res));
        const double sc = 1 + std::abs(F);
        laws = std::max(laws, std::abs(F + kronecker_F_theta<cplx>(u, t, mp)) / sc);
        laws = std::max(laws, std::abs(kronecker_F_theta<cplx>(t + 1.0, u, mp) - F) / sc);
        laws = std::max(laws, std::abs(kronecker_F_theta<cplx>(t + mp.tau, u, mp) - std::exp(2.0 * kPi * kI * u) * F) / sc);
    }
    return {prim < 1e-9 && laws < 1e-10,
            "primitive " + fmt(prim) + " (tol 1e-9), antisymmetry/periodicity " + fmt(laws) + " (tol 1e-10)"};
}

// 3. mirror m2 on random transversal triples, ranks 1-2, two taus, under 60 s
Outcome mirror_m2()
{
    const auto start = Clock::now();
    std::mt19937 g(3);
    std::uniform_real_distribution<double> ud(-0.5, 0.5);
    std::uniform_int_distribution<int> deg(-2, 2), rk(1, 2);
    double worst = 0;
    int count = 0;
    for (cplx tau : {cplx(0.2, 1.1), cplx(0.5, 0.8)}) {
        const ModularParam mp(tau);
        for (int s = 0; s < 6;) {
            std::vector<holo::LineBundleLabel> objs;
            for (int i = 0; i < 3; ++i)
                objs.push_back({deg(g), cplx(ud(g)) + ud(g) * tau, jordan(rk(g), cplx(ud(g) + 1.0, ud(g)))});
            if (objs[0].n == objs[1].n || objs[1].n == objs[2].n || objs[0].n == objs[2].n) continue;
            worst = std::max(worst, mirror::compare_m2(objs, mp).residual);
            ++s;
            ++count;
        }
    }
    const double s = seconds_since(start);
    return {worst < 1e-8 && s < 60,
            std::to_string(count) + " triples, max residual " + fmt(worst) + " (tol 1e-8), " + fmt(s) + " s"};
}

// 4. mirror m3 on basic configurations with Jordan blocks; closed form vs polygons
Outcome mirror_m3()
{
    std::mt19937 g(4);
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.2, 0.8);
    std::bernoulli_distribution coin(0.5);
    double res = 0, poly = 0;
    int count = 0;
    for (cplx tau : {cplx(0.2, 1.1), cplx(0.5, 0.8)}) {
        const ModularParam mp(tau);
        for (int s = 0; s < 5; ++s, ++count) {
            const cplx t = cplx(re(g)) + im(g) * tau, u = cplx(re(g)) + im(g) * tau;
            std::vector<Eigen::MatrixXcd> N;
            for (int i = 0; i < 4; ++i)
                N.push_back(i == s % 4 || coin(g) ? jordan(2, cplx(re(g) + 1.0, re(g))) : Eigen::MatrixXcd::Zero(1, 1));
            const auto r = mirror::compare_m3({t, u, N}, random_matrix(g, N[1].rows(), N[0].rows()),
                                              random_matrix(g, N[2].rows(), N[1].rows()),
                                              random_matrix(g, N[3].rows(), N[2].rows()), mp);
            res = std::max(res, r.residual);
            poly = std::max(poly, r.closed_vs_polygon);
        }
    }
    return {res < 1e-6 && poly < 1e-8, std::to_string(count) + " configurations, H vs F " + fmt(res) +
                                           " (tol 1e-6), closed form vs polygons " + fmt(poly) + " (tol 1e-8)"};
}

// 5. exact A-infinity engine
Outcome engine()
{
    using namespace ainf;
    using namespace ainf::fixtures;
    const auto start = Clock::now();
    std::mt19937 g(5);
    const auto s = exterior(4);
    bool ok = true;
    for (int rep = 0; rep < 3; ++rep) {
        const auto t = transport(s, random_homotopy(s.grid, 4, g, 0.3), 4);
        ok = ok && check_bar_square(t, 4).exact_zero;
        for (int n = 1; n <= 4; ++n) ok = ok && check_axiom(t, n).exact_zero;
    }
    HomotopyData<QC> zero;
    zero.grid = s.grid;
    const bool ident = table_distance(transport(s, zero, 4).m, s.m, 4) == 0;
    const auto b = top_pairing(s.grid);
    const auto f = cyclic_f3(s.grid, b, g);
    const bool cyc = !f.f.tables().at(3).empty() && check_cyclic_homotopy(f, b, 5).exact_zero &&
                     check_cyclic(transport(s, f, 4), b, 4).exact_zero;
    const double sec = seconds_since(start);
    return {ok && ident && cyc && sec < 5, std::string("d o d exact: ") + (ok ? "yes" : "no") + ", transport by 0: " +
                                                (ident ? "identity" : "changed") + ", cyclic transport: " +
                                                (cyc ? "cyclic" : "broken") + ", " + fmt(sec) + " s"};
}

// 6. Fukaya structure health with slopes in {0, 1, 2, 3, 1/2}
Outcome fukaya_health()
{
    using namespace fukaya;
    const ModularParam mp(cplx(0.2, 1.1));
    std::mt19937 g(6);
    std::uniform_real_distribution<double> off(0, 1), lam(-0.5, 0.5);
    const std::vector<std::vector<std::array<long, 2>>> sets{{{0, 1}, {1, 1}, {2, 1}, {3, 1}},
                                                             {{0, 1}, {1, 2}, {1, 1}, {2, 1}},
                                                             {{3, 1}, {1, 2}, {0, 1}, {1, 1}}};
    double ax3 = 0, ax4 = 0, cyc = 0, stab = 0;
    for (const auto& ss : sets) {
        std::vector<FukayaObject> objs;
        for (const auto& s : ss) objs.push_back(make_object({s[0], s[1], off(g)}, lam(g)));
        const auto cat = assemble(objs, 4, mp);
        ax3 = std::max(ax3, ainf::check_axiom(cat.structure, 3).max_residual);
        ax4 = std::max(ax4, ainf::check_axiom(cat.structure, 4).max_residual);
        cyc = std::max(cyc, ainf::check_cyclic(cat.structure, cat.pairing, 3).max_residual);
        EnumOptions wide;
        wide.area_cutoff = 2 * default_area_cutoff(mp);
        stab = std::max(stab, ainf::table_distance(assemble(objs, 3, mp, wide).structure.m, assemble(objs, 3, mp).structure.m, 3));
    }
    const double tol = 1e-8;
    return {ax3 < tol && ax4 < tol && cyc < tol && stab < tol,
            "associativity " + fmt(ax3) + ", Ax_4 " + fmt(ax4) + ", cyclicity " + fmt(cyc) + ", cutoff doubling " +
                fmt(stab) + " (tol 1e-8)"};
}

// 7. exactness of the alpha/beta sequence
Outcome mainlem()
{
    const ModularParam mp(cplx(0.2, 1.1));
    std::mt19937 g(11);
    std::uniform_real_distribution<double> U(0.05, 0.95);
    bool ok = true;
    std::string detail;
    for (int deg : {3, 4}) {
        holo::MainLemReport last;
        double ba = 0;
        for (int size : {6, 8, 12}) {
            std::vector<holo::LineBundleLabel> S;
            for (int i = 0; i < size; ++i) S.push_back({1 + i % 3, cplx(U(g), U(g)) * 0.9, {}});
            last = holo::mainlem_exactness_check({deg, cplx(0.21, 0.34), {}}, S, mp);
            ba = std::max(ba, last.beta_alpha_norm);
            ok = ok && last.beta_surjective && last.beta_alpha_norm < 1e-9;
        }
        ok = ok && last.rank_alpha == last.dim_ker_beta;
        detail += "deg " + std::to_string(deg) + ": |beta alpha| " + fmt(ba) + ", rank alpha " +
                  std::to_string(last.rank_alpha) + " / dim ker beta " + std::to_string(last.dim_ker_beta) + "; ";
    }
    return {ok, detail + "beta surjective: " + (ok ? "yes" : "see above")};
}

// 8. triple-product identity for m3^H and transported m3^F
Outcome proposition()
{
    const ModularParam mp(cplx(0.2, 1.1));
    const auto tw = [&](double a, double b) { return cplx(a) + b * mp.tau; };
    const Eigen::MatrixXcd Z = Eigen::MatrixXcd::Zero(1, 1);
    const holo::LineBundleLabel L1a{1, tw(0.11, 0.23), Z}, L1b{1, tw(-0.07, 0.31), Z}, L2a{1, tw(0.19, 0.23), Z},
        L2b{1, tw(0.05, 0.31), Z}, M{-2, tw(0.03, -0.04), Z}, L1j{1, tw(0.11, 0.23), jordan(2)};
    double r1 = 0, rj = 0;
    for (const auto& p : {triple::holomorphic_provider(mp), triple::fukaya_provider(mp)}) {
        r1 = std::max(r1, triple::triple_product_identity_check(L1a, L1b, L2a, L2b, M, p, mp).residual);
        rj = std::max(rj, triple::triple_product_identity_check(L1j, L1b, L2a, L2b, M, p, mp).residual);
    }
    return {r1 < 1e-7 && rj < 1e-6,
            "rank 1 " + fmt(r1) + " (tol 1e-7), Jordan block " + fmt(rj) + " (tol 1e-6), both sides"};
}

// 9. homotopy extraction
Outcome extraction()
{
    const ModularParam mp(cplx(0.2, 1.1));
    const auto tw = [&](double a, double b) { return cplx(a) + b * mp.tau; };
    const holo::LineBundleLabel L{2, tw(0.12, 0.21), {}}, M{-1, tw(-0.04, 0.37), {}};
    const std::vector<triple::HomotopyChoice> choices{{tw(0.09, 0.14), 0}, {tw(-0.13, 0.41), 1}};
    const auto H = triple::holomorphic_provider(mp), F = triple::fukaya_provider(mp);
    triple::PlantedHomotopy planted{0.01, Eigen::MatrixXcd(1, 2)};
    planted.P << cplx(0.3, -0.2), cplx(-0.5, 0.1);
    const auto p = triple::extract_homotopy_f32(H, triple::perturbed(H, planted), L, M, mp, choices);
    const auto hf = triple::extract_homotopy_f32(H, F, L, M, mp, choices);
    const double zero = hf.f.cwiseAbs().maxCoeff();
    const double plant = (p.f - planted.delta * planted.P).cwiseAbs().maxCoeff();
    const double choice = std::max(p.choice_spread, hf.choice_spread);
    const double tol = 1e-7;
    return {zero < tol && plant < tol && choice < tol,
            "H vs F map " + fmt(zero) + ", planted " + fmt(plant) + ", choice spread " + fmt(choice) +
                " (tol 1e-7); hom1 " + fmt(hf.hom1_residual)};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"Kronecker identity", kronecker},     {"primitive identity", primitive}, {"mirror m2", mirror_m2},
        {"mirror m3", mirror_m3},              {"A-infinity engine", engine},     {"Fukaya structure", fukaya_health},
        {"alpha/beta exactness", mainlem},     {"triple-product identity", proposition},
        {"homotopy extraction", extraction}};
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        failures += !o.pass;
        std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
                  << o.detail << std::endl;
    }
    std::cout << "criteria evaluated: " << criteria.size() << ", failing: " << failures << std::endl;
    return failures;
}
