#include "test_main.hpp"

#include "ell/triple.hpp"

using namespace ell;
using namespace ell::triple;

namespace {

const ModularParam kMp(cplx(0.2, 1.1));

cplx tw(double a, double b) { return cplx(a) + b * kMp.tau; }

const Eigen::MatrixXcd kZ = Eigen::MatrixXcd::Zero(1, 1);

Eigen::MatrixXcd jordan2()
{
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(2, 2);
    J(0, 1) = 1;
    return J;
}

// parallel circles half a period apart
const LineBundleLabel L1a{1, tw(0.11, 0.23), kZ}, L1b{1, tw(-0.07, 0.31), kZ}, L2a{1, tw(0.19, 0.23), kZ},
    L2b{1, tw(0.05, 0.31), kZ}, M2{-2, tw(0.03, -0.04), kZ};

const LineBundleLabel L{2, tw(0.12, 0.21), kZ}, M1{-1, tw(-0.04, 0.37), kZ};
const std::vector<HomotopyChoice> kChoices{{tw(0.09, 0.14), 0}, {tw(-0.13, 0.41), 1}};

} // namespace

TEST_CASE("triple-product identity for a 1+1 split")
{
    const Provider H = holomorphic_provider(kMp), F = fukaya_provider(kMp);
    const LineBundleLabel L1j{1, L1a.u, jordan2()};
    for (const Provider* p : {&H, &F}) {
        const IdentityReport r = triple_product_identity_check(L1a, L1b, L2a, L2b, M2, *p, kMp);
        INFO(p->name << " residual " << r.residual << " scale " << r.scale);
        CHECK(r.evaluations == 2);
        CHECK(r.scale > 1e-3);
        CHECK(r.residual < 1e-7);
        const IdentityReport j = triple_product_identity_check(L1j, L1b, L2a, L2b, M2, *p, kMp);
        CHECK(j.evaluations == 4);
        CHECK(j.residual < 1e-6);
        const IdentityReport w = triple_product_identity_check(L1a, L1b, L2a, L2b, M2, *p, kMp, -1);
        CHECK(w.residual > 0.5 * w.scale);
    }
}

TEST_CASE("triple-product identity rejects bad data")
{
    const Provider H = holomorphic_provider(kMp);
    const LineBundleLabel bad{1, L1b.u, jordan2()};
    CHECK_THROWS_AS(triple_product_identity_check(L1a, bad, L2a, L2b, M2, H, kMp), TripleError);
    const LineBundleLabel M3{-3, M2.u, kZ};
    CHECK_THROWS_AS(triple_product_identity_check(L1a, L1b, L2a, L2b, M3, H, kMp), TripleError);
    // degree-0 objects at the same height are not transversal
    const LineBundleLabel flat{-2, tw(0.03, -0.54), kZ};
    CHECK_THROWS(triple_product_identity_check(L1a, L1b, L2a, L2b, flat, H, kMp));
}

TEST_CASE("homotopy extraction")
{
    const Provider H = holomorphic_provider(kMp), F = fukaya_provider(kMp);
    const HomotopyReport same = extract_homotopy_f32(H, H, L, M1, kMp, kChoices);
    CHECK(same.f.cwiseAbs().maxCoeff() < 1e-12);

    PlantedHomotopy planted{0.01, Eigen::MatrixXcd(1, 2)};
    planted.P << cplx(0.3, -0.2), cplx(-0.5, 0.1);
    const HomotopyReport p = extract_homotopy_f32(H, perturbed(H, planted), L, M1, kMp, kChoices);
    CHECK((p.f - planted.delta * planted.P).cwiseAbs().maxCoeff() < 1e-7);
    CHECK(p.choice_spread < 1e-7);
    CHECK(p.hom1_residual < 1e-9);

    // the transferred and polygon structures differ here by a homotopy that is independent of the choices
    const HomotopyReport hf = extract_homotopy_f32(H, F, L, M1, kMp, kChoices);
    MESSAGE("extracted map " << hf.f);
    CHECK(hf.choice_spread < 1e-7);
    CHECK(hf.hom1_residual < 1e-9);
    CHECK(hf.hom1_scale > 1e-3);

    CHECK_THROWS_AS(extract_homotopy_f32(H, F, M1, L, kMp, kChoices), TripleError);
    CHECK_THROWS_AS(extract_homotopy_f32(H, F, L, M1, kMp, {}), TripleError);
}
