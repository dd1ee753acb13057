// Triple products on sums of line bundles: providers of m2 and m3 on the
// holomorphic side and transported from the Fukaya side, the triple-product
// identity for split degrees, and extraction of the homotopy component that
// compares two m3's on H^0 x H^1.
#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ell/mirror.hpp"

namespace ell::triple {

using holo::LineBundleLabel;
using mirror::HoloMorphism;

struct TripleError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct Provider
{
    std::string name;
    std::function<HoloMorphism(const HoloMorphism&, const HoloMorphism&)> m2;
    std::function<HoloMorphism(const HoloMorphism&, const HoloMorphism&, const HoloMorphism&)> m3;
};

// Transfer from the Dolbeault algebra with the flat metric. Rank-1 objects go
// through the Hodge module; degrees (n, -n, n) with a unipotent factor on the
// source object go through the spectral route with jets.
Provider holomorphic_provider(const ModularParam& mp, int grid = 64);

// polygon counts pulled back through the exponential identification
Provider fukaya_provider(const ModularParam& mp, const fukaya::EnumOptions& opt = {});

// f2 on H^0(deg 2) x H^1(deg -1) -> H^0(deg 1) given by coefficient matrix P(j, k) (row j output, column k input s)
struct PlantedHomotopy
{
    double delta = 0;
    Eigen::MatrixXcd P; // 1 x 2: e is one-dimensional
    HoloMorphism apply(const HoloMorphism& a, const HoloMorphism& b) const;
};

// base.m3 + f2(a, bc) - f2(ab, c) + f2(a, b) c - a f2(b, c)
Provider perturbed(const Provider& base, const PlantedHomotopy& f);

// m3(s1' s1'', e, s2' s2'') = m3(s1', s1'' e, s2') s2'' + sign s1' m3(s1'', e s2', s2'') on all basis elements.
// The unipotent factor of L1' sits on the source object; L1'', M, L2', L2'' must have rank 1.
struct IdentityReport
{
    double residual = 0, scale = 0;
    int evaluations = 0;
};
IdentityReport triple_product_identity_check(const LineBundleLabel& L1a, const LineBundleLabel& L1b,
                                             const LineBundleLabel& L2a, const LineBundleLabel& L2b,
                                             const LineBundleLabel& M, const Provider& m, const ModularParam& mp,
                                             double sign = 1);

// f(s, e) = (m_b.m3 - m_a.m3)(s, e', s') with e' s' = e, deg M' = -2, deg L' = 1, M' L' = M
struct HomotopyChoice
{
    cplx u_prime;       // translation of L'
    int kernel_shift;   // which preimage e' of e: adds this many unit kernel vectors
};

struct HomotopyReport
{
    Eigen::MatrixXcd f;          // H^0(L) x H^1(M) -> H^0(LM): 1 x 2 (column k: input s_k)
    double choice_spread = 0;    // max difference between the choices
    double hom1_residual = 0;    // (m_b - m_a)(s1, s2, e) + (m_b - m_a)(s1 s2, e', s')
    double hom1_scale = 0;
};
HomotopyReport extract_homotopy_f32(const Provider& m_a, const Provider& m_b, const LineBundleLabel& L,
                                    const LineBundleLabel& M, const ModularParam& mp,
                                    const std::vector<HomotopyChoice>& choices);

} // namespace ell::triple
