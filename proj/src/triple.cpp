#include "ell/triple.hpp"

#include <cmath>

#include "ell/hodge.hpp"

namespace ell::triple {

namespace {

using mirror::from_fukaya;
using mirror::to_fukaya;

bool same_object(const LineBundleLabel& a, const LineBundleLabel& b)
{
    return a.n == b.n && std::abs(a.u - b.u) < 1e-12 && a.rank() == b.rank();
}

void check_composable(const HoloMorphism& a, const HoloMorphism& b)
{
    if (!same_object(a.tgt, b.src)) throw TripleError("morphisms are not composable");
}

HoloMorphism add(HoloMorphism a, const HoloMorphism& b, cplx s = 1)
{
    if (a.coeff.size() != b.coeff.size()) throw TripleError("adding morphisms of different spaces");
    for (std::size_t k = 0; k < a.coeff.size(); ++k) a.coeff[k] += s * b.coeff[k];
    return a;
}

double diff(const HoloMorphism& a, const HoloMorphism& b)
{
    double m = 0;
    for (std::size_t k = 0; k < a.coeff.size(); ++k) m = std::max(m, (a.coeff[k] - b.coeff[k]).cwiseAbs().maxCoeff());
    return m;
}

hodge::ClassVector to_class(const HoloMorphism& h)
{
    if (h.src.rank() != 1 || h.tgt.rank() != 1) throw TripleError("Hodge route needs rank-1 objects");
    hodge::ClassVector c{{h.tgt.n - h.src.n, h.tgt.u - h.src.u}, h.degree(), Eigen::VectorXcd(h.coeff.size())};
    for (std::size_t k = 0; k < h.coeff.size(); ++k) c.coeffs[Eigen::Index(k)] = h.coeff[k](0, 0);
    return c;
}

HoloMorphism from_class(const hodge::ClassVector& c, const LineBundleLabel& src, const LineBundleLabel& tgt)
{
    HoloMorphism out = HoloMorphism::zero(src, tgt);
    if (out.coeff.empty() || c.q != out.degree()) return out;
    for (std::size_t k = 0; k < out.coeff.size(); ++k) out.coeff[k](0, 0) = c.coeffs[Eigen::Index(k)];
    return out;
}

// degrees (n, -n, n); objects after the source have rank 1, the source may carry a unipotent factor
HoloMorphism m3_spectral_jets(const HoloMorphism& a, const HoloMorphism& b, const HoloMorphism& c,
                              const ModularParam& mp, int grid)
{
    const int n = a.tgt.n - a.src.n;
    const int r = a.src.rank();
    const Eigen::MatrixXcd N0 = a.src.N.size() == 0 ? Eigen::MatrixXcd::Zero(1, 1) : a.src.N;
    const int o = std::max(1, nilpotency_index(N0));
    const Jet2 w1 = Jet2::variable(1, a.tgt.u - a.src.u, o, 1);
    const cplx we = b.tgt.u - b.src.u, w2 = c.tgt.u - c.src.u;
    HoloMorphism out = HoloMorphism::zero(a.src, c.tgt);
    const Eigen::MatrixXcd Z = Eigen::MatrixXcd::Zero(r, r);
    for (int k1 = 0; k1 < n; ++k1) {
        if (a.coeff[k1].cwiseAbs().maxCoeff() == 0) continue;
        for (int ke = 0; ke < n; ++ke)
            for (int k2 = 0; k2 < n; ++k2) {
                const cplx scalar = b.coeff[ke](0, 0) * c.coeff[k2](0, 0);
                if (scalar == cplx(0)) continue;
                std::vector<Jet2> s1(n, Jet2(cplx(0)));
                std::vector<cplx> e(n, 0), s2(n, 0);
                s1[k1] = Jet2(cplx(1));
                e[ke] = 1;
                s2[k2] = 1;
                const auto res = holo::m3_spectral<Jet2>(n, w1, we, w2, s1, e, s2, mp, grid);
                // the twist of Hom(O0, -) acts on coefficients by right multiplication with N0
                for (int j = 0; j < n; ++j)
                    out.coeff[j] += scalar * a.coeff[k1] * substitute_nilpotents(res.coeffs[j], N0, Z);
            }
    }
    return out;
}

} // namespace

Provider holomorphic_provider(const ModularParam& mp, int grid)
{
    Provider p;
    p.name = "holomorphic";
    p.m2 = [mp](const HoloMorphism& a, const HoloMorphism& b) {
        check_composable(a, b);
        return mirror::m2_H(a, b, mp);
    };
    p.m3 = [mp, grid](const HoloMorphism& a, const HoloMorphism& b, const HoloMorphism& c) {
        check_composable(a, b);
        check_composable(b, c);
        const int n = a.tgt.n - a.src.n;
        const bool rest_scalar = a.tgt.rank() == 1 && b.tgt.rank() == 1 && c.tgt.rank() == 1;
        if (n > 0 && b.tgt.n - b.src.n == -n && c.tgt.n - c.src.n == n && rest_scalar)
            return m3_spectral_jets(a, b, c, mp, grid);
        return from_class(hodge::m3(to_class(a), to_class(b), to_class(c), mp, grid), a.src, c.tgt);
    };
    return p;
}

Provider fukaya_provider(const ModularParam& mp, const fukaya::EnumOptions& opt)
{
    Provider p;
    p.name = "fukaya";
    p.m2 = [mp, opt](const HoloMorphism& a, const HoloMorphism& b) {
        check_composable(a, b);
        return from_fukaya(fukaya::m_k_F({to_fukaya(a, mp), to_fukaya(b, mp)}, mp, opt), a.src, b.tgt, mp);
    };
    p.m3 = [mp, opt](const HoloMorphism& a, const HoloMorphism& b, const HoloMorphism& c) {
        check_composable(a, b);
        check_composable(b, c);
        return from_fukaya(fukaya::m_k_F({to_fukaya(a, mp), to_fukaya(b, mp), to_fukaya(c, mp)}, mp, opt), a.src,
                           c.tgt, mp);
    };
    return p;
}

HoloMorphism PlantedHomotopy::apply(const HoloMorphism& a, const HoloMorphism& b) const
{
    HoloMorphism out = HoloMorphism::zero(a.src, b.tgt);
    if (a.degree() != 0 || a.tgt.n - a.src.n != 2 || b.degree() != 1 || b.tgt.n - b.src.n != -1) return out;
    if (P.rows() != 1 || P.cols() != 2) throw TripleError("planted homotopy needs a 1 x 2 matrix");
    for (int k = 0; k < 2; ++k) out.coeff[0] += delta * P(0, k) * b.coeff[0] * a.coeff[k];
    return out;
}

Provider perturbed(const Provider& base, const PlantedHomotopy& f)
{
    Provider p = base;
    p.name = base.name + "+planted";
    p.m3 = [base, f](const HoloMorphism& a, const HoloMorphism& b, const HoloMorphism& c) {
        HoloMorphism out = base.m3(a, b, c);
        out = add(out, f.apply(a, base.m2(b, c)));
        out = add(out, f.apply(base.m2(a, b), c), -1.0);
        out = add(out, base.m2(f.apply(a, b), c));
        out = add(out, base.m2(a, f.apply(b, c)), -1.0);
        return out;
    };
    return p;
}

IdentityReport triple_product_identity_check(const LineBundleLabel& L1a, const LineBundleLabel& L1b,
                                             const LineBundleLabel& L2a, const LineBundleLabel& L2b,
                                             const LineBundleLabel& M, const Provider& m, const ModularParam& mp,
                                             double sign)
{
    for (const auto* l : {&L1b, &L2a, &L2b, &M})
        if (l->rank() != 1) throw TripleError("only the first factor may carry a unipotent part");
    if (L1a.n <= 0 || L1b.n <= 0 || L2a.n <= 0 || L2b.n <= 0) throw TripleError("split factors need positive degree");
    const int n = -M.n;
    if (L1a.n + L1b.n != n || L2a.n + L2b.n != n) throw TripleError("degrees must satisfy deg L1 = deg L2 = -deg M");
    const Eigen::MatrixXcd N = L1a.N.size() == 0 ? Eigen::MatrixXcd::Zero(1, 1) : L1a.N;
    const Eigen::MatrixXcd Z = Eigen::MatrixXcd::Zero(1, 1);
    std::vector<LineBundleLabel> O{{0, 0, -N.transpose()}};
    O.push_back({L1a.n, L1a.u, Z});
    for (const auto* l : {&L1b, &M, &L2a, &L2b}) O.push_back({O.back().n + l->n, O.back().u + l->u, Z});
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) mirror::CorrespondenceContext{mp, O[i], O[j]}.validate();

    const int r = N.rows();
    IdentityReport rep;
    const auto unit = [](int rows, int cols, int c) {
        Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(rows, cols);
        U(0, c) = 1;
        return U;
    };
    const Eigen::MatrixXcd one = Eigen::MatrixXcd::Ones(1, 1);
    for (int k1 = 0; k1 < L1a.n; ++k1)
        for (int col = 0; col < r; ++col)
            for (int k2 = 0; k2 < L1b.n; ++k2)
                for (int ke = 0; ke < n; ++ke)
                    for (int k3 = 0; k3 < L2a.n; ++k3)
                        for (int k4 = 0; k4 < L2b.n; ++k4) {
                            const auto s1a = HoloMorphism::basis(O[0], O[1], k1, unit(1, r, col));
                            const auto s1b = HoloMorphism::basis(O[1], O[2], k2, one);
                            const auto e = HoloMorphism::basis(O[2], O[3], ke, one);
                            const auto s2a = HoloMorphism::basis(O[3], O[4], k3, one);
                            const auto s2b = HoloMorphism::basis(O[4], O[5], k4, one);
                            const HoloMorphism lhs = m.m3(m.m2(s1a, s1b), e, m.m2(s2a, s2b));
                            const HoloMorphism t1 = m.m2(m.m3(s1a, m.m2(s1b, e), s2a), s2b);
                            const HoloMorphism t2 = m.m2(s1a, m.m3(s1b, m.m2(e, s2a), s2b));
                            rep.residual = std::max(rep.residual, diff(lhs, add(t1, t2, sign)));
                            rep.scale = std::max(rep.scale, lhs.max_abs());
                            ++rep.evaluations;
                        }
    return rep;
}

HomotopyReport extract_homotopy_f32(const Provider& m_a, const Provider& m_b, const LineBundleLabel& L,
                                    const LineBundleLabel& M, const ModularParam& mp,
                                    const std::vector<HomotopyChoice>& choices)
{
    if (L.n != 2 || M.n != -1) throw TripleError("extraction needs deg L = 2 and deg M = -1");
    if (L.rank() != 1 || M.rank() != 1) throw TripleError("extraction works with rank-1 labels");
    if (choices.empty()) throw TripleError("at least one auxiliary choice is needed");
    const Eigen::MatrixXcd one = Eigen::MatrixXcd::Ones(1, 1);
    const LineBundleLabel O0{0, 0, {}}, O1{2, L.u, {}}, O3{1, L.u + M.u, {}};
    const auto diff3 = [&](const HoloMorphism& a, const HoloMorphism& b, const HoloMorphism& c) {
        return add(m_b.m3(a, b, c), m_a.m3(a, b, c), -1.0);
    };
    const auto e = HoloMorphism::basis(O1, O3, 0, one);

    HomotopyReport rep;
    for (std::size_t ci = 0; ci < choices.size(); ++ci) {
        // M' = M L'^{-1}: O1 -> O2 of degree -2, L': O2 -> O3 of degree 1
        const LineBundleLabel O2{0, L.u + M.u - choices[ci].u_prime, {}};
        for (const auto& [x, y] : {std::pair{O0, O2}, std::pair{O1, O2}, std::pair{O2, O3}})
            mirror::CorrespondenceContext{mp, x, y}.validate();
        const auto sp = HoloMorphism::basis(O2, O3, 0, one);
        // preimage e' of e under e' -> e' s'
        cplx c[2];
        for (int j = 0; j < 2; ++j) c[j] = m_a.m2(HoloMorphism::basis(O1, O2, j, one), sp).coeff[0](0, 0);
        const double nc = std::sqrt(std::norm(c[0]) + std::norm(c[1]));
        if (nc < 1e-12) throw TripleError("e' -> e' s' vanishes");
        HoloMorphism ep = HoloMorphism::zero(O1, O2);
        for (int j = 0; j < 2; ++j) {
            const cplx kern = j == 0 ? -c[1] : c[0];
            ep.coeff[j](0, 0) = std::conj(c[j]) / (nc * nc) + double(choices[ci].kernel_shift) * kern / nc;
        }
        if (diff(m_a.m2(ep, sp), e) > 1e-10) throw TripleError("preimage of e not found");

        Eigen::MatrixXcd f(1, 2);
        for (int k = 0; k < 2; ++k) f(0, k) = diff3(HoloMorphism::basis(O0, O1, k, one), ep, sp).coeff[0](0, 0);
        if (ci == 0) {
            rep.f = f;
            // hom1 through an intermediate degree-1 object
            const LineBundleLabel Oa{1, 0.5 * L.u + cplx(0.137, 0.0) + 0.071 * mp.tau, {}};
            const auto s1 = HoloMorphism::basis(O0, Oa, 0, one), s2 = HoloMorphism::basis(Oa, O1, 0, one);
            const HoloMorphism lhs = diff3(s1, s2, e);
            const HoloMorphism rhs = diff3(m_a.m2(s1, s2), ep, sp);
            rep.hom1_residual = diff(lhs, add(HoloMorphism::zero(O0, O3), rhs, -1.0));
            rep.hom1_scale = std::max(lhs.max_abs(), rhs.max_abs());
        } else {
            rep.choice_spread = std::max(rep.choice_spread, (f - rep.f).cwiseAbs().maxCoeff());
        }
    }
    return rep;
}

} // namespace ell::triple
