#include "ell/mirror.hpp"

#include <cmath>
#include <numbers>

#include "ell/chain.hpp"

namespace ell::mirror {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0, 1);

Eigen::MatrixXcd nil(const LineBundleLabel& b)
{
    return b.N.size() == 0 ? Eigen::MatrixXcd::Zero(1, 1) : b.N;
}

// exp(a N) for nilpotent N
Eigen::MatrixXcd exp_nil(const Eigen::MatrixXcd& N, cplx a)
{
    const long r = N.rows();
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(r, r), sum = term;
    for (long j = 1; j < r; ++j) {
        term = term * N * a / double(j);
        sum += term;
    }
    return sum;
}

// degree-0 identification for Hom(lo, hi), lo.n < hi.n: T -> e^sigma exp(a N_hi) T exp(-a N_lo)
struct Constant
{
    cplx scalar;
    Eigen::MatrixXcd E_lo, E_hi; // exp(a N_lo), exp(a N_hi)
};

Constant constant(const LineBundleLabel& lo, const LineBundleLabel& hi, const ModularParam& mp)
{
    const int d = hi.n - lo.n;
    if (d <= 0) throw MirrorError("constant needs increasing degree");
    const RealDecomposition w = split(hi.u - lo.u, mp);
    const cplx sigma = (-kI * kPi * mp.tau * w.z2 * w.z2 - 2.0 * kPi * kI * w.z2 * w.z1) / double(d);
    const cplx a = 2.0 * kPi * kI * w.z2 / double(d);
    return {std::exp(sigma), exp_nil(nil(lo), a), exp_nil(nil(hi), a)};
}

void check_shape(const Eigen::MatrixXcd& T, const LineBundleLabel& s, const LineBundleLabel& t)
{
    if (T.rows() != t.rank() || T.cols() != s.rank()) throw MirrorError("morphism matrix shape");
}

// Hom(X, Y) as a Dolbeault twist: scalar u_Y - u_X and nilpotent M -> M N_X - N_Y M
struct HomTwist
{
    int d;
    cplx w;
};
HomTwist hom_twist(const LineBundleLabel& s, const LineBundleLabel& t) { return {t.n - s.n, t.u - s.u}; }

} // namespace

void CorrespondenceContext::validate() const
{
    mp.validate();
    if (left.n == right.n) {
        const double d2 = split(right.u - left.u, mp).z2;
        if (std::abs(d2 - std::round(d2)) < 1e-12) throw MirrorError("non-transversal pair of bundles");
    }
    for (const auto* b : {&left, &right}) {
        const Eigen::MatrixXcd N = nil(*b);
        if (N.rows() != N.cols() || nilpotency_index(N) < 0) throw MirrorError("bundle operator must be nilpotent");
    }
}

fukaya::FukayaObject to_fukaya_object(int n, cplx u, const Eigen::MatrixXcd& N, const ModularParam& mp)
{
    const RealDecomposition s = split(u, mp);
    // {(u2 + x, (n-1) u2 + n x)} is the line y = n X - u2
    return fukaya::make_object(fukaya::GeodesicCircle(n, 1, -s.z2), -s.z1,
                               N.size() == 0 ? Eigen::MatrixXcd::Zero(1, 1) : N);
}

fukaya::FukayaObject to_fukaya_object(const LineBundleLabel& b, const ModularParam& mp)
{
    return to_fukaya_object(b.n, b.u, b.N, mp);
}

HoloMorphism HoloMorphism::zero(const LineBundleLabel& s, const LineBundleLabel& t)
{
    HoloMorphism h{s, t, {}};
    h.coeff.assign(std::abs(t.n - s.n), Eigen::MatrixXcd::Zero(t.rank(), s.rank()));
    return h;
}

HoloMorphism HoloMorphism::basis(const LineBundleLabel& s, const LineBundleLabel& t, int k, const Eigen::MatrixXcd& T)
{
    HoloMorphism h = zero(s, t);
    if (k < 0 || k >= int(h.coeff.size())) throw MirrorError("basis index out of range");
    check_shape(T, s, t);
    h.coeff[k] = T;
    return h;
}

double HoloMorphism::max_abs() const
{
    double m = 0;
    for (const auto& c : coeff) m = std::max(m, c.size() ? c.cwiseAbs().maxCoeff() : 0.0);
    return m;
}

fukaya::FukayaMorphism morphism_to_fukaya(const CorrespondenceContext& ctx, const Eigen::MatrixXcd& T, int k)
{
    ctx.validate();
    check_shape(T, ctx.left, ctx.right);
    const auto src = to_fukaya_object(ctx.left, ctx.mp), tgt = to_fukaya_object(ctx.right, ctx.mp);
    if (k < 0 || k >= ctx.dimension()) throw MirrorError("basis index out of range");
    Eigen::MatrixXcd M;
    if (ctx.degree() == 0) {
        const Constant c = constant(ctx.left, ctx.right, ctx.mp);
        M = c.scalar * c.E_hi * T * c.E_lo.inverse();
    } else {
        // Serre dual of the degree-0 constant of Hom(right, left)
        const Constant c = constant(ctx.right, ctx.left, ctx.mp);
        M = c.E_lo * T * c.E_hi.inverse() / c.scalar;
    }
    return fukaya::FukayaMorphism::basis(src, tgt, k, M);
}

fukaya::FukayaMorphism to_fukaya(const HoloMorphism& h, const ModularParam& mp)
{
    const CorrespondenceContext ctx{mp, h.src, h.tgt};
    ctx.validate();
    auto out = fukaya::FukayaMorphism::zero(to_fukaya_object(h.src, mp), to_fukaya_object(h.tgt, mp));
    if (out.coeff.size() != h.coeff.size()) throw MirrorError("basis size mismatch");
    for (std::size_t k = 0; k < h.coeff.size(); ++k) out.coeff[k] = morphism_to_fukaya(ctx, h.coeff[k], int(k)).coeff[k];
    return out;
}

HoloMorphism from_fukaya(const fukaya::FukayaMorphism& f, const LineBundleLabel& src, const LineBundleLabel& tgt,
                         const ModularParam& mp)
{
    const CorrespondenceContext ctx{mp, src, tgt};
    ctx.validate();
    HoloMorphism h = HoloMorphism::zero(src, tgt);
    if (f.coeff.size() != h.coeff.size()) throw MirrorError("basis size mismatch");
    for (std::size_t k = 0; k < h.coeff.size(); ++k) {
        const Eigen::MatrixXcd& M = f.coeff[k];
        if (ctx.degree() == 0) {
            const Constant c = constant(src, tgt, mp);
            h.coeff[k] = c.E_hi.inverse() * M * c.E_lo / c.scalar;
        } else {
            const Constant c = constant(tgt, src, mp);
            h.coeff[k] = c.scalar * c.E_lo.inverse() * M * c.E_hi;
        }
    }
    return h;
}

HoloMorphism m2_H(const HoloMorphism& a, const HoloMorphism& b, const ModularParam& mp)
{
    const LineBundleLabel &O0 = a.src, &O1 = a.tgt, &O2 = b.tgt;
    if (b.src.n != O1.n || std::abs(b.src.u - O1.u) > 1e-14 || b.src.rank() != O1.rank())
        throw MirrorError("morphisms are not composable");
    HoloMorphism out = HoloMorphism::zero(O0, O2);
    const ChainSpace W({O0.rank(), O1.rank(), O2.rank()});
    const Eigen::MatrixXcd X01 = W.right(0, nil(O0)) - W.left(0, nil(O1));
    const Eigen::MatrixXcd X12 = W.right(1, nil(O1)) - W.left(1, nil(O2));
    const int o1 = std::max(1, nilpotency_index(X01)), o2 = std::max(1, nilpotency_index(X12));
    const HomTwist h01 = hom_twist(O0, O1), h12 = hom_twist(O1, O2);
    const Jet2 w01 = Jet2::variable(1, h01.w, o1, o2), w12 = Jet2::variable(2, h12.w, o1, o2);
    const int da = a.degree(), db = b.degree();
    // K(j, i0, i1): coefficient of output basis j in (basis i0) * (basis i1)
    std::function<Jet2(int, int, int)> K;
    holo::M2Constants<Jet2> C;
    if (da == 0 && db == 0) {
        C = holo::m2_structure_constants<Jet2>(h01.d, w01, h12.d, w12, mp);
        K = [&](int j, int i0, int i1) { return C.at(i0, i1, j); };
    } else if (da == 0 && db == 1) {
        const int n = h01.d, m = -h12.d;
        if (m <= n) return out; // lands in H^1 of a bundle of degree >= 0
        C = holo::m2_structure_constants<Jet2>(m - n, Jet2(cplx(0)) - w01 - w12, n, w01, mp);
        K = [&](int j, int i0, int i1) { return C.at(j, i0, i1); };
    } else if (da == 1 && db == 0) {
        const int n = h12.d, m = -h01.d;
        if (m <= n) return out;
        C = holo::m2_structure_constants<Jet2>(m - n, Jet2(cplx(0)) - w12 - w01, n, w12, mp);
        K = [&](int j, int i0, int i1) { return C.at(j, i1, i0); };
    } else {
        return out;
    }
    for (std::size_t j = 0; j < out.coeff.size(); ++j)
        for (std::size_t i0 = 0; i0 < a.coeff.size(); ++i0)
            for (std::size_t i1 = 0; i1 < b.coeff.size(); ++i1) {
                if (a.coeff[i0].cwiseAbs().maxCoeff() == 0 || b.coeff[i1].cwiseAbs().maxCoeff() == 0) continue;
                const Eigen::MatrixXcd op = substitute_nilpotents(K(int(j), int(i0), int(i1)), X01, X12);
                out.coeff[j] += W.contract(op * W.tensor({a.coeff[i0], b.coeff[i1]}));
            }
    return out;
}

Report compare_m2(const std::vector<LineBundleLabel>& objs, const ModularParam& mp, double tol)
{
    if (objs.size() != 3) throw MirrorError("compare_m2 needs three objects");
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) CorrespondenceContext{mp, objs[i], objs[j]}.validate();
    Report rep;
    rep.tol = tol;
    const auto& O0 = objs[0];
    const auto& O1 = objs[1];
    const auto& O2 = objs[2];
    const int dim01 = std::abs(O1.n - O0.n), dim12 = std::abs(O2.n - O1.n);
    for (int k0 = 0; k0 < dim01; ++k0)
        for (int r0 = 0; r0 < O1.rank(); ++r0)
            for (int c0 = 0; c0 < O0.rank(); ++c0)
                for (int k1 = 0; k1 < dim12; ++k1)
                    for (int r1 = 0; r1 < O2.rank(); ++r1)
                        for (int c1 = 0; c1 < O1.rank(); ++c1) {
                            Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(O1.rank(), O0.rank());
                            Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(O2.rank(), O1.rank());
                            A(r0, c0) = 1;
                            B(r1, c1) = 1;
                            const auto a = HoloMorphism::basis(O0, O1, k0, A);
                            const auto b = HoloMorphism::basis(O1, O2, k1, B);
                            const HoloMorphism h = m2_H(a, b, mp);
                            const auto f = fukaya::m_k_F({to_fukaya(a, mp), to_fukaya(b, mp)}, mp);
                            if (f.coeff.size() != h.coeff.size()) throw MirrorError("hom dimension mismatch");
                            const HoloMorphism back = from_fukaya(f, O0, O2, mp);
                            for (std::size_t j = 0; j < h.coeff.size(); ++j)
                                rep.residual = std::max(rep.residual, (back.coeff[j] - h.coeff[j]).cwiseAbs().maxCoeff());
                        }
    return rep;
}

std::vector<LineBundleLabel> BasicConfig::objects() const
{
    if (N.size() != 4) throw MirrorError("configuration needs four nilpotents");
    return {{0, 0, N[0]}, {1, t, N[1]}, {0, t, N[2]}, {1, t + u, N[3]}};
}

namespace {

struct Chain3
{
    ChainSpace W;
    Eigen::MatrixXcd EA, EB; // N2 - N0*, N1* - N3
    int o1, o2;
};

Chain3 chain3(const BasicConfig& cfg)
{
    if (cfg.N.size() != 4) throw MirrorError("configuration needs four nilpotents");
    ChainSpace W({int(cfg.N[0].rows()), int(cfg.N[1].rows()), int(cfg.N[2].rows()), int(cfg.N[3].rows())});
    Eigen::MatrixXcd EA = W.left(1, cfg.N[2]) - W.right(0, cfg.N[0]);
    Eigen::MatrixXcd EB = W.right(1, cfg.N[1]) - W.left(2, cfg.N[3]);
    const int o1 = std::max(1, nilpotency_index(EA)), o2 = std::max(1, nilpotency_index(EB));
    if (o1 > Jet2::kMaxOrder || o2 > Jet2::kMaxOrder) throw MirrorError("nilpotent order exceeds jet capacity");
    return {std::move(W), std::move(EA), std::move(EB), o1, o2};
}

} // namespace

Eigen::MatrixXcd m3_F_closed_form(const BasicConfig& cfg, const Eigen::MatrixXcd& v01, const Eigen::MatrixXcd& v12,
                                  const Eigen::MatrixXcd& v23, const ModularParam& mp)
{
    const Chain3 c = chain3(cfg);
    const RealDecomposition t = split(cfg.t, mp), u = split(cfg.u, mp);
    const Jet2 eA = Jet2::variable(1, 0, c.o1, c.o2), eB = Jet2::variable(2, 0, c.o1, c.o2);
    const Jet2 F = kronecker_F_theta<Jet2>(Jet2(cfg.t) - eA, Jet2(cfg.u) + eB, mp);
    const Jet2 C = exp(Jet2(-2.0 * kPi * kI * mp.tau * t.z2 * u.z2) - (Jet2(u.z1) + eB) * (2.0 * kPi * kI * t.z2) +
                       (Jet2(-t.z1) + eA) * (2.0 * kPi * kI * u.z2));
    const Eigen::MatrixXcd op = substitute_nilpotents(Jet2(cplx(0)) - F * C, c.EA, c.EB);
    return c.W.contract(op * c.W.tensor({v01, v12, v23}));
}

Eigen::MatrixXcd m3_F_lattice(const BasicConfig& cfg, const Eigen::MatrixXcd& v01, const Eigen::MatrixXcd& v12,
                              const Eigen::MatrixXcd& v23, const ModularParam& mp)
{
    const Chain3 c = chain3(cfg);
    const RealDecomposition t = split(cfg.t, mp), u = split(cfg.u, mp);
    if (std::abs(t.z2 - std::round(t.z2)) < 1e-9 || std::abs(u.z2 - std::round(u.z2)) < 1e-9)
        throw MirrorError("lattice sum needs t2, u2 not in Z");
    const double y = mp.im();
    // sum over (m - t2)(n + u2) > 0 of sign(m - t2) exp(2 pi i (tau a b + a B + b A)), a = m - t2, b = n + u2.
    // |term| = exp(-2 pi Im(tau) a b); jets add polynomial factors
    const double Pmax = (-std::log(mp.tol) + 40.0) / (2.0 * kPi * y);
    const Jet2 eA = Jet2::variable(1, 0, c.o1, c.o2), eB = Jet2::variable(2, 0, c.o1, c.o2);
    const Jet2 A = Jet2(-t.z1) + eA, B = Jet2(u.z1) + eB;
    Jet2 sum(cplx(0), c.o1, c.o2);
    for (int side : {1, -1}) {
        // side = +1: m > t2, n > -u2; side = -1: m < t2, n < -u2
        for (long dm = 0;; ++dm) {
            const long m = side > 0 ? long(std::floor(t.z2)) + 1 + dm : long(std::ceil(t.z2)) - 1 - dm;
            const double a = double(m) - t.z2;
            const double n0 = side > 0 ? std::floor(-u.z2) + 1 : std::ceil(-u.z2) - 1;
            if (a * (n0 + u.z2) > Pmax) break;
            for (long dn = 0;; ++dn) {
                const double n = n0 + side * double(dn);
                const double b = n + u.z2;
                if (a * b > Pmax) break;
                const Jet2 e = Jet2(2.0 * kPi * kI * mp.tau * a * b) + B * (2.0 * kPi * kI * a) + A * (2.0 * kPi * kI * b);
                sum += exp(e) * cplx(side);
            }
        }
    }
    const Eigen::MatrixXcd op = substitute_nilpotents(Jet2(cplx(0)) - sum, c.EA, c.EB);
    return c.W.contract(op * c.W.tensor({v01, v12, v23}));
}

M3Report compare_m3(const BasicConfig& cfg, const Eigen::MatrixXcd& v01, const Eigen::MatrixXcd& v12,
                    const Eigen::MatrixXcd& v23, const ModularParam& mp)
{
    const auto O = cfg.objects();
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (O[i].n != O[j].n) CorrespondenceContext{mp, O[i], O[j]}.validate();
    const Eigen::MatrixXcd H = holo::m3_H(cfg.t, cfg.u, cfg.N, v01, v12, v23, mp);
    const auto f01 = morphism_to_fukaya({mp, O[0], O[1]}, v01, 0);
    const auto f12 = morphism_to_fukaya({mp, O[1], O[2]}, v12, 0);
    const auto f23 = morphism_to_fukaya({mp, O[2], O[3]}, v23, 0);
    const Eigen::MatrixXcd closed = m3_F_closed_form(cfg, f01.coeff[0], f12.coeff[0], f23.coeff[0], mp);
    const Eigen::MatrixXcd lattice = m3_F_lattice(cfg, f01.coeff[0], f12.coeff[0], f23.coeff[0], mp);
    const auto poly = fukaya::m_k_F({f01, f12, f23}, mp);
    M3Report rep;
    rep.closed_vs_polygon = (closed - poly.coeff[0]).cwiseAbs().maxCoeff();
    rep.closed_vs_lattice = (closed - lattice).cwiseAbs().maxCoeff();
    fukaya::FukayaMorphism out = poly;
    out.coeff[0] = closed;
    const HoloMorphism back = from_fukaya(out, O[0], O[3], mp);
    rep.residual = (back.coeff[0] - H).cwiseAbs().maxCoeff();
    return rep;
}

CFactorReport c_factor_isolation(cplx t, cplx u, const ModularParam& mp)
{
    const Eigen::MatrixXcd Z = Eigen::MatrixXcd::Zero(1, 1), one = Eigen::MatrixXcd::Ones(1, 1);
    const BasicConfig cfg{t, u, {Z, Z, Z, Z}};
    const cplx H = holo::m3_H(t, u, cfg.N, one, one, one, mp)(0, 0);
    const cplx F = m3_F_closed_form(cfg, one, one, one, mp)(0, 0);
    const RealDecomposition a = split(t, mp), b = split(u, mp);
    const cplx C = std::exp(-2.0 * kPi * kI * mp.tau * a.z2 * b.z2 - 2.0 * kPi * kI * a.z2 * b.z1 -
                            2.0 * kPi * kI * b.z2 * a.z1);
    return {std::abs(H - F), std::abs(H - F / C)};
}

} // namespace ell::mirror
