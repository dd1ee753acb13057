#include "ell/holomorphic.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include "ell/chain.hpp"
#include "ell/field.hpp"
#include "ell/parallel.hpp"

namespace ell::holo {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0, 1);

Eigen::MatrixXcd nil_or_zero(const LineBundleLabel& a)
{
    return a.N.size() == 0 ? Eigen::MatrixXcd::Zero(1, 1) : a.N;
}

// base points for the sampling fit, tried in order
const std::array<cplx, 6> kBase = {cplx(0.1234, 0.2718), cplx(0.3710, 0.0613), cplx(0.0577, 0.4142),
                                   cplx(0.2236, 0.1732), cplx(0.4472, 0.3162), cplx(0.1414, 0.0999)};

} // namespace

LineBundleLabel tensor(const LineBundleLabel& a, const LineBundleLabel& b)
{
    LineBundleLabel r;
    r.n = a.n + b.n;
    r.u = a.u + b.u;
    if (a.N.size() != 0 || b.N.size() != 0) {
        const Eigen::MatrixXcd Na = nil_or_zero(a), Nb = nil_or_zero(b);
        const Eigen::MatrixXcd Ia = Eigen::MatrixXcd::Identity(Na.rows(), Na.rows());
        const Eigen::MatrixXcd Ib = Eigen::MatrixXcd::Identity(Nb.rows(), Nb.rows());
        r.N = Eigen::kroneckerProduct(Na, Ib).eval() + Eigen::kroneckerProduct(Ia, Nb).eval();
    }
    return r;
}

LineBundleLabel dual(const LineBundleLabel& a)
{
    LineBundleLabel r;
    r.n = -a.n;
    r.u = -a.u;
    if (a.N.size() != 0) r.N = -a.N.transpose();
    return r;
}

int h0_dim(int n) { return n > 0 ? n : 0; }
int h1_dim(int n) { return n < 0 ? -n : 0; }

cplx dual_class_rep(int k, int n, cplx w, cplx z, const ModularParam& mp)
{
    if (n < 1 || k < 0 || k >= n) throw HoloError("dual class index out of range");
    const double y = mp.im();
    const double z2 = split(z, mp).z2;
    // conj(theta_k^{(n, conj w)}(z)) exp(-2 pi n y z2^2), normalized so b(theta_k, e_k) = 1
    const cplx th = theta_basis<cplx>(k, n, std::conj(w), z, mp);
    return kI * std::sqrt(n / (2.0 * y)) * std::conj(th) * std::exp(-2.0 * kPi * n * y * z2 * z2);
}

cplx section_value(const SectionVector& s, cplx z, const ModularParam& mp)
{
    const int n = s.bundle.n;
    if (n == 0) throw HoloError("degree-0 bundles carry no theta basis");
    const int d = std::abs(n);
    if (s.coeffs.size() != d) throw HoloError("coefficient count does not match degree");
    cplx v = 0;
    for (int k = 0; k < d; ++k)
        v += s.coeffs[k] * (n > 0 ? theta_basis<cplx>(k, n, s.bundle.u, z, mp)
                                  : dual_class_rep(k, d, -s.bundle.u, z, mp));
    return v;
}

cplx serre_pairing_numeric(const SectionVector& f, const SectionVector& g, int grid, const ModularParam& mp)
{
    if (f.bundle.n <= 0 || g.bundle.n != -f.bundle.n) throw HoloError("pairing needs H^0 of degree n against H^1 of degree -n");
    if (std::abs(f.bundle.u + g.bundle.u) > 1e-12) throw HoloError("pairing needs dual translations");
    if (grid < 8) throw HoloError("grid too coarse");
    auto quad = [&](int G) {
        std::vector<cplx> rows(G);
        parallel_for(G, [&](std::size_t a) {
            cplx acc = 0;
            for (int b = 0; b < G; ++b) {
                const cplx z = recompose({(a + 0.5) / G, (b + 0.5) / G}, mp);
                acc += section_value(f, z, mp) * section_value(g, z, mp);
            }
            rows[a] = acc;
        });
        cplx s = 0;
        for (const auto& r : rows) s += r;
        return -2.0 * kI * mp.im() * s / double(G) / double(G);
    };
    const cplx full = quad(grid), half = quad(grid / 2);
    if (std::abs(full - half) > 1e-6 * std::max(1.0, std::abs(full)))
        throw HoloError("Serre pairing quadrature not converged at this grid");
    return full;
}

template <class S>
M2Constants<S> m2_structure_constants(int n1, const S& w1, int n2, const S& w2, const ModularParam& mp)
{
    if (n1 < 1 || n2 < 1) throw HoloError("m2 constants need positive degrees");
    const int d = n1 + n2;
    const S W = w1 + w2;
    M2Constants<S> out;
    out.n1 = n1;
    out.n2 = n2;
    out.c.assign(std::size_t(n1) * n2 * d, S(cplx(0)));
    for (const cplx z0 : kBase) {
        // theta^{(d,W)}_k(z0 + j/d) = exp(2 pi i j k / d) theta_k(z0): the sample matrix is a DFT times a diagonal
        std::vector<S> diag(d);
        bool ok = true;
        double scale = 0;
        for (int k = 0; k < d; ++k) {
            diag[k] = theta_basis<S>(k, d, W, S(z0), mp);
            scale = std::max(scale, std::abs(standard(diag[k])));
        }
        for (int k = 0; k < d; ++k)
            if (std::abs(standard(diag[k])) < 1e-6 * scale) ok = false;
        if (!ok) continue;
        double worst = 0;
        for (int k1 = 0; k1 < n1; ++k1)
            for (int k2 = 0; k2 < n2; ++k2) {
                std::vector<S> b(d);
                for (int j = 0; j < d; ++j) {
                    const S z(z0 + double(j) / d);
                    b[j] = theta_basis<S>(k1, n1, w1, z, mp) * theta_basis<S>(k2, n2, w2, z, mp);
                }
                for (int k = 0; k < d; ++k) {
                    S acc(cplx(0));
                    for (int j = 0; j < d; ++j) acc += b[j] * S(std::exp(-2.0 * kPi * kI * double(j * k) / double(d)));
                    acc *= cplx(1.0 / d);
                    out.c[(std::size_t(k1) * n2 + k2) * d + k] = acc / diag[k];
                }
                // residual at points off the sampling lattice
                for (const cplx zt : {cplx(0.31, 0.17), cplx(0.07, 0.29), cplx(0.41, 0.05)}) {
                    const cplx lhs = standard(theta_basis<S>(k1, n1, w1, S(zt), mp)) *
                                     standard(theta_basis<S>(k2, n2, w2, S(zt), mp));
                    cplx rhs = 0;
                    double mag = std::abs(lhs);
                    for (int k = 0; k < d; ++k) {
                        const cplx term = standard(out.c[(std::size_t(k1) * n2 + k2) * d + k]) *
                                          standard(theta_basis<S>(k, d, W, S(zt), mp));
                        rhs += term;
                        mag = std::max(mag, std::abs(term));
                    }
                    worst = std::max(worst, std::abs(lhs - rhs) / std::max(mag, 1e-300));
                }
            }
        out.fit_residual = worst;
        if (worst < 1e-9) return out;
    }
    throw HoloError("m2 structure constant fit failed at every base point");
}

template <class S>
std::vector<S> multiply_h0(int n1, const S& w1, const std::vector<S>& a, int n2, const S& w2,
                           const std::vector<S>& b, const ModularParam& mp)
{
    if (int(a.size()) != n1 || int(b.size()) != n2) throw HoloError("section size mismatch");
    const auto C = m2_structure_constants<S>(n1, w1, n2, w2, mp);
    std::vector<S> r(n1 + n2, S(cplx(0)));
    for (int k1 = 0; k1 < n1; ++k1)
        for (int k2 = 0; k2 < n2; ++k2)
            for (int k = 0; k < n1 + n2; ++k) r[k] += a[k1] * b[k2] * C.at(k1, k2, k);
    return r;
}

template <class S>
std::vector<S> multiply_h0_h1(int n, const S& ws, const std::vector<S>& s, int m, const S& we,
                              const std::vector<S>& e, const ModularParam& mp)
{
    if (int(s.size()) != n || int(e.size()) != m) throw HoloError("section size mismatch");
    if (m <= n) throw HoloError("product lands in a bundle without H^1");
    // coefficient j = b(theta_j^{(m-n, -ws-we)}, s e) = b(theta_j s, e)
    const int d = m - n;
    const auto C = m2_structure_constants<S>(d, S(cplx(0)) - ws - we, n, ws, mp);
    std::vector<S> r(d, S(cplx(0)));
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < m; ++l) r[j] += s[k] * C.at(j, k, l) * e[l];
    return r;
}

template <class S> S m3_basic(const S& x1, const S& x2, const S& x3, const ModularParam& mp)
{
    return S(cplx(0)) - kronecker_F_theta<S>(x1 + x2, x2 + x3, mp);
}

Eigen::MatrixXcd m3_H(cplx t, cplx u, const std::vector<Eigen::MatrixXcd>& N, const Eigen::MatrixXcd& v01,
                      const Eigen::MatrixXcd& v12, const Eigen::MatrixXcd& v23, const ModularParam& mp)
{
    if (N.size() != 4) throw HoloError("m3_H needs four nilpotents");
    std::vector<int> dims(4);
    for (int i = 0; i < 4; ++i) dims[i] = int(N[i].rows());
    const ChainSpace W(dims);
    // F(t - N2 + N0*, u - N3 + N1*) acting on Hom(V0,V1) (x) Hom(V1,V2) (x) Hom(V2,V3)
    const Eigen::MatrixXcd Tn = W.right(0, N[0]) - W.left(1, N[2]);
    const Eigen::MatrixXcd Un = W.right(1, N[1]) - W.left(2, N[3]);
    const int o1 = std::max(1, nilpotency_index(Tn)), o2 = std::max(1, nilpotency_index(Un));
    if (o1 > Jet2::kMaxOrder || o2 > Jet2::kMaxOrder) throw HoloError("nilpotent order exceeds jet capacity");
    const Jet2 T = Jet2::variable(1, t, o1, o2), U = Jet2::variable(2, u, o1, o2);
    const Jet2 c = m3_basic<Jet2>(T, Jet2(cplx(0), o1, o2), U, mp);
    const Eigen::MatrixXcd op = substitute_nilpotents(c, Tn, Un);
    return W.contract(op * W.tensor({v01, v12, v23}));
}


MainLemReport mainlem_exactness_check(const LineBundleLabel& L, const std::vector<LineBundleLabel>& S,
                                      const ModularParam& mp)
{
    if (L.n < 3) throw HoloError("Lemma check needs deg L >= 3");
    for (const auto& l : S)
        if (l.rank() != 1) throw HoloError("Lemma check is for line bundles");
    // middle summands L1 (x) L2 with L2 in S
    std::vector<int> mid_of(S.size(), -1), mid_off;
    int dim_mid = 0;
    for (std::size_t i = 0; i < S.size(); ++i) {
        if (S[i].n <= 0 || S[i].n >= L.n) continue;
        mid_of[i] = int(mid_off.size());
        mid_off.push_back(dim_mid);
        dim_mid += (L.n - S[i].n) * S[i].n;
    }
    if (dim_mid == 0) throw HoloError("no admissible splittings in S");
    struct Triple { std::size_t b, l3; int off; };
    std::vector<Triple> left;
    int dim_left = 0;
    for (std::size_t b = 0; b < S.size(); ++b)
        for (std::size_t l3 = 0; l3 < S.size(); ++l3) {
            if (mid_of[b] < 0 || mid_of[l3] < 0) continue;
            if (S[l3].n >= S[b].n) continue;
            left.push_back({b, l3, dim_left});
            dim_left += (L.n - S[b].n) * (S[b].n - S[l3].n) * S[l3].n;
        }

    Eigen::MatrixXcd beta = Eigen::MatrixXcd::Zero(L.n, dim_mid);
    for (std::size_t i = 0; i < S.size(); ++i) {
        if (mid_of[i] < 0) continue;
        const int d1 = L.n - S[i].n, d2 = S[i].n;
        const auto C = m2_structure_constants<cplx>(d1, L.u - S[i].u, d2, S[i].u, mp);
        for (int k1 = 0; k1 < d1; ++k1)
            for (int k2 = 0; k2 < d2; ++k2)
                for (int k = 0; k < L.n; ++k) beta(k, mid_off[mid_of[i]] + k1 * d2 + k2) = C.at(k1, k2, k);
    }
    Eigen::MatrixXcd alpha = Eigen::MatrixXcd::Zero(dim_mid, std::max(dim_left, 1));
    for (const auto& tr : left) {
        const LineBundleLabel& B = S[tr.b];
        const LineBundleLabel& L3 = S[tr.l3];
        const int d1 = L.n - B.n, d2 = B.n - L3.n, d3 = L3.n;
        const cplx u1 = L.u - B.u, u2 = B.u - L3.u, u3 = L3.u;
        const auto C12 = m2_structure_constants<cplx>(d1, u1, d2, u2, mp);
        const auto C23 = m2_structure_constants<cplx>(d2, u2, d3, u3, mp);
        const int offA = mid_off[mid_of[tr.l3]], offB = mid_off[mid_of[tr.b]];
        for (int k1 = 0; k1 < d1; ++k1)
            for (int k2 = 0; k2 < d2; ++k2)
                for (int k3 = 0; k3 < d3; ++k3) {
                    const int col = tr.off + (k1 * d2 + k2) * d3 + k3;
                    // s1 s2 (x) s3 in the summand (L1 L2) (x) L3
                    for (int k = 0; k < d1 + d2; ++k) alpha(offA + k * d3 + k3, col) += C12.at(k1, k2, k);
                    // - s1 (x) s2 s3 in the summand L1 (x) B
                    for (int k = 0; k < d2 + d3; ++k) alpha(offB + k1 * B.n + k, col) -= C23.at(k2, k3, k);
                }
    }
    auto rank = [](const Eigen::MatrixXcd& M) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
        const auto& sv = svd.singularValues();
        if (sv.size() == 0 || sv[0] == 0.0) return 0;
        int r = 0;
        for (int i = 0; i < sv.size(); ++i)
            if (sv[i] > 1e-9 * sv[0]) ++r;
        return r;
    };
    MainLemReport rep;
    rep.dim_left = dim_left;
    rep.dim_middle = dim_mid;
    rep.dim_target = L.n;
    rep.rank_beta = rank(beta);
    rep.beta_surjective = rep.rank_beta == L.n;
    rep.dim_ker_beta = dim_mid - rep.rank_beta;
    rep.rank_alpha = dim_left > 0 ? rank(alpha) : 0;
    rep.beta_alpha_norm = dim_left > 0 ? (beta * alpha).cwiseAbs().maxCoeff() : 0.0;
    return rep;
}

namespace {

Jet2 as_jet(const cplx& x) { return Jet2(x); }
Jet2 as_jet(const Jet2& x) { return x; }
template <class S> S from_jet(const Jet2& x);
template <> cplx from_jet<cplx>(const Jet2& x) { return x.standard(); }
template <> Jet2 from_jet<Jet2>(const Jet2& x) { return x; }

// inverse of dbar on the degree-0 bundle with translation t (all cohomology vanishes)
Field dbar_inverse_degree0(Field g, const Jet2& t, const ModularParam& mp)
{
    const int G = g.grid();
    const double y = mp.im();
    g.modulate([&](int, int b) { return exp(t * 2.0 * kPi * kI * (double(b) / G)); });
    g.fft(true);
    g.modulate([&](int a, int b) {
        const cplx s = double(frequency(a, G)) * mp.tau - double(frequency(b, G));
        Jet2 den = t + Jet2(s);
        if (std::abs(den.standard()) < 1e-12) throw HoloError("twist on the dual lattice: dbar not invertible");
        return inv(den) * Jet2(cplx(y / kPi / double(G) / double(G)));
    });
    g.fft(false);
    g.modulate([&](int, int b) { return exp(t * -2.0 * kPi * kI * (double(b) / G)); });
    return g;
}

} // namespace

template <class S>
SpectralResult<S> m3_spectral(int n, const S& w1, cplx we, cplx w2, const std::vector<S>& s1,
                              const std::vector<cplx>& e, const std::vector<cplx>& s2, const ModularParam& mp,
                              int grid)
{
    if (n < 1) throw HoloError("spectral m3 needs n >= 1");
    if (int(s1.size()) != n || int(e.size()) != n || int(s2.size()) != n) throw HoloError("section size mismatch");
    if (grid < 16 || grid % 2) throw HoloError("grid must be even and >= 16");
    const int G = grid;
    const Jet2 W1 = as_jet(w1);
    auto point = [&](double z1, double z2) { return mp.tau * z2 + z1; };
    const Field f1 = Field::sample(G, [&](double z1, double z2) {
        Jet2 v(cplx(0));
        for (int k = 0; k < n; ++k) v += as_jet(s1[k]) * theta_basis<Jet2>(k, n, W1, Jet2(point(z1, z2)), mp);
        return v;
    });
    const Field fe = Field::sample(G, [&](double z1, double z2) {
        cplx v = 0;
        for (int k = 0; k < n; ++k) v += e[k] * dual_class_rep(k, n, -we, point(z1, z2), mp);
        return Jet2(v);
    });
    const Field f2 = Field::sample(G, [&](double z1, double z2) {
        cplx v = 0;
        for (int k = 0; k < n; ++k) v += s2[k] * theta_basis<cplx>(k, n, w2, point(z1, z2), mp);
        return Jet2(v);
    });
    const Field r = dbar_inverse_degree0(f1 * fe, W1 + Jet2(we), mp) * f2 -
                    f1 * dbar_inverse_degree0(fe * f2, Jet2(we + w2), mp);

    // r is holomorphic in theta^{(n, W)}: match z1-Fourier modes row by row
    const Jet2 W = W1 + Jet2(we + w2);
    SpectralResult<S> out;
    out.coeffs.assign(n, S(cplx(0)));
    std::vector<Jet2> num(n, Jet2(cplx(0))), den(n, Jet2(cplx(0)));
    for (int b = 0; b < G; ++b) {
        const double z2 = double(b) / G;
        for (int m = -G / 2 + 1; m < G / 2; ++m) {
            Jet2 rh(cplx(0));
            for (int a = 0; a < G; ++a) rh += r.at(a, b) * Jet2(std::exp(-2.0 * kPi * kI * double(m) * double(a) / double(G)));
            rh *= cplx(1.0 / G);
            const Jet2 f = exp((Jet2(kI * kPi * mp.tau * double(m) * double(m)) + W * (2.0 * kPi * kI * double(m))) *
                                   cplx(1.0 / n) +
                               Jet2(2.0 * kPi * kI * double(m) * mp.tau * z2));
            const cplx wt = std::conj(f.standard());
            const int k = ((m % n) + n) % n;
            num[k] += rh * Jet2(wt);
            den[k] += f * Jet2(wt);
        }
    }
    for (int k = 0; k < n; ++k) out.coeffs[k] = from_jet<S>(num[k] / den[k]);
    double worst = 0;
    const double scale = std::max(r.max_standard(), 1e-300);
    for (int a = 0; a < G; a += 3)
        for (int b = 0; b < G; b += 3) {
            cplx v = 0;
            for (int k = 0; k < n; ++k)
                v += standard(out.coeffs[k]) * theta_basis<cplx>(k, n, W.standard(), point(double(a) / G, double(b) / G), mp);
            worst = std::max(worst, std::abs(v - r.at(a, b).standard()) / scale);
        }
    out.fit_residual = worst;
    return out;
}

#define ELL_HOLO_INSTANTIATE(S)                                                                              \
    template M2Constants<S> m2_structure_constants<S>(int, const S&, int, const S&, const ModularParam&);     \
    template std::vector<S> multiply_h0<S>(int, const S&, const std::vector<S>&, int, const S&,               \
                                           const std::vector<S>&, const ModularParam&);                       \
    template std::vector<S> multiply_h0_h1<S>(int, const S&, const std::vector<S>&, int, const S&,            \
                                              const std::vector<S>&, const ModularParam&);                    \
    template S m3_basic<S>(const S&, const S&, const S&, const ModularParam&);                                 \
    template SpectralResult<S> m3_spectral<S>(int, const S&, cplx, cplx, const std::vector<S>&,               \
                                              const std::vector<cplx>&, const std::vector<cplx>&,             \
                                              const ModularParam&, int);

ELL_HOLO_INSTANTIATE(cplx)
ELL_HOLO_INSTANTIATE(Jet2)

} // namespace ell::holo
