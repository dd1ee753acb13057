#include "ell/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>
#include <vector>

namespace ell {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0, 1);

// Gaussian tails get this many extra e-folds to absorb polynomial prefactors
constexpr double kMargin = 25.0;

double log_inv_tol(const ModularParam& mp) { return -std::log(mp.tol) + kMargin; }

void count_terms(long& used, const ModularParam& mp)
{
    if (++used > mp.max_terms) throw TruncationError("series cutoff exceeded before tolerance met");
}

template <class S> S scaled(const S& x, cplx s)
{
    S r = x;
    r *= s;
    return r;
}

template <class S> S theta_series(int k, int n, const S& w, const S& z, const ModularParam& mp,
                                  bool derivative)
{
    using std::exp;
    if (n < 1 || k < 0 || k >= n) throw std::invalid_argument("theta basis index out of range");
    const double peak = -(standard(z) * double(n) + standard(w)).imag() / mp.im();
    const double width = std::sqrt(n * log_inv_tol(mp) / (kPi * mp.im())) + n + 1;
    const long jlo = static_cast<long>(std::floor((peak - width - k) / n));
    const long jhi = static_cast<long>(std::ceil((peak + width - k) / n));
    const S nzw = z * S(cplx(n)) + w;
    S sum(cplx(0));
    long used = 0;
    for (long j = jlo; j <= jhi; ++j) {
        count_terms(used, mp);
        const double m = double(k) + double(n) * double(j);
        S e = scaled(nzw, 2.0 * kPi * kI * m / double(n));
        e += S(kI * kPi * mp.tau * m * m / double(n));
        S term = exp(e);
        if (derivative) term *= cplx(2.0 * kPi * kI * m);
        sum += term;
    }
    return sum;
}

} // namespace

void ModularParam::validate() const
{
    if (!(tau.imag() > 0)) throw std::invalid_argument("Im(tau) must be positive");
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
}

RealDecomposition split(cplx z, const ModularParam& mp)
{
    const double z2 = z.imag() / mp.im();
    return {z.real() - z2 * mp.tau.real(), z2};
}

cplx recompose(const RealDecomposition& d, const ModularParam& mp) { return d.z1 + mp.tau * d.z2; }

template <class S> S theta(const S& z, const ModularParam& mp)
{
    return theta_series(0, 1, S(cplx(0)), z, mp, false);
}

template <class S> S theta_prime(const S& z, const ModularParam& mp)
{
    return theta_series(0, 1, S(cplx(0)), z, mp, true);
}

template <class S> S theta_basis(int k, int n, const S& w, const S& z, const ModularParam& mp)
{
    return theta_series(k, n, w, z, mp, false);
}

cplx alpha(cplx z, const ModularParam& mp)
{
    const double z2 = split(z, mp).z2;
    return kI / std::sqrt(2.0 * mp.im()) * std::conj(theta(z, mp)) *
           std::exp(-2.0 * kPi * mp.im() * z2 * z2);
}

template <class S> S h(const S& z, const S& u, const ModularParam& mp, HOrder order)
{
    using std::exp;
    const double y = mp.im();
    // holomorphic real coordinates: z2 = (z - conj(z0)) / (2i Im tau), z1 = z - tau z2
    const S z2 = scaled(z - S(std::conj(standard(z))), 1.0 / (2.0 * kI * y));
    const S z1 = z - scaled(z2, mp.tau);
    const RealDecomposition ud = split(standard(u), mp);
    const long m0 = std::lround(-ud.z2), n0 = std::lround(ud.z1);

    // |term| ~ exp(-pi |gamma+u|^2 / (2 Im tau)); |gamma+u| >= Im tau |m+u2|, |Re(gamma+u)| bounded similarly
    const double rad = std::sqrt(2.0 * y * log_inv_tol(mp) / kPi);
    const long Rm = static_cast<long>(std::ceil(rad / y)) + 2;
    const long Rn = static_cast<long>(std::ceil(rad + std::abs(mp.tau.real()) * (Rm + 1))) + 2;

    std::vector<std::tuple<double, long, long>> pts;
    for (long dm = -Rm; dm <= Rm; ++dm)
        for (long dn = -Rn; dn <= Rn; ++dn) {
            const long m = m0 + dm, n = n0 + dn;
            const cplx g = double(m) * mp.tau - double(n) + standard(u);
            if (std::abs(g) < mp.pole_tol) throw PoleError("pole of h");
            double key;
            if (order == HOrder::Square)
                key = double(std::max(std::abs(dm), std::abs(dn)));
            else
                key = std::abs(g);
            pts.emplace_back(key, m, n);
        }
    std::stable_sort(pts.begin(), pts.end(),
                     [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
    if (static_cast<long>(pts.size()) > mp.max_terms) throw TruncationError("h: cutoff exceeded");

    S sum(cplx(0));
    for (const auto& [key, m, n] : pts) {
        const cplx g = double(m) * mp.tau - double(n);
        const double sgn = ((m * n) % 2 == 0) ? 1.0 : -1.0;
        S e = u * u;
        e += scaled(u, 2.0 * std::conj(g));
        e += S(cplx(std::norm(g)));
        e *= cplx(-kPi / (2.0 * y));
        e += scaled(z1, 2.0 * kPi * kI * double(m));
        e += scaled((S(cplx(double(n))) - u) * z2, 2.0 * kPi * kI);
        S term = exp(e) / (u + S(g));
        term *= cplx(sgn);
        sum += term;
    }
    return scaled(sum, -1.0 / (2.0 * kPi * kI));
}

template <class S> S kronecker_F_theta(const S& t, const S& u, const ModularParam& mp)
{
    const cplx z0 = (mp.tau + 1.0) / 2.0;
    const S a = t + S(z0), b = S(z0) - u;
    for (const S* x : {&a, &b}) {
        const cplx th = theta(standard(*x), mp), dth = theta_prime(standard(*x), mp);
        if (std::abs(th) <= mp.pole_tol * std::abs(dth)) throw PoleError("pole of F");
    }
    const cplx d0 = theta_prime(z0, mp);
    S num = theta(t - u + S(z0), mp);
    num *= d0 / (2.0 * kPi * kI);
    return num / (theta(a, mp) * theta(b, mp));
}

template <class S> S kronecker_F_lattice(const S& t, const S& u, const ModularParam& mp)
{
    using std::exp;
    const double t2 = split(standard(t), mp).z2, u2 = split(standard(u), mp).z2;
    const double dt = t2 - std::round(t2), du = u2 - std::round(u2);
    if (std::abs(dt) < mp.pole_tol || std::abs(du) < mp.pole_tol)
        throw PoleError("lattice sum needs t2, u2 off the integers");
    // |term| = exp(-2 pi Im tau ((m-t2)(n+u2) + t2 u2)); keep (m-t2)(n+u2) <= L
    const double L = log_inv_tol(mp) / (2.0 * kPi * mp.im());
    S sum(cplx(0));
    long used = 0;
    for (int side : {1, -1}) {
        // side +1: m > t2, n > -u2; side -1: m < t2, n < -u2
        const long mstart = side > 0 ? long(std::floor(t2)) + 1 : long(std::ceil(t2)) - 1;
        const long nstart = side > 0 ? long(std::floor(-u2)) + 1 : long(std::ceil(-u2)) - 1;
        for (long m = mstart;; m += side) {
            const double a = std::abs(double(m) - t2);
            const double bmin = std::abs(double(nstart) + u2);
            if (a * bmin > L) break;
            S row(cplx(0));
            for (long n = nstart;; n += side) {
                const double b = std::abs(double(n) + u2);
                if (a * b > L) break;
                count_terms(used, mp);
                S e = scaled(u, double(m)) - scaled(t, double(n));
                e *= 2.0 * kPi * kI;
                e += S(2.0 * kPi * kI * mp.tau * double(m) * double(n));
                row += exp(e);
            }
            row *= cplx(double(side));
            sum += row;
        }
    }
    return sum;
}

#define ELL_THETA_INSTANTIATE(S)                                                                   \
    template S theta<S>(const S&, const ModularParam&);                                            \
    template S theta_prime<S>(const S&, const ModularParam&);                                      \
    template S theta_basis<S>(int, int, const S&, const S&, const ModularParam&);                  \
    template S h<S>(const S&, const S&, const ModularParam&, HOrder);                              \
    template S kronecker_F_theta<S>(const S&, const S&, const ModularParam&);                      \
    template S kronecker_F_lattice<S>(const S&, const S&, const ModularParam&);

ELL_THETA_INSTANTIATE(cplx)
ELL_THETA_INSTANTIATE(Jet2)

} // namespace ell
