#include "ell/hodge.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "ell/holomorphic.hpp"
#include "ell/parallel.hpp"

namespace ell::hodge {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0, 1);

std::mutex& plan_mutex()
{
    static std::mutex m;
    return m;
}

// unnormalized DFT along z1 (index a) of every row b; forward uses exp(-2 pi i ...)
void fft_z1(std::vector<cplx>& v, int G, bool forward)
{
    fftw_complex* buf = reinterpret_cast<fftw_complex*>(v.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        int n[1] = {G};
        plan = fftw_plan_many_dft(1, n, G, buf, nullptr, G, 1, buf, nullptr, G, 1,
                                  forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
}

void fft_2d(std::vector<cplx>& v, int G, bool forward)
{
    fftw_complex* buf = reinterpret_cast<fftw_complex*>(v.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_2d(G, G, buf, buf, forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
}

int freq(int i, int G) { return i < (G + 1) / 2 ? i : i - G; }

cplx point(int a, int b, int G, const ModularParam& mp) { return double(a) / G + mp.tau * (double(b) / G); }

Form zero_form(Bundle bd, int q, int G)
{
    return Form{bd, q, G, std::vector<cplx>(std::size_t(G) * G, cplx(0))};
}

// hermitian metric weight at height z2
double metric(const Bundle& bd, double z2, const ModularParam& mp)
{
    return std::exp(-2.0 * kPi * bd.d * mp.im() * z2 * z2 - 4.0 * kPi * bd.w.imag() * z2);
}

Form green_degree0(const Form& g, const ModularParam& mp)
{
    const int G = g.G;
    const cplx t = g.bundle.w;
    const double y = mp.im();
    Form out = g;
    auto& v = out.v;
    for (int a = 0; a < G; ++a)
        for (int b = 0; b < G; ++b) v[std::size_t(a) * G + b] *= std::exp(2.0 * kPi * kI * t * (double(b) / G));
    fft_2d(v, G, true);
    for (int a = 0; a < G; ++a)
        for (int b = 0; b < G; ++b) {
            const cplx den = double(freq(a, G)) * mp.tau - double(freq(b, G)) + t;
            if (std::abs(den) < 1e-12) throw HodgeError("trivial degree-0 bundle: dbar not invertible");
            v[std::size_t(a) * G + b] *= y / (kPi * den) / double(G) / double(G);
        }
    fft_2d(v, G, false);
    for (int a = 0; a < G; ++a)
        for (int b = 0; b < G; ++b) v[std::size_t(a) * G + b] *= std::exp(-2.0 * kPi * kI * t * (double(b) / G));
    out.q = 0;
    return out;
}

// Gauss-Legendre nodes and weights on [0,1]
constexpr int kGL = 8;
const std::array<double, kGL> kNode = {0.019855071751231856, 0.10166676129318664, 0.2372337950418355,
                                       0.4082826787521751,  0.5917173212478249,  0.7627662049581645,
                                       0.8983332387068134,  0.9801449282487681};
const std::array<double, kGL> kWeight = {0.05061426814518813, 0.11119051722668724, 0.15685332293894363,
                                         0.18134189168918100, 0.18134189168918100, 0.15685332293894363,
                                         0.11119051722668724, 0.05061426814518813};
constexpr int kStencil = 8;

// Solve B' - 2 pi i tau d X B = -2i Im(tau) R on X_j = x0 + j h. For d > 0 the result
// is the particular solution vanishing at the center; for d < 0 it is matched
// from both ends and the defect at the center is returned.
double solve_line(std::vector<cplx>& B, const std::vector<cplx>& R, double x0, double h, int d,
                  const ModularParam& mp)
{
    const int n = int(R.size());
    const cplx c = -2.0 * kI * mp.im();
    auto phi = [&](double x) { return kI * kPi * mp.tau * double(d) * x * x; };
    // integral over [X_j, X_{j+1}] of exp(phi(T) - phi(s)) R(s) ds with T = X_{j+1} or X_j
    auto piece = [&](int j, bool toUpper) {
        const int s0 = std::clamp(j - kStencil / 2 + 1, 0, std::max(0, n - kStencil));
        const int ns = std::min(kStencil, n);
        const double T = x0 + h * (toUpper ? j + 1 : j);
        cplx acc = 0;
        for (int q = 0; q < kGL; ++q) {
            const double xi = j + kNode[q]; // in grid units
            cplx r = 0;
            for (int p = 0; p < ns; ++p) {
                double l = 1;
                for (int p2 = 0; p2 < ns; ++p2)
                    if (p2 != p) l *= (xi - (s0 + p2)) / double(p - p2);
                r += l * R[s0 + p];
            }
            acc += kWeight[q] * std::exp(phi(T) - phi(x0 + h * xi)) * r;
        }
        return acc * h;
    };
    B.assign(n, cplx(0));
    int center = int(std::lround(-x0 / h));
    center = std::clamp(center, 0, n - 1);
    if (d > 0) {
        for (int j = center; j + 1 < n; ++j)
            B[j + 1] = std::exp(phi(x0 + h * (j + 1)) - phi(x0 + h * j)) * B[j] + c * piece(j, true);
        for (int j = center; j > 0; --j)
            B[j - 1] = std::exp(phi(x0 + h * (j - 1)) - phi(x0 + h * j)) * B[j] - c * piece(j - 1, false);
        return 0;
    }
    std::vector<cplx> right(n, cplx(0));
    for (int j = 0; j < center; ++j)
        B[j + 1] = std::exp(phi(x0 + h * (j + 1)) - phi(x0 + h * j)) * B[j] + c * piece(j, true);
    for (int j = n - 1; j > center; --j)
        right[j - 1] = std::exp(phi(x0 + h * (j - 1)) - phi(x0 + h * j)) * right[j] - c * piece(j - 1, false);
    double scale = 1e-300;
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(j <= center ? B[j] : right[j]));
    const double defect = std::abs(B[center] - right[center]) / scale;
    for (int j = center + 1; j < n; ++j) B[j] = right[j];
    return defect;
}

Form green_nonzero(const Form& g0, const ModularParam& mp, GreenDiagnostics* diag)
{
    const int G = g0.G, d = g0.bundle.d, ad = std::abs(d);
    const cplx w = g0.bundle.w;
    const double y = mp.im();
    Form g = g0;
    if (d < 0) {
        const Form hp = harmonic_form(project(g0, mp), G, mp);
        for (std::size_t i = 0; i < g.v.size(); ++i) g.v[i] -= hp.v[i];
    }
    std::vector<cplx> gh = g.v;
    fft_z1(gh, G, true);
    for (auto& x : gh) x /= double(G);

    // Gaussian profile exp(-pi Im(tau) |d| X^2) drops below e^-36 outside the window
    const double Xw = std::sqrt(36.0 / (kPi * y * ad)) + 1.0;
    std::vector<cplx> hh(std::size_t(G) * G, cplx(0));
    const int sg = d > 0 ? 1 : -1;
    double defect = 0;
    for (int r = 0; r < ad; ++r) {
        // X = r/d + key/G with key = b + sg * j * G for mode m = r + ad * j
        const double xr = double(r) / d;
        const long kmin = long(std::floor((-Xw - xr) * G)), kmax = long(std::ceil((Xw - xr) * G));
        const int n = int(kmax - kmin + 1);
        std::vector<cplx> R(n, cplx(0)), B;
        std::vector<std::pair<int, int>> slot(n, {-1, -1}); // (mode index, b)
        for (long key = kmin; key <= kmax; ++key) {
            const long b = ((key % G) + G) % G;
            const long j = sg * (key - b) / G;
            const long m = r + long(ad) * j;
            if (2 * std::abs(m) >= G) throw HodgeError("grid too small for the Gaussian window of this degree");
            const int mi = int(m >= 0 ? m : m + G);
            const double z2 = double(b) / G;
            const cplx gauge = std::exp(kI * kPi * mp.tau * double(d) * z2 * z2 - 2.0 * kPi * kI * double(m) * w / double(d));
            R[key - kmin] = gh[std::size_t(mi) * G + b] * gauge;
            slot[key - kmin] = {mi, int(b)};
        }
        const double x0 = xr + double(kmin) / G, hstep = 1.0 / G;
        defect = std::max(defect, solve_line(B, R, x0, hstep, d, mp));
        if (d > 0) {
            // orthogonal to the holomorphic section exp(pi i tau d X^2) of this residue
            cplx num = 0, den = 0;
            for (int i = 0; i < n; ++i) {
                const double X = x0 + hstep * i;
                const cplx E = std::exp(kI * kPi * mp.tau * double(d) * X * X);
                const double rho = std::exp(-4.0 * kPi * w.imag() * X);
                num += B[i] * std::conj(E) * rho;
                den += E * std::conj(E) * rho;
            }
            for (int i = 0; i < n; ++i) {
                const double X = x0 + hstep * i;
                B[i] -= num / den * std::exp(kI * kPi * mp.tau * double(d) * X * X);
            }
        }
        for (int i = 0; i < n; ++i) {
            const auto [mi, b] = slot[i];
            const int m = freq(mi, G);
            const double z2 = double(b) / G;
            const cplx gauge = std::exp(-kI * kPi * mp.tau * double(d) * z2 * z2 + 2.0 * kPi * kI * double(m) * w / double(d));
            hh[std::size_t(mi) * G + b] = B[i] * gauge;
        }
    }
    fft_z1(hh, G, false);
    if (diag) diag->mismatch = std::max(diag->mismatch, defect);
    return Form{g0.bundle, 0, G, std::move(hh)};
}

} // namespace

Form harmonic_form(const ClassVector& c, int G, const ModularParam& mp)
{
    const int d = c.bundle.d;
    if (!((c.q == 0 && d > 0) || (c.q == 1 && d < 0))) throw HodgeError("no cohomology representative for this bundle");
    if (c.coeffs.size() != std::abs(d)) throw HodgeError("coefficient count does not match degree");
    Form f = zero_form(c.bundle, c.q, G);
    parallel_for(G, [&](std::size_t a) {
        for (int b = 0; b < G; ++b) {
            const cplx z = point(int(a), b, G, mp);
            cplx v = 0;
            for (int k = 0; k < std::abs(d); ++k)
                v += c.coeffs[k] * (c.q == 0 ? theta_basis<cplx>(k, d, c.bundle.w, z, mp)
                                             : holo::dual_class_rep(k, -d, -c.bundle.w, z, mp));
            f.v[a * G + b] = v;
        }
    });
    return f;
}

Form multiply(const Form& a, const Form& b)
{
    if (a.G != b.G) throw HodgeError("grid mismatch");
    Form r = zero_form({a.bundle.d + b.bundle.d, a.bundle.w + b.bundle.w}, a.q + b.q, a.G);
    if (r.q > 1) return r; // no (0,2)-forms on a curve
    for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] = a.v[i] * b.v[i];
    return r;
}

Form green(const Form& g, const ModularParam& mp, GreenDiagnostics* diag)
{
    if (g.q != 1) throw HodgeError("green operator acts on (0,1)-forms");
    if (g.bundle.d == 0) return green_degree0(g, mp);
    return green_nonzero(g, mp, diag);
}

ClassVector project(const Form& f, const ModularParam& mp)
{
    const int G = f.G, d = f.bundle.d;
    ClassVector out{f.bundle, f.q, Eigen::VectorXcd()};
    if (f.q == 0 && d > 0) {
        Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(d, d);
        Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(d);
        for (int a = 0; a < G; ++a)
            for (int b = 0; b < G; ++b) {
                const cplx z = point(a, b, G, mp);
                const double wt = metric(f.bundle, double(b) / G, mp);
                Eigen::VectorXcd th(d);
                for (int k = 0; k < d; ++k) th[k] = theta_basis<cplx>(k, d, f.bundle.w, z, mp);
                for (int j = 0; j < d; ++j) {
                    rhs[j] += f.v[std::size_t(a) * G + b] * std::conj(th[j]) * wt;
                    for (int k = 0; k < d; ++k) gram(j, k) += th[k] * std::conj(th[j]) * wt;
                }
            }
        out.coeffs = gram.lu().solve(rhs);
    } else if (f.q == 1 && d < 0) {
        // class coefficients are Serre pairings with the dual theta basis
        out.coeffs = Eigen::VectorXcd::Zero(-d);
        for (int a = 0; a < G; ++a)
            for (int b = 0; b < G; ++b) {
                const cplx z = point(a, b, G, mp);
                for (int k = 0; k < -d; ++k)
                    out.coeffs[k] += theta_basis<cplx>(k, -d, -f.bundle.w, z, mp) * f.v[std::size_t(a) * G + b];
            }
        out.coeffs *= -2.0 * kI * mp.im() / double(G) / double(G);
    }
    return out;
}

ClassVector m3(const ClassVector& a, const ClassVector& b, const ClassVector& c, const ModularParam& mp, int G,
               GreenDiagnostics* diag)
{
    const Form fa = harmonic_form(a, G, mp), fb = harmonic_form(b, G, mp), fc = harmonic_form(c, G, mp);
    const Bundle out{a.bundle.d + b.bundle.d + c.bundle.d, a.bundle.w + b.bundle.w + c.bundle.w};
    const int q = a.q + b.q + c.q - 1;
    if (q < 0 || q > 1) throw HodgeError("triple product degree out of range");
    Form acc = zero_form(out, q, G);
    const Form ab = multiply(fa, fb);
    if (ab.q == 1) {
        const Form t = multiply(green(ab, mp, diag), fc);
        for (std::size_t i = 0; i < acc.v.size(); ++i) acc.v[i] += t.v[i];
    }
    const Form bc = multiply(fb, fc);
    if (bc.q == 1) {
        const Form t = multiply(fa, green(bc, mp, diag));
        const double s = a.q % 2 ? 1.0 : -1.0;
        for (std::size_t i = 0; i < acc.v.size(); ++i) acc.v[i] += s * t.v[i];
    }
    return project(acc, mp);
}

} // namespace ell::hodge
