#include "ell/fukaya.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

#include "ell/parallel.hpp"

namespace ell::fukaya {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 1e-9;

double frac(double x) { return x - std::floor(x); }

bool near_integer(double x, double eps = kEps) { return std::abs(x - std::round(x)) < eps; }

bool torus_equal(const Point& a, const Point& b)
{
    return near_integer(a[0] - b[0]) && near_integer(a[1] - b[1]);
}

Point reduce(const Point& p)
{
    Point r{frac(p[0]), frac(p[1])};
    for (auto& v : r)
        if (v > 1 - 1e-12) v = 0;
    return r;
}

} // namespace

GeodesicCircle::GeodesicCircle(long p_, long q_, double c_) : p(p_), q(q_), c(c_)
{
    if (q == 0) throw FukayaError("vertical circles are not supported");
    if (q < 0) {
        p = -p;
        q = -q;
    }
    const long g = std::gcd(std::abs(p), q);
    p /= g;
    q /= g;
}

bool GeodesicCircle::same_as(const GeodesicCircle& o) const
{
    return p == o.p && q == o.q && near_integer((c - o.c) * double(q), 1e-12);
}

Eigen::MatrixXcd ConnectionOp::holonomy(double s) const
{
    const long r = N.rows();
    const std::complex<double> a(0, 2 * kPi * s);
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(r, r), sum = term;
    for (long j = 1; j < r; ++j) {
        term = term * N * a / double(j);
        sum += term;
    }
    return std::exp(a * lambda) * sum;
}

FukayaObject make_object(GeodesicCircle c, double lambda, const Eigen::MatrixXcd& N)
{
    if (N.rows() != N.cols() || N.rows() < 1) throw FukayaError("connection must be square");
    if (nilpotency_index(N) < 0) throw FukayaError("connection nilpotent part is not nilpotent");
    return {c, {lambda, N}};
}

FukayaObject make_object(GeodesicCircle c, double lambda)
{
    return make_object(c, lambda, Eigen::MatrixXcd::Zero(1, 1));
}

std::vector<Point> intersections(const GeodesicCircle& a, const GeodesicCircle& b)
{
    if (a.same_as(b)) throw FukayaError("non-transversal: identical circles");
    std::vector<Point> pts;
    if (a.p * b.q == b.p * a.q) return pts; // parallel, distinct
    if (a.integer_slope() && b.integer_slope()) {
        // P_k = ((k + u'_2 - u_2)/d, (n k + n u'_2 - n' u_2)/d) with u_2 = -c, n < n'
        const GeodesicCircle& lo = a.p < b.p ? a : b;
        const GeodesicCircle& hi = a.p < b.p ? b : a;
        const long d = hi.p - lo.p;
        for (long k = 0; k < d; ++k) {
            const double x = (double(k) + lo.c - hi.c) / double(d);
            pts.push_back(reduce({x, double(lo.p) * x + lo.c}));
        }
        return pts;
    }
    // x in [0, q_a) on a, with (la - lb) x + c_a - c_b in (1/q_b) Z
    const double la = a.slope(), lb = b.slope(), dl = la - lb;
    const double lo = std::min(0.0, double(a.q) * dl), hi = std::max(0.0, double(a.q) * dl);
    const long jlo = long(std::floor((lo + a.c - b.c) * double(b.q))) - 1;
    const long jhi = long(std::ceil((hi + a.c - b.c) * double(b.q))) + 1;
    for (long j = jlo; j <= jhi; ++j) {
        const double x = (double(j) / double(b.q) - a.c + b.c) / dl;
        if (x < -1e-12 || x >= double(a.q) - 1e-12) continue;
        const Point p = reduce({x, la * x + a.c});
        bool dup = false;
        for (const auto& o : pts) dup = dup || torus_equal(o, p);
        if (!dup) pts.push_back(p);
    }
    const long expect = std::abs(a.p * b.q - b.p * a.q);
    if (static_cast<long>(pts.size()) != expect) throw FukayaError("intersection count mismatch");
    std::sort(pts.begin(), pts.end());
    return pts;
}

int hom_degree(const FukayaObject& a, const FukayaObject& b)
{
    return a.circle.slope() < b.circle.slope() ? 0 : 1;
}

int hom_dimension(const FukayaObject& a, const FukayaObject& b)
{
    if (a.circle.same_as(b.circle)) return 0;
    return static_cast<int>(intersections(a.circle, b.circle).size());
}

FukayaMorphism FukayaMorphism::zero(const FukayaObject& s, const FukayaObject& t)
{
    FukayaMorphism m{s, t, {}};
    const int np = static_cast<int>(intersections(s.circle, t.circle).size());
    m.coeff.assign(np, Eigen::MatrixXcd::Zero(t.rank(), s.rank()));
    return m;
}

FukayaMorphism FukayaMorphism::basis(const FukayaObject& s, const FukayaObject& t, int point,
                                     const Eigen::MatrixXcd& M)
{
    FukayaMorphism m = zero(s, t);
    if (point < 0 || point >= static_cast<int>(m.coeff.size())) throw FukayaError("no such intersection point");
    if (M.rows() != t.rank() || M.cols() != s.rank()) throw FukayaError("coefficient shape mismatch");
    m.coeff[point] = M;
    return m;
}

double FukayaMorphism::max_abs() const
{
    double v = 0;
    for (const auto& M : coeff)
        if (M.size()) v = std::max(v, M.cwiseAbs().maxCoeff());
    return v;
}

double default_area_cutoff(const ModularParam& mp)
{
    // |exp(2 pi i tau A)| = exp(-2 pi Im(tau) A) below tol, with headroom for multiplicities
    return (-std::log(mp.tol) + 10.0) / (2 * kPi * mp.im());
}

namespace {

// smallest nonnegative step s with p + s (1, lambda) = P mod Z^2, and its period q
std::pair<double, long> step_base(const Point& p, const GeodesicCircle& c, const Point& P)
{
    const double lam = c.slope();
    for (long a = 0; a < c.q; ++a) {
        const double s = frac(P[0] - p[0]) + double(a);
        if (near_integer(p[1] + lam * s - P[1], 1e-8)) return {s, c.q};
    }
    throw FukayaError("vertex does not lie on the circle");
}

bool accept(const std::vector<Point>& v, bool clockwise, double& area)
{
    const std::size_t n = v.size();
    std::vector<Point> edges;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % n];
        const Point e{b[0] - a[0], b[1] - a[1]};
        if (std::hypot(e[0], e[1]) > 1e-10) edges.push_back(e);
    }
    double sh = 0;
    for (std::size_t i = 0; i < n; ++i) sh += v[i][0] * v[(i + 1) % n][1] - v[i][1] * v[(i + 1) % n][0];
    area = (clockwise ? -sh : sh) / 2;
    if (edges.empty()) {
        area = 0;
        return true;
    }
    double total = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Point& a = edges[i];
        const Point& b = edges[(i + 1) % edges.size()];
        double ang = std::atan2(a[0] * b[1] - a[1] * b[0], a[0] * b[0] + a[1] * b[1]);
        if (!clockwise) ang = -ang;
        if (ang > 1e-10 || ang <= -kPi + 1e-10) return false;
        total += ang;
    }
    return std::abs(total + 2 * kPi) < 1e-6;
}

} // namespace

Enumeration enumerate_polygons(const std::vector<FukayaObject>& objs, const std::vector<Point>& verts,
                               const ModularParam& mp, const EnumOptions& opt)
{
    return enumerate_polygons(objs, verts, mp, opt, true);
}

Enumeration enumerate_polygons(const std::vector<FukayaObject>& objs, const std::vector<Point>& verts,
                               const ModularParam& mp, const EnumOptions& opt, bool clockwise)
{
    const int k = static_cast<int>(objs.size()) - 1;
    if (k < 2 || static_cast<int>(verts.size()) != k) throw FukayaError("need k+1 objects and k vertices");
    for (int i = 0; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j)
            if (objs[i].circle.same_as(objs[j].circle)) throw FukayaError("non-transversal: repeated circle");

    Enumeration out;
    out.area_cutoff = opt.area_cutoff > 0 ? opt.area_cutoff : default_area_cutoff(mp);
    out.tail_bound = std::exp(-2 * kPi * mp.im() * out.area_cutoff);

    int dsum = 0;
    for (int i = 0; i <= k; ++i) dsum += hom_degree(objs[i], objs[(i + 1) % (k + 1)]);
    if (dsum != k - 1) return out;

    const auto outs = intersections(objs[0].circle, objs[k].circle);
    const Point p0 = verts[0];
    const double l0 = objs[0].circle.slope(), lk = objs[k].circle.slope();
    if (l0 == lk) return out; // L_0 parallel to L_k: empty hom

    const int free = k - 1; // steps s_1..s_{k-1}
    std::vector<long> j(free, 0);
    int quiet = 0;
    for (int R = 0; R <= opt.max_shell; ++R) {
        int found = 0;
        // iterate over the shell max|j_i| = R
        std::vector<long> idx(free, -R);
        while (true) {
            long mx = 0;
            for (long v : idx) mx = std::max(mx, std::abs(v));
            if (mx == R) {
                std::vector<Point> v{p0};
                std::vector<double> steps{0};
                Point p = p0;
                bool ok = true;
                for (int i = 1; i <= free && ok; ++i) {
                    const auto [sb, q] = step_base(p, objs[i].circle, verts[i]);
                    const double s = sb + double(q) * double(idx[i - 1]);
                    p = {p[0] + s, p[1] + s * objs[i].circle.slope()};
                    v.push_back(p);
                    steps.push_back(s);
                }
                const double sk = (p0[1] - p[1] + l0 * (p[0] - p0[0])) / (lk - l0);
                const Point pk{p[0] + sk, p[1] + sk * lk};
                v.push_back(pk);
                steps.push_back(sk);
                steps[0] = p0[0] - pk[0];
                double area = 0;
                if (accept(v, clockwise, area) && area <= out.area_cutoff) {
                    Polygon poly{v, steps, area, -1};
                    for (std::size_t o = 0; o < outs.size(); ++o)
                        if (torus_equal(outs[o], pk)) poly.out_point = static_cast<int>(o);
                    if (poly.out_point < 0) throw FukayaError("polygon corner is not an intersection point");
                    out.polygons.push_back(std::move(poly));
                    ++found;
                }
            }
            int d = 0;
            while (d < free && idx[d] == R) idx[d++] = -R;
            if (d == free) break;
            ++idx[d];
        }
        if (found == 0 && R >= 2) {
            if (++quiet >= 2) break;
        } else {
            quiet = 0;
        }
        if (R == opt.max_shell) throw FukayaError("polygon enumeration did not terminate within the shell bound");
    }
    return out;
}

FukayaMorphism m_k_F(const std::vector<FukayaMorphism>& ms, const ModularParam& mp, const EnumOptions& opt)
{
    const int k = static_cast<int>(ms.size());
    if (k < 2) throw FukayaError("m_k needs k >= 2 (m_1 = 0)");
    std::vector<FukayaObject> objs{ms[0].src};
    for (int i = 0; i < k; ++i) {
        if (i > 0 && (!ms[i].src.circle.same_as(ms[i - 1].tgt.circle) || ms[i].src.rank() != ms[i - 1].tgt.rank()))
            throw FukayaError("morphisms are not composable");
        objs.push_back(ms[i].tgt);
    }
    for (int i = 0; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j)
            if (objs[i].circle.same_as(objs[j].circle)) throw FukayaError("non-transversal: repeated circle");

    FukayaMorphism out = FukayaMorphism::zero(objs[0], objs[k]);
    int dsum = 0;
    for (int i = 0; i <= k; ++i) dsum += hom_degree(objs[i], objs[(i + 1) % (k + 1)]);
    if (dsum != k - 1) return out;

    std::vector<std::vector<Point>> pts;
    for (int i = 0; i < k; ++i) pts.push_back(intersections(objs[i].circle, objs[i + 1].circle));

    std::vector<int> choice(k, 0);
    while (true) {
        bool nonzero = true;
        for (int i = 0; i < k; ++i) nonzero = nonzero && ms[i].coeff[choice[i]].cwiseAbs().maxCoeff() > 0;
        if (nonzero) {
            std::vector<Point> verts;
            for (int i = 0; i < k; ++i) verts.push_back(pts[i][choice[i]]);
            const auto en = enumerate_polygons(objs, verts, mp, opt);
            for (const auto& poly : en.polygons) {
                double sign = 1;
                if (k % 2 == 1) {
                    if (std::abs(poly.steps[0]) < 1e-12) throw FukayaError("sign of a vanishing x(p_0)-x(p_k)");
                    sign = poly.steps[0] > 0 ? 1 : -1;
                }
                Eigen::MatrixXcd acc = objs[0].conn.holonomy(poly.steps[0]);
                for (int i = 1; i <= k; ++i) acc = objs[i].conn.holonomy(poly.steps[i]) * ms[i - 1].coeff[choice[i - 1]] * acc;
                out.coeff[poly.out_point] += sign * std::exp(2.0 * kPi * std::complex<double>(0, 1) * mp.tau * poly.area) * acc;
            }
        }
        int d = 0;
        while (d < k && choice[d] + 1 == static_cast<int>(pts[d].size())) choice[d++] = 0;
        if (d == k) break;
        ++choice[d];
    }
    return out;
}

std::complex<double> pairing_F(const FukayaMorphism& a, const FukayaMorphism& b)
{
    if (!a.src.circle.same_as(b.tgt.circle) || !a.tgt.circle.same_as(b.src.circle))
        throw FukayaError("pairing needs a: X->Y and b: Y->X");
    std::complex<double> s = 0;
    for (std::size_t p = 0; p < a.coeff.size(); ++p) s += (a.coeff[p] * b.coeff[p]).trace();
    return s;
}

AssembledCategory assemble(const std::vector<FukayaObject>& objs, int max_arity, const ModularParam& mp,
                           const EnumOptions& opt)
{
    using C = std::complex<double>;
    AssembledCategory out;
    auto& g = out.structure.grid;
    const int no = static_cast<int>(objs.size());
    for (int i = 0; i < no; ++i) g.add_object("O" + std::to_string(i));

    // basis element -> (point, row, col)
    struct Slot { int point, row, col; };
    std::vector<Slot> slots;
    std::vector<std::pair<int, int>> pairs;
    for (int x = 0; x < no; ++x)
        for (int y = 0; y < no; ++y) {
            if (x == y) continue;
            if (objs[x].circle.same_as(objs[y].circle)) throw FukayaError("non-transversal: repeated circle");
            if (x < y) pairs.push_back({x, y});
            const int np = hom_dimension(objs[x], objs[y]);
            const int deg = hom_degree(objs[x], objs[y]);
            for (int p = 0; p < np; ++p)
                for (int r = 0; r < objs[y].rank(); ++r)
                    for (int c = 0; c < objs[x].rank(); ++c) {
                        g.add_basis("O" + std::to_string(x) + ">O" + std::to_string(y) + ":P" + std::to_string(p) +
                                        ":" + std::to_string(r) + "," + std::to_string(c),
                                    deg, x, y);
                        slots.push_back({p, r, c});
                    }
        }
    g.set_transversal(pairs);

    auto& m = out.structure.m;
    m.declare(1);
    for (int n = 2; n <= max_arity; ++n) {
        m.declare(n);
        const auto ws = g.words(n);
        std::vector<ainf::SparseVec<C>> res(ws.size());
        parallel_for(ws.size(), [&](std::size_t wi) {
            const auto& w = ws[wi];
            std::vector<FukayaMorphism> in;
            for (int b : w) {
                const auto& e = g.elem(b);
                Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(objs[e.tgt].rank(), objs[e.src].rank());
                M(slots[b].row, slots[b].col) = 1;
                in.push_back(FukayaMorphism::basis(objs[e.src], objs[e.tgt], slots[b].point, M));
            }
            const auto r = m_k_F(in, mp, opt);
            const int x0 = g.elem(w.front()).src, xn = g.elem(w.back()).tgt;
            for (int b : g.hom(x0, xn)) {
                const C v = r.coeff[slots[b].point](slots[b].row, slots[b].col);
                if (v != C(0)) res[wi][b] = v;
            }
        });
        for (std::size_t i = 0; i < ws.size(); ++i)
            if (!res[i].empty()) m.set(g, ws[i], res[i]);
    }

    // Tr(E_{rc} E_{r'c'}) = [c = r'][r = c'] on matching points
    for (int a = 0; a < static_cast<int>(slots.size()); ++a) {
        const auto& ea = g.elem(a);
        out.pairing.declare_block(ea.src, ea.tgt);
        for (int b : g.hom(ea.tgt, ea.src))
            if (slots[a].point == slots[b].point && slots[a].col == slots[b].row && slots[a].row == slots[b].col)
                out.pairing.set(g, a, b, C(1));
    }
    return out;
}

} // namespace ell::fukaya
