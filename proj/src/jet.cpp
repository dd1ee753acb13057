#include "ell/jet.hpp"

#include <algorithm>
#include <cmath>

namespace ell {

Jet2::Jet2(cplx a, int m1, int m2) : m1_(m1), m2_(m2)
{
    if (m1 < 1 || m2 < 1 || m1 > kMaxOrder || m2 > kMaxOrder)
        throw JetError("jet truncation order out of range");
    c_.fill(cplx(0));
    c_[0] = a;
}

Jet2 Jet2::variable(int which, cplx a, int m1, int m2)
{
    Jet2 r(a, m1, m2);
    if (which == 1 && m1 > 1) r.at(1, 0) = 1.0;
    if (which == 2 && m2 > 1) r.at(0, 1) = 1.0;
    return r;
}

bool Jet2::is_scalar() const
{
    for (int i = 0; i < m1_; ++i)
        for (int j = 0; j < m2_; ++j)
            if ((i || j) && at(i, j) != cplx(0)) return false;
    return true;
}

void Jet2::widen(const Jet2& o)
{
    m1_ = std::max(m1_, o.m1_);
    m2_ = std::max(m2_, o.m2_);
}

Jet2& Jet2::operator+=(const Jet2& o)
{
    widen(o);
    for (int i = 0; i < o.m1_; ++i)
        for (int j = 0; j < o.m2_; ++j) at(i, j) += o.at(i, j);
    return *this;
}

Jet2& Jet2::operator-=(const Jet2& o)
{
    widen(o);
    for (int i = 0; i < o.m1_; ++i)
        for (int j = 0; j < o.m2_; ++j) at(i, j) -= o.at(i, j);
    return *this;
}

Jet2& Jet2::operator*=(cplx s)
{
    for (auto& v : c_) v *= s;
    return *this;
}

Jet2& Jet2::operator*=(const Jet2& o)
{
    if (o.is_scalar()) {
        widen(o);
        return *this *= o.c_[0];
    }
    Jet2 r;
    r.m1_ = std::max(m1_, o.m1_);
    r.m2_ = std::max(m2_, o.m2_);
    for (int i = 0; i < m1_; ++i)
        for (int j = 0; j < m2_; ++j) {
            const cplx a = at(i, j);
            if (a == cplx(0)) continue;
            for (int k = 0; i + k < r.m1_ && k < o.m1_; ++k)
                for (int l = 0; j + l < r.m2_ && l < o.m2_; ++l)
                    r.at(i + k, j + l) += a * o.at(k, l);
        }
    return *this = r;
}

Jet2& Jet2::operator/=(const Jet2& o)
{
    if (o.is_scalar()) {
        if (o.c_[0] == cplx(0)) throw JetError("jet not invertible");
        widen(o);
        for (auto& v : c_) v /= o.c_[0];
        return *this;
    }
    return *this *= inv(o);
}

Jet2 operator-(const Jet2& a)
{
    Jet2 r = a;
    r *= cplx(-1);
    return r;
}

double Jet2::norm_inf() const
{
    double m = 0;
    for (const auto& v : c_) m = std::max(m, std::abs(v));
    return m;
}

namespace {

// nilpotent part of x (standard part removed)
Jet2 nilpart(const Jet2& x)
{
    Jet2 n = x;
    n.at(0, 0) = 0;
    return n;
}

int nil_degree(const Jet2& x) { return x.order1() + x.order2() - 2; }

} // namespace

Jet2 exp(const Jet2& x)
{
    // exp(a + n) = exp(a) * sum n^k / k!, the sum terminating at total degree
    const Jet2 n = nilpart(x);
    Jet2 sum(cplx(1), x.order1(), x.order2());
    Jet2 term = sum;
    for (int k = 1; k <= nil_degree(x); ++k) {
        term *= n;
        term *= cplx(1.0 / k);
        sum += term;
    }
    sum *= std::exp(x.standard());
    return sum;
}

Jet2 inv(const Jet2& x, double tol)
{
    const cplx a = x.standard();
    if (std::abs(a) <= tol) throw JetError("jet not invertible");
    // 1/(a + n) = (1/a) * sum (-n/a)^k
    Jet2 q = nilpart(x);
    q *= -1.0 / a;
    Jet2 sum(cplx(1), x.order1(), x.order2());
    Jet2 term = sum;
    for (int k = 1; k <= nil_degree(x); ++k) {
        term *= q;
        sum += term;
    }
    sum *= 1.0 / a;
    return sum;
}

Jet2 pow_int(const Jet2& x, int k)
{
    Jet2 base = k < 0 ? inv(x) : x;
    unsigned e = static_cast<unsigned>(k < 0 ? -k : k);
    Jet2 r(cplx(1), x.order1(), x.order2());
    while (e) {
        if (e & 1u) r *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return r;
}

int nilpotency_index(const Eigen::MatrixXcd& N, double tol)
{
    const long n = N.rows();
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(n, n);
    for (int m = 0; m <= n; ++m) {
        if (P.cwiseAbs().maxCoeff() <= tol) return m;
        P = P * N;
    }
    return -1;
}

Eigen::MatrixXcd substitute_nilpotents(const Jet2& x, const Eigen::MatrixXcd& N1,
                                       const Eigen::MatrixXcd& N2)
{
    const long n = N1.rows();
    if (N1.cols() != n || N2.rows() != n || N2.cols() != n)
        throw JetError("nilpotent shapes disagree");
    const int k1 = nilpotency_index(N1), k2 = nilpotency_index(N2);
    if (k1 < 0 || k2 < 0) throw JetError("matrix is not nilpotent");
    if (k1 > x.order1() || k2 > x.order2())
        throw JetError("jet truncation order below nilpotency index");
    if ((N1 * N2 - N2 * N1).cwiseAbs().maxCoeff() > 1e-12)
        throw JetError("nilpotents do not commute");

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd P1 = Eigen::MatrixXcd::Identity(n, n);
    for (int i = 0; i < k1; ++i) {
        Eigen::MatrixXcd P = P1;
        for (int j = 0; j < k2; ++j) {
            if (x.at(i, j) != cplx(0)) out += x.at(i, j) * P;
            P = P * N2;
        }
        P1 = P1 * N1;
    }
    return out;
}

} // namespace ell
