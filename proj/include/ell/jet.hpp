// Truncated polynomials in two commuting nilpotent variables e1, e2 over C.
// A Jet2 with orders (m1, m2) lives in C[e1,e2]/(e1^m1, e2^m2).
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>

#include <Eigen/Dense>

namespace ell {

using cplx = std::complex<double>;

class Jet2
{
public:
    static constexpr int kMaxOrder = 6;

    Jet2() { c_.fill(cplx(0)); }
    Jet2(cplx a) { c_.fill(cplx(0)); c_[0] = a; }
    Jet2(double a) : Jet2(cplx(a)) { }
    Jet2(cplx a, int m1, int m2);

    // a + e_which, with the given orders
    static Jet2 variable(int which, cplx a, int m1, int m2);

    int order1() const { return m1_; }
    int order2() const { return m2_; }
    cplx standard() const { return c_[0]; }
    cplx& at(int i, int j) { return c_[i * kMaxOrder + j]; }
    const cplx& at(int i, int j) const { return c_[i * kMaxOrder + j]; }
    bool is_scalar() const;

    Jet2& operator+=(const Jet2& o);
    Jet2& operator-=(const Jet2& o);
    Jet2& operator*=(const Jet2& o);
    Jet2& operator*=(cplx s);
    Jet2& operator/=(const Jet2& o);

    friend Jet2 operator-(const Jet2& a);
    friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
    friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
    friend Jet2 operator*(Jet2 a, const Jet2& b) { return a *= b; }
    friend Jet2 operator/(Jet2 a, const Jet2& b) { return a /= b; }

    // largest coefficient modulus
    double norm_inf() const;

private:
    void widen(const Jet2& o);

    int m1_ = 1, m2_ = 1;
    std::array<cplx, kMaxOrder * kMaxOrder> c_;
};

struct JetError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

Jet2 exp(const Jet2& x);
Jet2 inv(const Jet2& x, double tol = 1e-300);
// x^k for integer k
Jet2 pow_int(const Jet2& x, int k);

// Sum c[i][j] N1^i N2^j; N1, N2 must commute and satisfy N1^m1 = 0, N2^m2 = 0.
Eigen::MatrixXcd substitute_nilpotents(const Jet2& x, const Eigen::MatrixXcd& N1,
                                       const Eigen::MatrixXcd& N2);

// smallest m with N^m = 0, or -1 if N is not nilpotent
int nilpotency_index(const Eigen::MatrixXcd& N, double tol = 1e-12);

// uniform scalar access for code generic over cplx / Jet2
inline cplx standard(cplx a) { return a; }
inline cplx standard(const Jet2& a) { return a.standard(); }

} // namespace ell
