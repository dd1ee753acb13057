// Exact complex rationals for sign-sensitive self-tests.
#pragma once

#include <complex>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ell {

using rational = boost::multiprecision::cpp_rational;

struct QC
{
    rational re, im;

    QC() = default;
    QC(long v) : re(v), im(0) { }
    QC(rational r, rational i = 0) : re(std::move(r)), im(std::move(i)) { }

    QC& operator+=(const QC& o) { re += o.re; im += o.im; return *this; }
    QC& operator-=(const QC& o) { re -= o.re; im -= o.im; return *this; }
    QC& operator*=(const QC& o)
    {
        rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    friend QC operator+(QC a, const QC& b) { return a += b; }
    friend QC operator-(QC a, const QC& b) { return a -= b; }
    friend QC operator*(QC a, const QC& b) { return a *= b; }
    friend QC operator-(const QC& a) { return QC(-a.re, -a.im); }
    friend bool operator==(const QC& a, const QC& b) { return a.re == b.re && a.im == b.im; }
};

inline bool is_zero(const QC& a) { return a.re == 0 && a.im == 0; }
inline bool is_zero(const std::complex<double>& a) { return a == std::complex<double>(0); }

inline double magnitude(const QC& a)
{
    return std::abs(std::complex<double>(static_cast<double>(a.re), static_cast<double>(a.im)));
}
inline double magnitude(const std::complex<double>& a) { return std::abs(a); }

inline std::complex<double> to_cplx(const QC& a)
{
    return {static_cast<double>(a.re), static_cast<double>(a.im)};
}
inline std::complex<double> to_cplx(const std::complex<double>& a) { return a; }

// scalar construction from a (re, im) pair; exact mode keeps the binary value exactly
template <class K> K make_scalar(double re, double im);
template <> inline std::complex<double> make_scalar(double re, double im) { return {re, im}; }
template <> inline QC make_scalar(double re, double im) { return QC(rational(re), rational(im)); }

inline std::string to_string(const rational& r) { return r.str(); }

} // namespace ell
