#include "ell/field.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

#include "ell/parallel.hpp"

namespace ell {

namespace {

std::mutex& plan_mutex()
{
    static std::mutex m;
    return m;
}

void check_same(const Field& a, const Field& b)
{
    if (a.grid() != b.grid()) throw std::invalid_argument("field grid mismatch");
}

} // namespace

Field Field::sample(int G, const std::function<Jet2(double, double)>& fn)
{
    Field f(G);
    parallel_for(G, [&](std::size_t a) {
        for (int b = 0; b < G; ++b) f.at(int(a), b) = fn(double(a) / G, double(b) / G);
    });
    return f;
}

Field& Field::operator+=(const Field& o)
{
    check_same(*this, o);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
}

Field& Field::operator-=(const Field& o)
{
    check_same(*this, o);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
}

Field& Field::operator*=(const Field& o)
{
    check_same(*this, o);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] *= o.v_[i];
    return *this;
}

Field& Field::operator*=(const Jet2& s)
{
    for (auto& x : v_) x *= s;
    return *this;
}

void Field::modulate(const std::function<Jet2(int, int)>& fn)
{
    parallel_for(G_, [&](std::size_t a) {
        for (int b = 0; b < G_; ++b) at(int(a), b) *= fn(int(a), b);
    });
}

void Field::fft(bool forward)
{
    int m1 = 1, m2 = 1;
    for (const auto& x : v_) {
        m1 = std::max(m1, x.order1());
        m2 = std::max(m2, x.order2());
    }
    const std::size_t n = v_.size();
    fftw_complex* buf = fftw_alloc_complex(n);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_2d(G_, G_, buf, buf, forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    for (auto& x : v_)
        if (x.order1() != m1 || x.order2() != m2) x = x + Jet2(cplx(0), m1, m2);
    for (int i = 0; i < m1; ++i)
        for (int j = 0; j < m2; ++j) {
            for (std::size_t p = 0; p < n; ++p) {
                buf[p][0] = v_[p].at(i, j).real();
                buf[p][1] = v_[p].at(i, j).imag();
            }
            fftw_execute(plan);
            for (std::size_t p = 0; p < n; ++p) v_[p].at(i, j) = cplx(buf[p][0], buf[p][1]);
        }
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(buf);
}

double Field::max_standard() const
{
    double m = 0;
    for (const auto& x : v_) m = std::max(m, std::abs(x.standard()));
    return m;
}

} // namespace ell
