// Jet-valued samples on the uniform G x G grid of the fundamental domain,
// z = z1 + tau z2 with z1 = a/G, z2 = b/G, stored at index a*G + b.
#pragma once

#include <functional>
#include <vector>

#include "ell/jet.hpp"

namespace ell {

class Field
{
public:
    Field() = default;
    explicit Field(int G) : G_(G), v_(std::size_t(G) * G, Jet2(cplx(0))) { }

    // fn(z1, z2) sampled in parallel
    static Field sample(int G, const std::function<Jet2(double, double)>& fn);

    int grid() const { return G_; }
    Jet2& at(int a, int b) { return v_[std::size_t(a) * G_ + b]; }
    const Jet2& at(int a, int b) const { return v_[std::size_t(a) * G_ + b]; }

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(const Field& o);
    Field& operator*=(const Jet2& s);
    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }
    friend Field operator*(Field a, const Field& b) { return a *= b; }

    // multiply sample (a, b) by fn(a, b)
    void modulate(const std::function<Jet2(int, int)>& fn);

    // unnormalized 2D DFT of every jet coefficient; forward uses exp(-2 pi i ...)
    void fft(bool forward);

    double max_standard() const;

private:
    int G_ = 0;
    std::vector<Jet2> v_;
};

// signed frequency of DFT index i on a grid of size G
inline int frequency(int i, int G) { return i < (G + 1) / 2 ? i : i - G; }

} // namespace ell
