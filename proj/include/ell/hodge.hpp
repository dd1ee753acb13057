// Hodge-theoretic triple products on line bundles of any degree. Forms are
// sampled on the G x G grid of the fundamental domain; dbar is inverted by
// Fourier transform (degree 0) or by unfolding the z1-Fourier modes to one
// ODE on the real line per residue class (nonzero degree). Projections use
// the flat hermitian metric exp(-2 pi d Im(tau) z2^2 - 4 pi Im(w) z2).
#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ell/theta.hpp"

namespace ell::hodge {

struct HodgeError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// sections satisfy f(z+1) = f(z), f(z+tau) = exp(-pi i tau d - 2 pi i d z - 2 pi i w) f(z)
struct Bundle
{
    int d = 0;
    cplx w{0};
};

// a (0,q)-form with values in a bundle: its dzbar-coefficient for q = 1
struct Form
{
    Bundle bundle;
    int q = 0;
    int G = 0;
    std::vector<cplx> v; // index a*G + b at z1 = a/G, z2 = b/G
};

// cohomology class: theta coefficients (q = 0, d > 0) or dual-class coefficients (q = 1, d < 0)
struct ClassVector
{
    Bundle bundle;
    int q = 0;
    Eigen::VectorXcd coeffs;
};

Form harmonic_form(const ClassVector& c, int G, const ModularParam& mp);
Form multiply(const Form& a, const Form& b);

struct GreenDiagnostics
{
    double mismatch = 0; // ODE matching defect after removing the harmonic part
};

// Q with dbar Q + Q dbar = 1 - (harmonic projection), on (0,1)-forms
Form green(const Form& g, const ModularParam& mp, GreenDiagnostics* diag = nullptr);

// harmonic projection, returned as class coefficients
ClassVector project(const Form& f, const ModularParam& mp);

// m3(a,b,c) = p(Q(ab) c) - (-1)^{q_a} p(a Q(bc))
ClassVector m3(const ClassVector& a, const ClassVector& b, const ClassVector& c, const ModularParam& mp,
               int G = 64, GreenDiagnostics* diag = nullptr);

} // namespace ell::hodge
