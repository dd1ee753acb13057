// Theta functions, the degree-n theta basis, the Dolbeault representative
// alpha, the primitive h(z,u) and the Kronecker function F(t,u).
// Every series accepts cplx or Jet2 arguments.
#pragma once

#include <stdexcept>

#include "ell/jet.hpp"

namespace ell {

struct ModularParam
{
    cplx tau{0, 1};
    double tol = 1e-16;       // relative tail bound for every series
    long max_terms = 2000000; // hard bound on retained terms
    double pole_tol = 1e-6;   // refuse evaluation this close to a pole

    ModularParam() = default;
    explicit ModularParam(cplx t) : tau(t) { validate(); }
    void validate() const;
    double im() const { return tau.imag(); }
};

struct RealDecomposition
{
    double z1, z2; // z = z1 + tau z2
};

RealDecomposition split(cplx z, const ModularParam& mp);
cplx recompose(const RealDecomposition& d, const ModularParam& mp);

struct PoleError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct TruncationError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

template <class S> S theta(const S& z, const ModularParam& mp);
template <class S> S theta_prime(const S& z, const ModularParam& mp);

// theta_k(z) = sum_{m in nZ+k} exp((pi i tau m^2 + 2 pi i m (n z + w)) / n)
template <class S> S theta_basis(int k, int n, const S& w, const S& z, const ModularParam& mp);

// coefficient of dzbar in alpha(z)
cplx alpha(cplx z, const ModularParam& mp);

enum class HOrder { Square, Disk };

template <class S> S h(const S& z, const S& u, const ModularParam& mp, HOrder order = HOrder::Square);

template <class S> S kronecker_F_theta(const S& t, const S& u, const ModularParam& mp);
template <class S> S kronecker_F_lattice(const S& t, const S& u, const ModularParam& mp);

} // namespace ell
