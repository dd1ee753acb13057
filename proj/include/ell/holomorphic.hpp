// Holomorphic side: theta bases of H^0, Serre-dual classes spanning H^1,
// m2 structure constants, the closed-form triple product, a spectral
// dbar-inversion route for (n,-n,n) triples, and the Lemma/Proposition checks.
#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ell/jet.hpp"
#include "ell/theta.hpp"

namespace ell::holo {

struct HoloError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// L(0)^{n-1} (x) L(u) (x) V_N; sections of degree n > 0 are spanned by theta_basis(k, n, u, .)
struct LineBundleLabel
{
    int n = 0;
    cplx u{0};
    Eigen::MatrixXcd N; // empty means rank 1 with N = 0

    int rank() const { return N.size() == 0 ? 1 : int(N.rows()); }
};

LineBundleLabel tensor(const LineBundleLabel& a, const LineBundleLabel& b);
LineBundleLabel dual(const LineBundleLabel& a);

int h0_dim(int n);
int h1_dim(int n);

// coefficients over theta_k (n > 0) or over the dual classes e_k (n < 0)
struct SectionVector
{
    LineBundleLabel bundle;
    Eigen::VectorXcd coeffs;
};

// dzbar-coefficient of the class in H^1 of degree -n, translation -w, dual to
// theta_basis(k, n, w, .) under the Serre pairing
cplx dual_class_rep(int k, int n, cplx w, cplx z, const ModularParam& mp);

// pointwise value: sum c_k theta_k(z) for n > 0, sum c_k e_k(z) (dzbar coefficient) for n < 0
cplx section_value(const SectionVector& s, cplx z, const ModularParam& mp);

// b(f, g) = -2i Im(tau) * integral over [0,1)^2 of f g dz1 dz2, midpoint rule;
// throws if the grid and half grid disagree
cplx serre_pairing_numeric(const SectionVector& f, const SectionVector& g, int grid,
                           const ModularParam& mp);

template <class S> struct M2Constants
{
    int n1 = 0, n2 = 0;
    std::vector<S> c; // c[(k1 * n2 + k2) * (n1 + n2) + k]
    double fit_residual = 0;

    const S& at(int k1, int k2, int k) const { return c[(std::size_t(k1) * n2 + k2) * (n1 + n2) + k]; }
};

// theta^{(n1,w1)}_{k1} theta^{(n2,w2)}_{k2} = sum_k c theta^{(n1+n2,w1+w2)}_k
template <class S>
M2Constants<S> m2_structure_constants(int n1, const S& w1, int n2, const S& w2, const ModularParam& mp);

// products of section vectors (rank 1); H^0 x H^0 and H^0 x H^1 in either order
template <class S>
std::vector<S> multiply_h0(int n1, const S& w1, const std::vector<S>& a, int n2, const S& w2,
                           const std::vector<S>& b, const ModularParam& mp);
// s in H^0(n, ws), e in H^1(-m, we) with m > n; result in H^1(n-m, ws+we)
template <class S>
std::vector<S> multiply_h0_h1(int n, const S& ws, const std::vector<S>& s, int m, const S& we,
                              const std::vector<S>& e, const ModularParam& mp);

// s1 in H^0(1, x1), e in H^1(-1, x2), s2 in H^0(1, x3): m3 = coefficient * theta^{(1, x1+x2+x3)}
template <class S> S m3_basic(const S& x1, const S& x2, const S& x3, const ModularParam& mp);

// matrix coefficient of m3 on H^0(1,t) (x) H^1(-1,0) (x) H^0(1,u) with unipotent
// factors N0..N3 on O0=(0,0), O1=(1,t), O2=(0,t), O3=(1,t+u)
Eigen::MatrixXcd m3_H(cplx t, cplx u, const std::vector<Eigen::MatrixXcd>& N, const Eigen::MatrixXcd& v01,
                      const Eigen::MatrixXcd& v12, const Eigen::MatrixXcd& v23, const ModularParam& mp);

template <class S> struct SpectralResult
{
    std::vector<S> coeffs;
    double fit_residual = 0;
};

// m3(s1, e, s2) = Q(s1 e) s2 - s1 Q(e s2) for s1 in H^0(n, w1), e in H^1(-n, we),
// s2 in H^0(n, w2), Q the inverse of dbar on the degree-0 bundle
template <class S>
SpectralResult<S> m3_spectral(int n, const S& w1, cplx we, cplx w2, const std::vector<S>& s1,
                              const std::vector<cplx>& e, const std::vector<cplx>& s2, const ModularParam& mp,
                              int grid = 64);

struct MainLemReport
{
    int dim_left = 0, dim_middle = 0, dim_target = 0;
    int rank_alpha = 0, rank_beta = 0, dim_ker_beta = 0;
    double beta_alpha_norm = 0;
    bool beta_surjective = false;
    bool exact() const { return beta_surjective && rank_alpha == dim_ker_beta; }
};

// L and the members of S are (degree, translation) labels of rank 1
MainLemReport mainlem_exactness_check(const LineBundleLabel& L, const std::vector<LineBundleLabel>& S,
                                      const ModularParam& mp);

} // namespace ell::holo
