// Transversal Fukaya category of the torus R^2/Z^2: geodesic circles with
// connections lambda Id + N, intersection points, and the products m_k
// summed over clockwise convex polygons.
#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ell/ainf.hpp"
#include "ell/theta.hpp"

namespace ell::fukaya {

struct FukayaError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

using Point = std::array<double, 2>;

// {(x, (p/q) x + c)} modulo Z^2; c is kept as given since it fixes the P_k labels
struct GeodesicCircle
{
    long p = 0, q = 1;
    double c = 0;

    GeodesicCircle() = default;
    GeodesicCircle(long p_, long q_, double c_);
    double slope() const { return double(p) / double(q); }
    bool same_as(const GeodesicCircle& o) const;
    bool integer_slope() const { return q == 1; }
};

struct ConnectionOp
{
    double lambda = 0;
    Eigen::MatrixXcd N = Eigen::MatrixXcd::Zero(1, 1);

    int rank() const { return static_cast<int>(N.rows()); }
    // exp(2 pi i s (lambda Id + N)), exact in the nilpotent part
    Eigen::MatrixXcd holonomy(double s) const;
};

struct FukayaObject
{
    GeodesicCircle circle;
    ConnectionOp conn;
    int rank() const { return conn.rank(); }
};

FukayaObject make_object(GeodesicCircle c, double lambda, const Eigen::MatrixXcd& N);
FukayaObject make_object(GeodesicCircle c, double lambda);

// intersection points in [0,1)^2 in canonical order
std::vector<Point> intersections(const GeodesicCircle& a, const GeodesicCircle& b);
int hom_degree(const FukayaObject& a, const FukayaObject& b);
int hom_dimension(const FukayaObject& a, const FukayaObject& b);

struct FukayaMorphism
{
    FukayaObject src, tgt;
    std::vector<Eigen::MatrixXcd> coeff; // one rank(tgt) x rank(src) matrix per intersection point

    static FukayaMorphism zero(const FukayaObject& s, const FukayaObject& t);
    static FukayaMorphism basis(const FukayaObject& s, const FukayaObject& t, int point,
                                const Eigen::MatrixXcd& M);
    int degree() const { return hom_degree(src, tgt); }
    double max_abs() const;
};

struct Polygon
{
    std::vector<Point> vertices; // p_0..p_k, lifts in R^2
    std::vector<double> steps;   // s_0 = x(p_0)-x(p_k), s_i = x(p_i)-x(p_{i-1})
    double area = 0;
    int out_point = -1; // index of p_k among intersections(L_0, L_k)
};

struct EnumOptions
{
    double area_cutoff = 0; // <= 0: derived from mp.tol
    int max_shell = 80;
};

struct Enumeration
{
    std::vector<Polygon> polygons;
    double area_cutoff = 0;
    double tail_bound = 0; // bound on |exp(2 pi i tau Area)| for omitted polygons
};

double default_area_cutoff(const ModularParam& mp);

// polygons with p_i = P_{i,i+1}, clockwise, convex, area <= cutoff
Enumeration enumerate_polygons(const std::vector<FukayaObject>& objs, const std::vector<Point>& verts,
                               const ModularParam& mp, const EnumOptions& opt = {});
// clockwise requested false enumerates counter-clockwise paths (always empty for valid data)
Enumeration enumerate_polygons(const std::vector<FukayaObject>& objs, const std::vector<Point>& verts,
                               const ModularParam& mp, const EnumOptions& opt, bool clockwise);

FukayaMorphism m_k_F(const std::vector<FukayaMorphism>& ms, const ModularParam& mp, const EnumOptions& opt = {});

std::complex<double> pairing_F(const FukayaMorphism& a, const FukayaMorphism& b);

// A-infinity category on a list of pairwise distinct circles, m_1 = 0 and m_2..m_max
struct AssembledCategory
{
    ainf::AInfStructure<std::complex<double>> structure;
    ainf::CyclicPairing<std::complex<double>> pairing;
};
AssembledCategory assemble(const std::vector<FukayaObject>& objs, int max_arity, const ModularParam& mp,
                           const EnumOptions& opt = {});

} // namespace ell::fukaya
