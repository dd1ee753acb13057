#include "test_main.hpp"

#include <numbers>
#include <random>

#include "ell/jet.hpp"

using namespace ell;

namespace {

Jet2 random_jet(std::mt19937& g, int m1, int m2)
{
    std::uniform_real_distribution<double> d(-1, 1);
    Jet2 x(cplx(d(g), d(g)), m1, m2);
    for (int i = 0; i < m1; ++i)
        for (int j = 0; j < m2; ++j) x.at(i, j) = cplx(d(g), d(g));
    return x;
}

double dist(const Jet2& a, const Jet2& b) { return (a - b).norm_inf(); }

Eigen::MatrixXcd jordan(int n)
{
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) J(i, i + 1) = 1;
    return J;
}

} // namespace

TEST_CASE("exp of a pure nilpotent truncates")
{
    const Jet2 e = exp(Jet2::variable(1, 0, 3, 1));
    CHECK(std::abs(e.at(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(e.at(1, 0) - 1.0) < 1e-15);
    CHECK(std::abs(e.at(2, 0) - 0.5) < 1e-15);
}

TEST_CASE("exp(i pi) is -1")
{
    const Jet2 e = exp(Jet2(cplx(0, std::numbers::pi)));
    CHECK(std::abs(e.standard() + 1.0) < 1e-15);
}

TEST_CASE("exp(a) exp(-a) = 1")
{
    std::mt19937 g(1);
    for (int r = 0; r < 20; ++r) {
        const Jet2 a = random_jet(g, 3, 4);
        CHECK(dist(exp(a) * exp(-a), Jet2(cplx(1), 3, 4)) < 1e-12);
    }
}

TEST_CASE("inverse")
{
    const Jet2 x = inv(Jet2::variable(1, 1, 3, 1));
    CHECK(std::abs(x.at(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(x.at(1, 0) + 1.0) < 1e-15);
    CHECK(std::abs(x.at(2, 0) - 1.0) < 1e-15);
    CHECK(std::abs(inv(Jet2(2.0)).standard() - 0.5) < 1e-15);
    std::mt19937 g(2);
    for (int r = 0; r < 20; ++r) {
        const Jet2 a = random_jet(g, 4, 2);
        CHECK(dist(a * inv(a), Jet2(cplx(1), 4, 2)) < 1e-12);
    }
    CHECK_THROWS_AS(inv(Jet2::variable(2, 0, 1, 3)), JetError);
}

TEST_CASE("ring axioms on random samples")
{
    std::mt19937 g(3);
    for (int r = 0; r < 20; ++r) {
        const Jet2 a = random_jet(g, 3, 3), b = random_jet(g, 3, 3), c = random_jet(g, 3, 3);
        CHECK(dist((a * b) * c, a * (b * c)) < 1e-13);
        CHECK(dist(a * (b + c), a * b + a * c) < 1e-13);
        CHECK(dist(a * b, b * a) < 1e-13);
    }
}

TEST_CASE("integer powers")
{
    std::mt19937 g(4);
    const Jet2 a = random_jet(g, 3, 2);
    CHECK(dist(pow_int(a, 3), a * a * a) < 1e-13);
    CHECK(dist(pow_int(a, -2) * a * a, Jet2(cplx(1), 3, 2)) < 1e-12);
}

TEST_CASE("substitute nilpotents")
{
    const Eigen::MatrixXcd J = jordan(2), Z = Eigen::MatrixXcd::Zero(2, 2);
    const Eigen::MatrixXcd s = substitute_nilpotents(Jet2::variable(1, 0, 2, 1), J, Z);
    CHECK((s - J).norm() < 1e-15);
    const Eigen::MatrixXcd c = substitute_nilpotents(Jet2(cplx(3, 1), 1, 1), Z, Z);
    CHECK((c - cplx(3, 1) * Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-15);
    CHECK_THROWS_AS(substitute_nilpotents(Jet2(cplx(1), 1, 1), jordan(3), Eigen::MatrixXcd::Zero(3, 3)),
                    JetError);
}

TEST_CASE("jet substitution matches the diagonalizable limit")
{
    // f(x) = exp(x) / (1 + x) at x = a + J, compared with f(a + J + delta diag(0,1))
    const cplx a(0.3, -0.2);
    const Jet2 x = Jet2::variable(1, a, 2, 1);
    const Eigen::MatrixXcd J = jordan(2);
    const Eigen::MatrixXcd viajet =
        substitute_nilpotents(exp(x) / (Jet2(1.0) + x), J, Eigen::MatrixXcd::Zero(2, 2));
    auto f = [](cplx v) { return std::exp(v) / (1.0 + v); };
    double prev = 1e9;
    for (double delta : {1e-2, 1e-3, 1e-4}) {
        // A = [[a, 1], [0, a+delta]] has eigenvectors (1,0), (1,delta)
        Eigen::MatrixXcd V(2, 2), D = Eigen::MatrixXcd::Zero(2, 2);
        V << 1, 1, 0, delta;
        D(0, 0) = f(a);
        D(1, 1) = f(a + delta);
        const Eigen::MatrixXcd fa = V * D * V.inverse();
        const double err = (fa - viajet).cwiseAbs().maxCoeff();
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-3);
}
