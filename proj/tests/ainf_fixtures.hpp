// Shared fixtures for the sign-exact engine: the exterior algebra on two
// degree-1 generators, its top-degree pairing, random homotopies and an exact
// rational nullspace.
#pragma once

#include <random>
#include <vector>

#include "ell/ainf.hpp"

namespace ell::ainf::fixtures {


// exterior algebra on x, y (degree 1); basis index = monomial bitmask
inline HomGrid exterior_grid()
{
    HomGrid g;
    g.add_object("A");
    const char* labels[] = {"1", "x", "y", "xy"};
    for (int b = 0; b < 4; ++b) g.add_basis(labels[b], __builtin_popcount(b), 0, 0);
    return g;
}

inline AInfStructure<QC> exterior(int max_arity)
{
    AInfStructure<QC> s;
    s.grid = exterior_grid();
    for (int n = 1; n <= max_arity; ++n) s.m.declare(n);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (a & b) continue;
            const int inv = ((a & 2) && (b & 1)) ? 1 : 0;
            s.m.add(s.grid, {a, b}, a | b, QC(inv ? -1 : 1));
        }
    return s;
}

inline CyclicPairing<QC> top_pairing(const HomGrid& g)
{
    // b(a, c) = coefficient of xy in a c
    CyclicPairing<QC> p;
    p.declare_block(0, 0);
    p.set(g, 0, 3, QC(1));
    p.set(g, 3, 0, QC(1));
    p.set(g, 1, 2, QC(1));
    p.set(g, 2, 1, QC(-1));
    return p;
}

inline QC rnd_q(std::mt19937& g)
{
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
    return QC(rational(num(g), den(g)), rational(num(g), den(g)));
}

inline HomotopyData<QC> random_homotopy(const HomGrid& grid, int max_arity, std::mt19937& g, double density = 0.5)
{
    HomotopyData<QC> f;
    f.grid = grid;
    std::bernoulli_distribution keep(density);
    for (int n = 2; n <= max_arity; ++n) {
        f.f.declare(n);
        for (const Word& w : grid.words(n)) {
            int deg = 1 - n;
            for (int b : w) deg += grid.elem(b).degree;
            for (int b = 0; b < static_cast<int>(grid.basis().size()); ++b)
                if (grid.elem(b).degree == deg && keep(g)) f.f.add(grid, w, b, rnd_q(g));
        }
    }
    return f;
}

// exact nullspace of a dense rational system
inline std::vector<std::vector<rational>> nullspace(std::vector<std::vector<rational>> A, std::size_t cols)
{
    std::vector<int> pivcol;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < A.size(); ++c) {
        std::size_t p = r;
        while (p < A.size() && A[p][c] == 0) ++p;
        if (p == A.size()) continue;
        std::swap(A[p], A[r]);
        const rational pv = A[r][c];
        for (auto& v : A[r]) v /= pv;
        for (std::size_t i = 0; i < A.size(); ++i)
            if (i != r && A[i][c] != 0) {
                const rational f = A[i][c];
                for (std::size_t j = 0; j < cols; ++j) A[i][j] -= f * A[r][j];
            }
        pivcol.push_back(static_cast<int>(c));
        ++r;
    }
    std::vector<std::vector<rational>> basis;
    std::vector<bool> is_piv(cols, false);
    for (int c : pivcol) is_piv[c] = true;
    for (std::size_t fcol = 0; fcol < cols; ++fcol) {
        if (is_piv[fcol]) continue;
        std::vector<rational> v(cols, 0);
        v[fcol] = 1;
        for (std::size_t i = 0; i < pivcol.size(); ++i) v[pivcol[i]] = -A[i][fcol];
        basis.push_back(v);
    }
    return basis;
}

// random f_3 with b(f3(a1 a2 a3), a4) + b(a1, f3(a2 a3 a4)) = 0, from the exact nullspace of that system
inline HomotopyData<QC> cyclic_f3(const HomGrid& G, const CyclicPairing<QC>& b, std::mt19937& g)
{
    std::vector<std::pair<Word, int>> slots;
    for (const Word& w : G.words(3)) {
        int deg = -2;
        for (int x : w) deg += G.elem(x).degree;
        for (int o = 0; o < int(G.basis().size()); ++o)
            if (G.elem(o).degree == deg) slots.push_back({w, o});
    }
    auto slot_of = [&](const Word& w, int o) {
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (slots[i].first == w && slots[i].second == o) return static_cast<int>(i);
        return -1;
    };
    std::vector<std::vector<rational>> rows;
    for (const Word& a : G.loops(4)) {
        std::vector<rational> row(slots.size(), 0);
        for (int o = 0; o < int(G.basis().size()); ++o) {
            const int i1 = slot_of({a[0], a[1], a[2]}, o);
            if (i1 >= 0) row[i1] += b.value(G, o, a[3]).re;
            const int i2 = slot_of({a[1], a[2], a[3]}, o);
            if (i2 >= 0) row[i2] += b.value(G, a[0], o).re;
        }
        rows.push_back(row);
    }
    std::uniform_int_distribution<int> coef(-2, 2);
    std::vector<rational> x(slots.size(), 0);
    for (const auto& v : nullspace(rows, slots.size())) {
        const int c = coef(g);
        for (std::size_t i = 0; i < v.size(); ++i) x[i] += c * v[i];
    }
    HomotopyData<QC> f;
    f.grid = G;
    f.f.declare(3);
    for (std::size_t i = 0; i < slots.size(); ++i)
        if (x[i] != 0) f.f.add(G, slots[i].first, slots[i].second, QC(x[i]));
    return f;
}

} // namespace ell::ainf::fixtures
