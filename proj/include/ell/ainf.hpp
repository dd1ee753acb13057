// Sign-exact A-infinity engine over finite graded hom grids.
//
// A word [a_1|...|a_n] is composable when a_i : X_{i-1} -> X_i; products map
// it into Hom(X_0, X_n). Tables are sparse: missing entries are zero, a
// missing arity is an error for structures and zero for homotopies.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ell/exact.hpp"

namespace ell::ainf {

struct AInfError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

using Word = std::vector<int>;

struct BasisElem
{
    std::string label;
    int degree;
    int src, tgt;
};

class HomGrid
{
public:
    int add_object(const std::string& name);
    int add_basis(const std::string& label, int degree, int src, int tgt);
    // restricts products and axioms to collections of pairwise-listed objects
    void set_transversal(const std::vector<std::pair<int, int>>& pairs);

    int object_index(const std::string& name) const;
    int basis_index(const std::string& label) const;
    const std::vector<std::string>& objects() const { return objects_; }
    const std::vector<BasisElem>& basis() const { return basis_; }
    const BasisElem& elem(int b) const { return basis_.at(b); }
    int parity(int b) const { return ((basis_.at(b).degree % 2) + 2) % 2; }
    const std::vector<int>& hom(int x, int y) const;
    bool restricted() const { return transversal_.has_value(); }
    const std::set<std::pair<int, int>>& transversal_pairs() const;

    bool transversal(int x, int y) const;
    bool transversal_collection(const std::vector<int>& objs) const;
    bool composable(const Word& w) const;
    std::vector<int> word_objects(const Word& w) const;
    bool admissible(const Word& w) const;
    // admissible words of length n
    std::vector<Word> words(int n) const;
    // words of length n returning to their start, with X_0..X_{n-1} transversal
    std::vector<Word> loops(int n) const;

    bool operator==(const HomGrid& o) const;

private:
    std::vector<std::string> objects_;
    std::vector<BasisElem> basis_;
    std::map<std::pair<int, int>, std::vector<int>> homs_;
    std::optional<std::set<std::pair<int, int>>> transversal_;
};

template <class K> using SparseVec = std::map<int, K>;
template <class K> using Table = std::map<Word, SparseVec<K>>;
template <class K> using WordSum = std::map<Word, K>;

// n-ary maps of degree shift - n (shift 2 for products, 1 for homotopies)
template <class K> class MultiTables
{
public:
    explicit MultiTables(int shift = 2) : shift_(shift) { }

    void declare(int n) { tables_[n]; }
    bool has(int n) const { return tables_.count(n) > 0; }
    int max_arity() const { return tables_.empty() ? 0 : tables_.rbegin()->first; }
    int shift() const { return shift_; }
    const std::map<int, Table<K>>& tables() const { return tables_; }

    // writes one entry, checking composability, transversality and the degree rule
    void set(const HomGrid& g, const Word& in, const SparseVec<K>& out);
    void add(const HomGrid& g, const Word& in, int out_basis, const K& c);
    // nullptr when the entry is zero; throws if the arity table is absent
    const SparseVec<K>* get(int n, const Word& w) const;
    // like get but a missing arity is zero
    const SparseVec<K>* get_or_zero(int n, const Word& w) const;

private:
    int shift_;
    std::map<int, Table<K>> tables_;
};

template <class K> struct AInfStructure
{
    HomGrid grid;
    MultiTables<K> m{2};
};

template <class K> struct HomotopyData
{
    HomGrid grid;
    MultiTables<K> f{1};
};

template <class K> class CyclicPairing
{
public:
    void declare_block(int x, int y) { blocks_.insert({x, y}); }
    void set(const HomGrid& g, int a, int b, const K& v);
    K value(const HomGrid& g, int a, int b) const;

private:
    std::set<std::pair<int, int>> blocks_;
    std::map<std::pair<int, int>, K> entries_;
};

struct Report
{
    double max_residual = 0;
    bool exact_zero = true;
    std::optional<Word> worst;
    std::map<int, double> per_arity;
    bool pass(double tol) const { return max_residual < tol; }
};

int mu_sign(const std::vector<int>& parities);

template <class K> Report check_axiom(const AInfStructure<K>& s, int n);
template <class K> WordSum<K> bar_differential(const AInfStructure<K>& s, const Word& w);
template <class K> WordSum<K> bar_differential(const AInfStructure<K>& s, const WordSum<K>& x);
template <class K> Report check_bar_square(const AInfStructure<K>& s, int max_len);

template <class K>
HomotopyData<K> compose_homotopies(const HomotopyData<K>& f, const HomotopyData<K>& g, int max_arity);
template <class K> HomotopyData<K> inverse_homotopy(const HomotopyData<K>& f, int max_arity);
template <class K> AInfStructure<K> transport(const AInfStructure<K>& m, const HomotopyData<K>& f, int max_arity);

template <class K> Report check_cyclic(const AInfStructure<K>& s, const CyclicPairing<K>& b, int max_arity);
template <class K>
Report check_cyclic_homotopy(const HomotopyData<K>& f, const CyclicPairing<K>& b, int max_arity);

// exact comparison of two table families up to an arity
template <class K> double table_distance(const MultiTables<K>& a, const MultiTables<K>& b, int max_arity);

} // namespace ell::ainf
