#include "ell/ainf.hpp"

#include <algorithm>
#include <complex>
#include <functional>

#include "ell/parallel.hpp"

namespace ell::ainf {

// ---------------------------------------------------------------- grid

int HomGrid::add_object(const std::string& name)
{
    if (std::find(objects_.begin(), objects_.end(), name) != objects_.end())
        throw AInfError("duplicate object " + name);
    objects_.push_back(name);
    return static_cast<int>(objects_.size()) - 1;
}

int HomGrid::add_basis(const std::string& label, int degree, int src, int tgt)
{
    const int no = static_cast<int>(objects_.size());
    if (src < 0 || src >= no || tgt < 0 || tgt >= no) throw AInfError("basis element on unknown object");
    for (const auto& b : basis_)
        if (b.label == label) throw AInfError("duplicate basis label " + label);
    basis_.push_back({label, degree, src, tgt});
    const int id = static_cast<int>(basis_.size()) - 1;
    homs_[{src, tgt}].push_back(id);
    return id;
}

void HomGrid::set_transversal(const std::vector<std::pair<int, int>>& pairs)
{
    std::set<std::pair<int, int>> s;
    for (auto [x, y] : pairs) s.insert({std::min(x, y), std::max(x, y)});
    transversal_ = std::move(s);
}

const std::set<std::pair<int, int>>& HomGrid::transversal_pairs() const
{
    static const std::set<std::pair<int, int>> none;
    return transversal_ ? *transversal_ : none;
}

int HomGrid::object_index(const std::string& name) const
{
    auto it = std::find(objects_.begin(), objects_.end(), name);
    if (it == objects_.end()) throw AInfError("unknown object " + name);
    return static_cast<int>(it - objects_.begin());
}

int HomGrid::basis_index(const std::string& label) const
{
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i].label == label) return static_cast<int>(i);
    throw AInfError("unknown basis label " + label);
}

const std::vector<int>& HomGrid::hom(int x, int y) const
{
    static const std::vector<int> empty;
    auto it = homs_.find({x, y});
    return it == homs_.end() ? empty : it->second;
}

bool HomGrid::transversal(int x, int y) const
{
    if (!transversal_) return true;
    return transversal_->count({std::min(x, y), std::max(x, y)}) > 0;
}

bool HomGrid::transversal_collection(const std::vector<int>& objs) const
{
    for (std::size_t i = 0; i < objs.size(); ++i)
        for (std::size_t j = i + 1; j < objs.size(); ++j)
            if (!transversal(objs[i], objs[j])) return false;
    return true;
}

bool HomGrid::composable(const Word& w) const
{
    if (w.empty()) return false;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] < 0 || w[i] >= static_cast<int>(basis_.size())) return false;
        if (i > 0 && basis_[w[i - 1]].tgt != basis_[w[i]].src) return false;
    }
    return true;
}

std::vector<int> HomGrid::word_objects(const Word& w) const
{
    std::vector<int> o;
    o.push_back(basis_.at(w.front()).src);
    for (int b : w) o.push_back(basis_[b].tgt);
    return o;
}

bool HomGrid::admissible(const Word& w) const
{
    return composable(w) && transversal_collection(word_objects(w));
}

namespace {

void extend_words(const HomGrid& g, Word& cur, int n, bool loop, std::vector<Word>& out)
{
    if (static_cast<int>(cur.size()) == n) {
        const auto objs = g.word_objects(cur);
        if (loop) {
            if (objs.back() != objs.front()) return;
            if (g.transversal_collection({objs.begin(), objs.end() - 1})) out.push_back(cur);
        } else if (g.transversal_collection(objs)) {
            out.push_back(cur);
        }
        return;
    }
    const int from = cur.empty() ? -1 : g.elem(cur.back()).tgt;
    for (int b = 0; b < static_cast<int>(g.basis().size()); ++b) {
        if (from >= 0 && g.elem(b).src != from) continue;
        cur.push_back(b);
        extend_words(g, cur, n, loop, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<Word> HomGrid::words(int n) const
{
    std::vector<Word> out;
    Word cur;
    if (n >= 1) extend_words(*this, cur, n, false, out);
    return out;
}

std::vector<Word> HomGrid::loops(int n) const
{
    std::vector<Word> out;
    Word cur;
    if (n >= 1) extend_words(*this, cur, n, true, out);
    return out;
}

bool HomGrid::operator==(const HomGrid& o) const
{
    if (objects_ != o.objects_ || basis_.size() != o.basis_.size() || transversal_ != o.transversal_)
        return false;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const auto &a = basis_[i], &b = o.basis_[i];
        if (a.label != b.label || a.degree != b.degree || a.src != b.src || a.tgt != b.tgt) return false;
    }
    return true;
}

// ---------------------------------------------------------------- tables

template <class K> void MultiTables<K>::set(const HomGrid& g, const Word& in, const SparseVec<K>& out)
{
    const int n = static_cast<int>(in.size());
    if (!g.admissible(in)) throw AInfError("table entry on a non-composable or non-transversal word");
    int deg = shift_ - n;
    for (int b : in) deg += g.elem(b).degree;
    const int x0 = g.elem(in.front()).src, xn = g.elem(in.back()).tgt;
    SparseVec<K> clean;
    for (const auto& [b, c] : out) {
        if (is_zero(c)) continue;
        const auto& e = g.elem(b);
        if (e.degree != deg) throw AInfError("degree rule violated by table entry");
        if (e.src != x0 || e.tgt != xn) throw AInfError("table output in the wrong hom space");
        clean[b] = c;
    }
    auto& t = tables_[n];
    if (clean.empty())
        t.erase(in);
    else
        t[in] = std::move(clean);
}

template <class K> void MultiTables<K>::add(const HomGrid& g, const Word& in, int out_basis, const K& c)
{
    SparseVec<K> v;
    if (auto* cur = get_or_zero(static_cast<int>(in.size()), in)) v = *cur;
    v[out_basis] += c;
    set(g, in, v);
}

template <class K> const SparseVec<K>* MultiTables<K>::get(int n, const Word& w) const
{
    auto it = tables_.find(n);
    if (it == tables_.end()) throw AInfError("table absent for arity " + std::to_string(n));
    auto e = it->second.find(w);
    return e == it->second.end() ? nullptr : &e->second;
}

template <class K> const SparseVec<K>* MultiTables<K>::get_or_zero(int n, const Word& w) const
{
    auto it = tables_.find(n);
    if (it == tables_.end()) return nullptr;
    auto e = it->second.find(w);
    return e == it->second.end() ? nullptr : &e->second;
}

template <class K> void CyclicPairing<K>::set(const HomGrid& g, int a, int b, const K& v)
{
    const auto &ea = g.elem(a), &eb = g.elem(b);
    if (ea.src != eb.tgt || ea.tgt != eb.src) throw AInfError("pairing on non-dual hom spaces");
    blocks_.insert({ea.src, ea.tgt});
    blocks_.insert({eb.src, eb.tgt});
    entries_[{a, b}] = v;
}

template <class K> K CyclicPairing<K>::value(const HomGrid& g, int a, int b) const
{
    const auto &ea = g.elem(a), &eb = g.elem(b);
    if (ea.src != eb.tgt || ea.tgt != eb.src) throw AInfError("pairing on non-dual hom spaces");
    if (!blocks_.count({ea.src, ea.tgt})) throw AInfError("missing pairing block");
    auto it = entries_.find({a, b});
    return it == entries_.end() ? K(0) : it->second;
}

// ---------------------------------------------------------------- signs

int mu_sign(const std::vector<int>& p)
{
    if (p.empty()) throw AInfError("mu of an empty list");
    const long k = static_cast<long>(p.size());
    long s = k * (k - 1) / 2;
    for (long i = 0; i < k; ++i) s += (k - 1 - i) * (p[i] & 1);
    return static_cast<int>(s & 1);
}

namespace {

template <class K> K signed_(const K& c, int parity) { return (parity & 1) ? -c : c; }

int word_mu(const HomGrid& g, const Word& w, std::size_t from, std::size_t to)
{
    std::vector<int> p;
    for (std::size_t i = from; i < to; ++i) p.push_back(g.parity(w[i]));
    return mu_sign(p);
}

int parity_sum(const HomGrid& g, const Word& w, std::size_t from, std::size_t to)
{
    int s = 0;
    for (std::size_t i = from; i < to; ++i) s += g.parity(w[i]);
    return s & 1;
}

Word splice(const Word& w, std::size_t j, std::size_t l, int b)
{
    Word r(w.begin(), w.begin() + j);
    r.push_back(b);
    r.insert(r.end(), w.begin() + j + l, w.end());
    return r;
}

template <class K> void accumulate(SparseVec<K>& acc, const SparseVec<K>& v, const K& c)
{
    for (const auto& [b, x] : v) {
        K t = x;
        t *= c;
        acc[b] += t;
    }
}

template <class K> void prune(SparseVec<K>& v)
{
    for (auto it = v.begin(); it != v.end();)
        it = is_zero(it->second) ? v.erase(it) : std::next(it);
}

template <class K> double norm(const SparseVec<K>& v)
{
    double m = 0;
    for (const auto& [b, c] : v) m = std::max(m, magnitude(c));
    return m;
}

template <class K> bool all_zero(const SparseVec<K>& v)
{
    for (const auto& [b, c] : v)
        if (!is_zero(c)) return false;
    return true;
}

// all block-size sequences summing to n
std::vector<std::vector<int>> compositions(int n)
{
    std::vector<std::vector<int>> out;
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
        std::vector<int> c;
        int len = 1;
        for (int i = 0; i < n - 1; ++i) {
            if (mask & (1u << i)) {
                c.push_back(len);
                len = 1;
            } else {
                ++len;
            }
        }
        c.push_back(len);
        out.push_back(c);
    }
    return out;
}

// homotopy component with f_1 = id
template <class K> SparseVec<K> apply_f(const MultiTables<K>& f, const Word& w)
{
    if (w.size() == 1) return {{w[0], K(1)}};
    if (auto* v = f.get_or_zero(static_cast<int>(w.size()), w)) return *v;
    return {};
}

// expands f_{b1}(block_1) (x) ... (x) f_{bi}(block_i) into words
template <class K>
void for_each_block_image(const MultiTables<K>& f, const Word& a, const std::vector<int>& blocks,
                          const std::function<void(const Word&, const K&)>& cb)
{
    std::vector<SparseVec<K>> imgs;
    std::size_t pos = 0;
    for (int b : blocks) {
        imgs.push_back(apply_f(f, Word(a.begin() + pos, a.begin() + pos + b)));
        if (imgs.back().empty()) return;
        pos += b;
    }
    Word cur;
    std::function<void(std::size_t, const K&)> rec = [&](std::size_t i, const K& c) {
        if (i == imgs.size()) {
            cb(cur, c);
            return;
        }
        for (const auto& [b, x] : imgs[i]) {
            cur.push_back(b);
            rec(i + 1, c * x);
            cur.pop_back();
        }
    };
    rec(0, K(1));
}

// sum of mu over the blocks of a
int blocks_mu(const HomGrid& g, const Word& a, const std::vector<int>& blocks)
{
    int s = 0;
    std::size_t pos = 0;
    for (int b : blocks) {
        s += word_mu(g, a, pos, pos + b);
        pos += b;
    }
    return s & 1;
}

template <class K> Report finish(const std::vector<Word>& ws, const std::vector<SparseVec<K>>& res, int arity)
{
    Report r;
    double worst = -1;
    for (std::size_t i = 0; i < ws.size(); ++i) {
        const double v = norm(res[i]);
        if (!all_zero(res[i])) r.exact_zero = false;
        if (v > worst) {
            worst = v;
            if (v > 0) r.worst = ws[i];
        }
    }
    r.max_residual = std::max(0.0, worst);
    r.per_arity[arity] = r.max_residual;
    return r;
}

void merge(Report& into, const Report& r)
{
    if (r.max_residual > into.max_residual) {
        into.max_residual = r.max_residual;
        into.worst = r.worst;
    }
    into.exact_zero = into.exact_zero && r.exact_zero;
    for (auto [k, v] : r.per_arity) into.per_arity[k] = v;
}

} // namespace

// ---------------------------------------------------------------- axioms

template <class K> Report check_axiom(const AInfStructure<K>& s, int n)
{
    if (n < 1) throw AInfError("arity must be positive");
    for (int k = 1; k <= n; ++k)
        if (!s.m.has(k)) throw AInfError("table absent for arity " + std::to_string(k));
    const auto& g = s.grid;
    const auto ws = g.words(n);
    std::vector<SparseVec<K>> res(ws.size());
    parallel_for(ws.size(), [&](std::size_t wi) {
        const Word& a = ws[wi];
        SparseVec<K> acc;
        for (int l = 1; l <= n; ++l) {
            const int k = n + 1 - l;
            for (int j = 1; j <= k; ++j) {
                const Word inner(a.begin() + (j - 1), a.begin() + (j - 1 + l));
                const auto* iv = s.m.get(l, inner);
                if (!iv) continue;
                const int sg = (l * parity_sum(g, a, 0, j - 1) + j * (l + 1)) & 1;
                for (const auto& [b, c] : *iv) {
                    const Word outer = splice(a, j - 1, l, b);
                    if (const auto* ov = s.m.get(k, outer)) accumulate(acc, *ov, signed_(c, sg));
                }
            }
        }
        prune(acc);
        res[wi] = std::move(acc);
    });
    return finish(ws, res, n);
}

template <class K> WordSum<K> bar_differential(const AInfStructure<K>& s, const Word& w)
{
    const auto& g = s.grid;
    if (!g.composable(w)) throw AInfError("bar differential of a non-composable word");
    const int n = static_cast<int>(w.size());
    WordSum<K> out;
    for (int l = 1; l <= n; ++l) {
        if (!s.m.has(l)) throw AInfError("table absent for arity " + std::to_string(l));
        const int k = n + 1 - l;
        for (int j = 1; j <= k; ++j) {
            const Word inner(w.begin() + (j - 1), w.begin() + (j - 1 + l));
            const auto* iv = s.m.get(l, inner);
            if (!iv) continue;
            const int sg = (parity_sum(g, w, 0, j - 1) + (j - 1) + word_mu(g, inner, 0, inner.size())) & 1;
            for (const auto& [b, c] : *iv) out[splice(w, j - 1, l, b)] += signed_(c, sg);
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = is_zero(it->second) ? out.erase(it) : std::next(it);
    return out;
}

template <class K> WordSum<K> bar_differential(const AInfStructure<K>& s, const WordSum<K>& x)
{
    WordSum<K> out;
    for (const auto& [w, c] : x)
        for (const auto& [w2, c2] : bar_differential(s, w)) out[w2] += c * c2;
    for (auto it = out.begin(); it != out.end();)
        it = is_zero(it->second) ? out.erase(it) : std::next(it);
    return out;
}

template <class K> Report check_bar_square(const AInfStructure<K>& s, int max_len)
{
    Report total;
    for (int n = 1; n <= max_len; ++n) {
        const auto ws = s.grid.words(n);
        std::vector<SparseVec<K>> res(ws.size());
        parallel_for(ws.size(), [&](std::size_t i) {
            const auto dd = bar_differential(s, bar_differential(s, ws[i]));
            SparseVec<K> flat;
            int idx = 0;
            for (const auto& [w, c] : dd) flat[idx++] = c;
            res[i] = std::move(flat);
        });
        merge(total, finish(ws, res, n));
    }
    return total;
}

// ---------------------------------------------------------------- homotopies

template <class K>
HomotopyData<K> compose_homotopies(const HomotopyData<K>& f, const HomotopyData<K>& g, int max_arity)
{
    if (!(f.grid == g.grid)) throw AInfError("homotopies live on different hom grids");
    HomotopyData<K> out;
    out.grid = f.grid;
    const auto& G = f.grid;
    for (int n = 2; n <= max_arity; ++n) {
        out.f.declare(n);
        const auto comps = compositions(n);
        for (const Word& a : G.words(n)) {
            SparseVec<K> acc;
            const int mua = word_mu(G, a, 0, a.size());
            for (const auto& blocks : comps) {
                const int i = static_cast<int>(blocks.size());
                const int sb = blocks_mu(G, a, blocks);
                for_each_block_image<K>(g.f, a, blocks, [&](const Word& gw, const K& c) {
                    const int sg = (sb + word_mu(G, gw, 0, gw.size()) + mua) & 1;
                    accumulate(acc, apply_f(f.f, gw), signed_(c, sg));
                    (void)i;
                });
            }
            prune(acc);
            if (!acc.empty()) out.f.set(G, a, acc);
        }
    }
    return out;
}

template <class K> HomotopyData<K> inverse_homotopy(const HomotopyData<K>& f, int max_arity)
{
    HomotopyData<K> gi;
    gi.grid = f.grid;
    const auto& G = f.grid;
    for (int n = 2; n <= max_arity; ++n) {
        gi.f.declare(n);
        const auto comps = compositions(n);
        for (const Word& a : G.words(n)) {
            SparseVec<K> acc;
            const int mua = word_mu(G, a, 0, a.size());
            for (const auto& blocks : comps) {
                if (blocks.size() == 1) continue; // the unknown g_n(a) itself
                const int sb = blocks_mu(G, a, blocks);
                for_each_block_image<K>(gi.f, a, blocks, [&](const Word& gw, const K& c) {
                    const int sg = (sb + word_mu(G, gw, 0, gw.size()) + mua + 1) & 1;
                    accumulate(acc, apply_f(f.f, gw), signed_(c, sg));
                });
            }
            prune(acc);
            if (!acc.empty()) gi.f.set(G, a, acc);
        }
    }
    return gi;
}

template <class K> AInfStructure<K> transport(const AInfStructure<K>& m, const HomotopyData<K>& f, int max_arity)
{
    if (!(m.grid == f.grid)) throw AInfError("homotopy and structure live on different hom grids");
    AInfStructure<K> out;
    out.grid = m.grid;
    const auto& G = m.grid;
    for (int n = 1; n <= max_arity; ++n) {
        for (int k = 1; k <= n; ++k)
            if (!m.m.has(k)) throw AInfError("table absent for arity " + std::to_string(k));
        out.m.declare(n);
        const auto comps = compositions(n);
        for (const Word& a : G.words(n)) {
            SparseVec<K> acc; // RHS - (LHS without the m'_n term)
            // f_k(..., m_l(...), ...)
            for (int l = 1; l <= n; ++l) {
                const int k = n + 1 - l;
                for (int j = 1; j <= k; ++j) {
                    const Word inner(a.begin() + (j - 1), a.begin() + (j - 1 + l));
                    const auto* iv = m.m.get(l, inner);
                    if (!iv) continue;
                    const int s0 = (parity_sum(G, a, 0, j - 1) + (j - 1) + word_mu(G, inner, 0, inner.size())) & 1;
                    for (const auto& [b, c] : *iv) {
                        const Word outer = splice(a, j - 1, l, b);
                        const int sg = (s0 + word_mu(G, outer, 0, outer.size())) & 1;
                        accumulate(acc, apply_f(f.f, outer), signed_(c, sg));
                    }
                }
            }
            // m'_i(f(...), ..., f(...)) for i < n
            for (const auto& blocks : comps) {
                const int i = static_cast<int>(blocks.size());
                if (i == n) continue;
                const int sb = blocks_mu(G, a, blocks);
                for_each_block_image<K>(f.f, a, blocks, [&](const Word& fw, const K& c) {
                    const auto* v = out.m.get(i, fw);
                    if (!v) return;
                    const int sg = (sb + word_mu(G, fw, 0, fw.size()) + 1) & 1;
                    accumulate(acc, *v, signed_(c, sg));
                });
            }
            prune(acc);
            if (acc.empty()) continue;
            const int mua = word_mu(G, a, 0, a.size());
            for (auto& [b, c] : acc) c = signed_(c, mua);
            out.m.set(G, a, acc);
        }
    }
    return out;
}

// ---------------------------------------------------------------- cyclicity

template <class K> Report check_cyclic(const AInfStructure<K>& s, const CyclicPairing<K>& bp, int max_arity)
{
    const auto& G = s.grid;
    Report total;
    for (int n = 1; n <= max_arity; ++n) {
        if (!s.m.has(n)) throw AInfError("table absent for arity " + std::to_string(n));
        const auto ws = G.loops(n + 1);
        std::vector<SparseVec<K>> res(ws.size());
        parallel_for(ws.size(), [&](std::size_t wi) {
            const Word& a = ws[wi];
            K lhs(0), rhs(0);
            if (const auto* v = s.m.get(n, Word(a.begin(), a.end() - 1)))
                for (const auto& [b, c] : *v) lhs += c * bp.value(G, b, a.back());
            if (const auto* v = s.m.get(n, Word(a.begin() + 1, a.end())))
                for (const auto& [b, c] : *v) rhs += c * bp.value(G, a.front(), b);
            const int sg = (n * (G.parity(a.front()) + 1)) & 1;
            SparseVec<K> r;
            r[0] = lhs - signed_(rhs, sg);
            prune(r);
            res[wi] = std::move(r);
        });
        merge(total, finish(ws, res, n));
    }
    return total;
}

template <class K>
Report check_cyclic_homotopy(const HomotopyData<K>& f, const CyclicPairing<K>& bp, int max_arity)
{
    const auto& G = f.grid;
    Report total;
    for (int n = 3; n <= max_arity; ++n) {
        const auto ws = G.loops(n);
        std::vector<SparseVec<K>> res(ws.size());
        parallel_for(ws.size(), [&](std::size_t wi) {
            const Word& a = ws[wi];
            K acc(0);
            for (int k = 1; k < n; ++k) {
                const int l = n - k;
                const auto x = apply_f(f.f, Word(a.begin(), a.begin() + k));
                const auto y = apply_f(f.f, Word(a.begin() + k, a.end()));
                if (x.empty() || y.empty()) continue;
                const int sg = ((l + 1) * parity_sum(G, a, 0, k) + n * k) & 1;
                for (const auto& [bx, cx] : x)
                    for (const auto& [by, cy] : y) acc += signed_(cx * cy * bp.value(G, bx, by), sg);
            }
            SparseVec<K> r;
            r[0] = acc;
            prune(r);
            res[wi] = std::move(r);
        });
        merge(total, finish(ws, res, n));
    }
    return total;
}

template <class K> double table_distance(const MultiTables<K>& a, const MultiTables<K>& b, int max_arity)
{
    double d = 0;
    for (int n = 1; n <= max_arity; ++n) {
        std::set<Word> keys;
        for (const auto* t : {&a, &b})
            if (t->tables().count(n))
                for (const auto& [w, v] : t->tables().at(n)) keys.insert(w);
        for (const Word& w : keys) {
            SparseVec<K> diff;
            if (auto* v = a.get_or_zero(n, w)) accumulate(diff, *v, K(1));
            if (auto* v = b.get_or_zero(n, w)) accumulate(diff, *v, K(-1));
            prune(diff);
            d = std::max(d, norm(diff));
            if (!diff.empty() && d == 0) d = 1e-300;
        }
    }
    return d;
}

#define ELL_AINF_INSTANTIATE(K)                                                                     \
    template class MultiTables<K>;                                                                  \
    template class CyclicPairing<K>;                                                                \
    template Report check_axiom<K>(const AInfStructure<K>&, int);                                   \
    template WordSum<K> bar_differential<K>(const AInfStructure<K>&, const Word&);                  \
    template WordSum<K> bar_differential<K>(const AInfStructure<K>&, const WordSum<K>&);            \
    template Report check_bar_square<K>(const AInfStructure<K>&, int);                              \
    template HomotopyData<K> compose_homotopies<K>(const HomotopyData<K>&, const HomotopyData<K>&, int); \
    template HomotopyData<K> inverse_homotopy<K>(const HomotopyData<K>&, int);                      \
    template AInfStructure<K> transport<K>(const AInfStructure<K>&, const HomotopyData<K>&, int);   \
    template Report check_cyclic<K>(const AInfStructure<K>&, const CyclicPairing<K>&, int);         \
    template Report check_cyclic_homotopy<K>(const HomotopyData<K>&, const CyclicPairing<K>&, int); \
    template double table_distance<K>(const MultiTables<K>&, const MultiTables<K>&, int);

ELL_AINF_INSTANTIATE(std::complex<double>)
ELL_AINF_INSTANTIATE(QC)

} // namespace ell::ainf
