#include "ell/ainf_json.hpp"

#include <complex>
#include <string>

namespace ell::ainf {

namespace {

std::string hom_key(const HomGrid& g, int x, int y) { return g.objects().at(x) + "->" + g.objects().at(y); }

template <class K> json scalar_fields(const K& c);
template <> json scalar_fields(const std::complex<double>& c) { return {{"re", c.real()}, {"im", c.imag()}}; }
template <> json scalar_fields(const QC& c) { return {{"re", c.re.str()}, {"im", c.im.str()}}; }

double read_double(const json& v)
{
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return static_cast<double>(rational(v.get<std::string>()));
    throw AInfError("scalar must be a number or a rational string");
}

rational read_rational(const json& v)
{
    if (v.is_number_integer()) return rational(v.get<long long>());
    if (v.is_number()) return rational(v.get<double>());
    if (v.is_string()) {
        try {
            return rational(v.get<std::string>());
        } catch (const std::exception&) {
            throw AInfError("bad rational string: " + v.get<std::string>());
        }
    }
    throw AInfError("scalar must be a number or a rational string");
}

template <class K> K read_scalar(const json& o);
template <> std::complex<double> read_scalar(const json& o)
{
    return {read_double(o.at("re")), o.contains("im") ? read_double(o.at("im")) : 0.0};
}
template <> QC read_scalar(const json& o)
{
    return QC(read_rational(o.at("re")), o.contains("im") ? read_rational(o.at("im")) : rational(0));
}

template <class K> json tables_to_json(const HomGrid& g, const MultiTables<K>& t)
{
    json out = json::object();
    for (const auto& [n, table] : t.tables()) {
        json entries = json::array();
        for (const auto& [w, vec] : table) {
            json in = json::array();
            for (int b : w) in.push_back(g.elem(b).label);
            json outs = json::array();
            for (const auto& [b, c] : vec) {
                json o = {{"label", g.elem(b).label}};
                o.update(scalar_fields(c));
                outs.push_back(o);
            }
            entries.push_back({{"inputs", in}, {"outputs", outs}});
        }
        out[std::to_string(n)] = entries;
    }
    return out;
}

template <class K> void tables_from_json(const json& j, const HomGrid& g, MultiTables<K>& t)
{
    if (!j.is_object()) throw AInfError("tables must be an object keyed by arity");
    for (const auto& [key, entries] : j.items()) {
        int n = 0;
        try {
            std::size_t pos = 0;
            n = std::stoi(key, &pos);
            if (pos != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
            throw AInfError("arity key is not an integer: " + key);
        }
        if (n < 1) throw AInfError("arity must be positive");
        t.declare(n);
        for (const auto& e : entries) {
            Word w;
            for (const auto& l : e.at("inputs")) w.push_back(g.basis_index(l.template get<std::string>()));
            if (int(w.size()) != n) throw AInfError("entry arity does not match its key");
            SparseVec<K> v;
            for (const auto& o : e.at("outputs")) {
                const int b = g.basis_index(o.at("label").template get<std::string>());
                if (v.count(b)) throw AInfError("repeated output label");
                v[b] = read_scalar<K>(o);
            }
            if (t.get(n, w)) throw AInfError("repeated input word");
            t.set(g, w, v);
        }
    }
}

} // namespace

json grid_to_json(const HomGrid& g)
{
    json j;
    j["objects"] = g.objects();
    json homs = json::object();
    for (const auto& e : g.basis()) {
        const std::string key = hom_key(g, e.src, e.tgt);
        if (!homs.contains(key)) homs[key] = {{"basis", json::array()}};
        homs[key]["basis"].push_back({{"label", e.label}, {"degree", e.degree}});
    }
    j["homs"] = homs;
    if (g.restricted()) {
        json pairs = json::array();
        for (const auto& [x, y] : g.transversal_pairs())
            if (x <= y) pairs.push_back({g.objects().at(x), g.objects().at(y)});
        j["transversal"] = pairs;
    }
    return j;
}

HomGrid grid_from_json(const json& j)
{
    try {
        HomGrid g;
        for (const auto& o : j.at("objects")) g.add_object(o.get<std::string>());
        for (const auto& [key, hom] : j.at("homs").items()) {
            const auto arrow = key.find("->");
            if (arrow == std::string::npos) throw AInfError("hom key must look like X->Y: " + key);
            const int x = g.object_index(key.substr(0, arrow)), y = g.object_index(key.substr(arrow + 2));
            for (const auto& b : hom.at("basis")) g.add_basis(b.at("label").get<std::string>(), b.at("degree").get<int>(), x, y);
        }
        if (j.contains("transversal")) {
            std::vector<std::pair<int, int>> pairs;
            for (const auto& p : j.at("transversal")) {
                if (!p.is_array() || p.size() != 2) throw AInfError("transversal entries are pairs");
                pairs.push_back({g.object_index(p[0].get<std::string>()), g.object_index(p[1].get<std::string>())});
            }
            g.set_transversal(pairs);
        }
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw AInfError(std::string("malformed grid: ") + e.what());
    }
}

template <class K> json to_json(const AInfStructure<K>& s)
{
    json j = grid_to_json(s.grid);
    j["products"] = tables_to_json(s.grid, s.m);
    return j;
}

template <class K> json to_json(const HomotopyData<K>& f)
{
    json j = grid_to_json(f.grid);
    j["homotopy"] = tables_to_json(f.grid, f.f);
    return j;
}

template <class K> AInfStructure<K> structure_from_json(const json& j)
{
    AInfStructure<K> s;
    s.grid = grid_from_json(j);
    try {
        tables_from_json(j.at("products"), s.grid, s.m);
    } catch (const nlohmann::json::exception& e) {
        throw AInfError(std::string("malformed products: ") + e.what());
    }
    return s;
}

template <class K> HomotopyData<K> homotopy_from_json(const json& j)
{
    HomotopyData<K> f;
    f.grid = grid_from_json(j);
    try {
        tables_from_json(j.at("homotopy"), f.grid, f.f);
    } catch (const nlohmann::json::exception& e) {
        throw AInfError(std::string("malformed homotopy: ") + e.what());
    }
    return f;
}

template json to_json(const AInfStructure<std::complex<double>>&);
template json to_json(const AInfStructure<QC>&);
template json to_json(const HomotopyData<std::complex<double>>&);
template json to_json(const HomotopyData<QC>&);
template AInfStructure<std::complex<double>> structure_from_json(const json&);
template AInfStructure<QC> structure_from_json(const json&);
template HomotopyData<std::complex<double>> homotopy_from_json(const json&);
template HomotopyData<QC> homotopy_from_json(const json&);

} // namespace ell::ainf
