#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ell/ainf_json.hpp"
#include "ell/hodge.hpp"
#include "ell/mirror.hpp"
#include "ell/triple.hpp"

namespace ell::cli {

namespace {

using json = nlohmann::ordered_json;

struct BadInput : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct Options
{
    std::string tau = "0+1i";
    double tol = -1; // < 0: command default
    double cutoff = 1e-16;
    double area_cutoff = 0;
    unsigned seed = 1;
    int rank = 1;
    int samples = -1; // < 0: command default
    std::string input, output;
    // command specific
    std::string z = "0.31+0.17i", w = "0.1+0.2i", t, u;
    int n = 0, k = 0, degree = 3, max_arity = 4;
    bool exact = false;
};

struct Result
{
    std::string name;
    double residual;
    double tol;
    bool pass() const { return residual < tol; } // NaN fails
};

struct Context
{
    Options opt;
    ModularParam mp;
    fukaya::EnumOptions eo;
    std::mt19937 rng;
    std::vector<Result> results;
    json data = json::object();

    double tol(double fallback) const { return opt.tol > 0 ? opt.tol : fallback; }
    int samples(int fallback) const { return opt.samples > 0 ? opt.samples : fallback; }
    void add(const std::string& name, double residual, double fallback_tol)
    {
        results.push_back({name, residual, tol(fallback_tol)});
    }
};

constexpr double kPi = 3.14159265358979323846;
const cplx kI(0, 1);

cplx parse_complex(std::string s)
{
    s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
    if (s.empty()) throw BadInput("empty complex number");
    try {
        std::size_t pos = 0;
        if (s.back() != 'i') {
            const double re = std::stod(s, &pos);
            if (pos != s.size()) throw BadInput("");
            return {re, 0};
        }
        const std::string body = s.substr(0, s.size() - 1);
        // split at the last sign that is not a leading sign or an exponent sign
        std::size_t cut = std::string::npos;
        for (std::size_t i = body.size(); i-- > 1;)
            if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
                cut = i;
                break;
            }
        const auto imag_part = [](const std::string& x) {
            if (x.empty() || x == "+") return 1.0;
            if (x == "-") return -1.0;
            std::size_t p = 0;
            const double v = std::stod(x, &p);
            if (p != x.size()) throw BadInput("");
            return v;
        };
        if (cut == std::string::npos) return {0, imag_part(body)};
        const std::string re_s = body.substr(0, cut);
        const double re = std::stod(re_s, &pos);
        if (pos != re_s.size()) throw BadInput("");
        return {re, imag_part(body.substr(cut))};
    } catch (const std::exception&) {
        throw BadInput("cannot parse complex number '" + s + "' (expected a+bi)");
    }
}

json cjson(cplx c) { return {{"re", c.real()}, {"im", c.imag()}}; }

cplx read_c(const json& j)
{
    if (j.is_number()) return {j.get<double>(), 0};
    return {j.at("re").get<double>(), j.contains("im") ? j.at("im").get<double>() : 0.0};
}

Eigen::MatrixXcd read_matrix(const json& j)
{
    if (!j.is_array() || j.empty() || !j[0].is_array()) throw BadInput("matrix must be a non-empty array of rows");
    Eigen::MatrixXcd M(j.size(), j[0].size());
    for (std::size_t r = 0; r < j.size(); ++r) {
        if (j[r].size() != j[0].size()) throw BadInput("ragged matrix");
        for (std::size_t c = 0; c < j[r].size(); ++c) M(r, c) = read_c(j[r][c]);
    }
    return M;
}

json matrix_json(const Eigen::MatrixXcd& M)
{
    json rows = json::array();
    for (int r = 0; r < M.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < M.cols(); ++c) row.push_back(cjson(M(r, c)));
        rows.push_back(row);
    }
    return rows;
}

json read_input(const Options& o)
{
    if (o.input.empty()) throw BadInput("--input is required");
    std::ifstream f(o.input);
    if (!f) throw BadInput("cannot open " + o.input);
    try {
        return json::parse(f);
    } catch (const json::exception& e) {
        throw BadInput(std::string("invalid JSON: ") + e.what());
    }
}

Eigen::MatrixXcd jordan(int r, cplx s = 1)
{
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(r, r);
    for (int i = 0; i + 1 < r; ++i) J(i, i + 1) = s;
    return J;
}

Eigen::MatrixXcd random_matrix(std::mt19937& g, int r, int c)
{
    std::uniform_real_distribution<double> ud(-1, 1);
    Eigen::MatrixXcd M(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) M(i, j) = cplx(ud(g), ud(g));
    return M;
}

// ---- theta ----

void theta_eval(Context& c)
{
    const cplx z = parse_complex(c.opt.z), w = parse_complex(c.opt.w);
    const int n = c.opt.n;
    std::function<cplx(cplx)> f;
    int d = 1;
    cplx shift = 0;
    if (n == 0) {
        f = [&](cplx x) { return theta<cplx>(x, c.mp); };
    } else {
        if (n < 0 || c.opt.k < 0 || c.opt.k >= n) throw BadInput("need n > 0 and 0 <= k < n");
        f = [&, n](cplx x) { return theta_basis<cplx>(c.opt.k, n, w, x, c.mp); };
        d = n;
        shift = w;
    }
    const cplx v = f(z);
    c.data["value"] = cjson(v);
    const cplx factor = std::exp(-kI * kPi * c.mp.tau * double(d) - 2.0 * kPi * kI * double(d) * z - 2.0 * kPi * kI * shift);
    const double scale = std::max(1.0, std::abs(v));
    c.add("period_1", std::abs(f(z + 1.0) - v) / scale, 1e-10);
    c.add("period_tau", std::abs(f(z + c.mp.tau) - factor * v) / std::max(scale, std::abs(factor * v)), 1e-10);
}

void theta_kronecker(Context& c)
{
    std::uniform_real_distribution<double> ud(0.05, 0.95);
    double worst = 0;
    json pts = json::array();
    for (int s = 0; s < c.samples(25); ++s) {
        const cplx t = cplx(ud(c.rng)) + ud(c.rng) * c.mp.tau, u = cplx(ud(c.rng)) + ud(c.rng) * c.mp.tau;
        const cplx a = kronecker_F_lattice<cplx>(t, u, c.mp), b = kronecker_F_theta<cplx>(t, u, c.mp);
        worst = std::max(worst, std::abs(a - b));
    }
    c.add("lattice_vs_theta", worst, 1e-9);
}

// ---- fukaya ----

void fukaya_mk(Context& c)
{
    const json in = read_input(c.opt);
    std::vector<fukaya::FukayaObject> objs;
    std::vector<fukaya::FukayaMorphism> ms;
    try {
        for (const auto& o : in.at("objects")) {
            const fukaya::GeodesicCircle circ(o.at("p").get<long>(), o.value("q", 1L), o.value("c", 0.0));
            const double lambda = o.value("lambda", 0.0);
            objs.push_back(o.contains("N") ? fukaya::make_object(circ, lambda, read_matrix(o.at("N")))
                                           : fukaya::make_object(circ, lambda));
        }
        const auto& mj = in.at("morphisms");
        if (mj.size() + 1 != objs.size()) throw BadInput("need one morphism per consecutive pair of objects");
        for (std::size_t i = 0; i < mj.size(); ++i) {
            const Eigen::MatrixXcd M = mj[i].contains("matrix") ? read_matrix(mj[i].at("matrix"))
                                                                : Eigen::MatrixXcd::Ones(1, 1);
            ms.push_back(fukaya::FukayaMorphism::basis(objs[i], objs[i + 1], mj[i].at("point").get<int>(), M));
        }
    } catch (const json::exception& e) {
        throw BadInput(std::string("malformed fukaya input: ") + e.what());
    }
    const auto r = fukaya::m_k_F(ms, c.mp, c.eo);
    const auto pts = fukaya::intersections(objs.front().circle, objs.back().circle);
    json outs = json::array();
    for (std::size_t p = 0; p < r.coeff.size(); ++p)
        outs.push_back({{"point", {pts[p][0], pts[p][1]}}, {"coefficient", matrix_json(r.coeff[p])}});
    c.data["degree"] = r.degree();
    c.data["outputs"] = outs;
    fukaya::EnumOptions wide = c.eo;
    wide.area_cutoff = 2 * (c.eo.area_cutoff > 0 ? c.eo.area_cutoff : fukaya::default_area_cutoff(c.mp));
    const auto r2 = fukaya::m_k_F(ms, c.mp, wide);
    double d = 0;
    for (std::size_t p = 0; p < r.coeff.size(); ++p) d = std::max(d, (r.coeff[p] - r2.coeff[p]).cwiseAbs().maxCoeff());
    c.add("area_cutoff_doubling", d, 1e-8);
}

// ---- holomorphic ----

cplx default_t(const Context& c) { return c.opt.t.empty() ? cplx(0.13) + 0.31 * c.mp.tau : parse_complex(c.opt.t); }
cplx default_u(const Context& c) { return c.opt.u.empty() ? cplx(-0.21) + 0.44 * c.mp.tau : parse_complex(c.opt.u); }

void holo_m3h(Context& c)
{
    const cplx t = default_t(c), u = default_u(c);
    if (c.opt.rank < 1 || c.opt.rank > 3) throw BadInput("--rank must be 1, 2 or 3");
    const cplx F = kronecker_F_theta<cplx>(t, u, c.mp);
    c.data["F"] = cjson(F);
    // primitive identity at sample points
    std::uniform_real_distribution<double> ud(0, 1);
    double prim = 0;
    for (int s = 0; s < c.samples(20); ++s) {
        const cplx z = cplx(ud(c.rng)) + ud(c.rng) * c.mp.tau;
        const cplx r = h<cplx>(z, t, c.mp) * theta<cplx>(z + u, c.mp) - h<cplx>(z, u, c.mp) * theta<cplx>(z + t, c.mp) +
                       F * theta<cplx>(z + t + u, c.mp);
        prim = std::max(prim, std::abs(r));
    }
    c.add("primitive_identity", prim, 1e-9);
    const int r = c.opt.rank;
    const Eigen::MatrixXcd one = Eigen::MatrixXcd::Ones(1, 1);
    const std::vector<Eigen::MatrixXcd> N{jordan(r), Eigen::MatrixXcd::Zero(1, 1), Eigen::MatrixXcd::Zero(1, 1),
                                          Eigen::MatrixXcd::Zero(1, 1)};
    const Eigen::MatrixXcd v01 = random_matrix(c.rng, 1, r);
    const Eigen::MatrixXcd m = holo::m3_H(t, u, N, v01, one, one, c.mp);
    c.data["m3"] = matrix_json(m);
    // the same product by transfer from the Dolbeault algebra
    const mirror::BasicConfig cfg{t, u, N};
    const auto O = cfg.objects();
    const auto H = triple::holomorphic_provider(c.mp);
    const auto res = H.m3(mirror::HoloMorphism::basis(O[0], O[1], 0, v01), mirror::HoloMorphism::basis(O[1], O[2], 0, one),
                          mirror::HoloMorphism::basis(O[2], O[3], 0, one));
    c.add("closed_form_vs_transfer", (res.coeff[0] - m).cwiseAbs().maxCoeff(), 1e-8);
}

void holo_mainlem(Context& c)
{
    if (c.opt.degree != 3 && c.opt.degree != 4) throw BadInput("--degree must be 3 or 4");
    std::uniform_real_distribution<double> ud(0.05, 0.95);
    std::vector<holo::LineBundleLabel> S;
    for (int i = 0; i < c.samples(12); ++i) S.push_back({1 + i % 3, cplx(ud(c.rng), ud(c.rng)) * 0.9, {}});
    const auto rep = holo::mainlem_exactness_check({c.opt.degree, cplx(0.21, 0.34), {}}, S, c.mp);
    c.data["dims"] = {{"left", rep.dim_left}, {"middle", rep.dim_middle}, {"target", rep.dim_target}};
    c.data["ranks"] = {{"alpha", rep.rank_alpha}, {"beta", rep.rank_beta}, {"ker_beta", rep.dim_ker_beta}};
    c.add("beta_alpha", rep.beta_alpha_norm, 1e-9);
    c.results.push_back({"beta_surjective", rep.beta_surjective ? 0.0 : 1.0, 0.5});
    c.results.push_back({"rank_alpha_eq_ker_beta", double(std::abs(rep.rank_alpha - rep.dim_ker_beta)), 0.5});
}

void holo_serre(Context& c)
{
    const int n = c.opt.n > 0 ? c.opt.n : 2;
    const cplx w = parse_complex(c.opt.w);
    double worst = 0;
    json table = json::array();
    for (int j = 0; j < n; ++j) {
        json row = json::array();
        for (int k = 0; k < n; ++k) {
            holo::SectionVector f{{n, w, {}}, Eigen::VectorXcd::Unit(n, j)};
            holo::SectionVector g{{-n, -w, {}}, Eigen::VectorXcd::Unit(n, k)};
            const cplx b = holo::serre_pairing_numeric(f, g, 96, c.mp);
            worst = std::max(worst, std::abs(b - (j == k ? 1.0 : 0.0)));
            row.push_back(cjson(b));
        }
        table.push_back(row);
    }
    c.data["pairing"] = table;
    c.add("dual_basis", worst, 1e-9);
}

// ---- mirror ----

void mirror_m2(Context& c)
{
    if (c.opt.rank < 1 || c.opt.rank > 2) throw BadInput("--rank must be 1 or 2");
    std::uniform_real_distribution<double> ud(-0.5, 0.5);
    std::uniform_int_distribution<int> deg(-2, 2), rk(1, c.opt.rank);
    double worst = 0;
    for (int s = 0; s < c.samples(10);) {
        std::vector<holo::LineBundleLabel> objs;
        for (int i = 0; i < 3; ++i) {
            const int r = rk(c.rng);
            objs.push_back({deg(c.rng), cplx(ud(c.rng)) + ud(c.rng) * c.mp.tau, jordan(r, cplx(ud(c.rng) + 1.0, ud(c.rng)))});
        }
        if (objs[0].n == objs[1].n || objs[1].n == objs[2].n || objs[0].n == objs[2].n) continue;
        worst = std::max(worst, mirror::compare_m2(objs, c.mp).residual);
        ++s;
    }
    c.add("m2_H_vs_F", worst, 1e-8);
}

void mirror_m3(Context& c)
{
    if (c.opt.rank < 1 || c.opt.rank > 2) throw BadInput("--rank must be 1 or 2");
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.2, 0.8);
    std::bernoulli_distribution coin(0.5);
    double res = 0, poly = 0, lat = 0;
    for (int s = 0; s < c.samples(10); ++s) {
        const cplx t = cplx(re(c.rng)) + im(c.rng) * c.mp.tau, u = cplx(re(c.rng)) + im(c.rng) * c.mp.tau;
        std::vector<Eigen::MatrixXcd> N;
        for (int i = 0; i < 4; ++i) N.push_back(c.opt.rank == 2 && coin(c.rng) ? jordan(2, cplx(re(c.rng) + 1.0, re(c.rng)))
                                                                              : Eigen::MatrixXcd::Zero(1, 1));
        const auto r = mirror::compare_m3({t, u, N}, random_matrix(c.rng, N[1].rows(), N[0].rows()),
                                          random_matrix(c.rng, N[2].rows(), N[1].rows()),
                                          random_matrix(c.rng, N[3].rows(), N[2].rows()), c.mp);
        res = std::max(res, r.residual);
        poly = std::max(poly, r.closed_vs_polygon);
        lat = std::max(lat, r.closed_vs_lattice);
    }
    c.add("m3_H_vs_F", res, 1e-6);
    c.results.push_back({"closed_form_vs_polygons", poly, 1e-8});
    c.results.push_back({"closed_form_vs_lattice", lat, 1e-9});
}

void mirror_extract(Context& c)
{
    const auto tw = [&](double a, double b) { return cplx(a) + b * c.mp.tau; };
    const holo::LineBundleLabel L{2, tw(0.12, 0.21), {}}, M{-1, tw(-0.04, 0.37), {}};
    const std::vector<triple::HomotopyChoice> choices{{tw(0.09, 0.14), 0}, {tw(-0.13, 0.41), 1}};
    const auto H = triple::holomorphic_provider(c.mp), F = triple::fukaya_provider(c.mp, c.eo);
    triple::PlantedHomotopy planted{0.01, random_matrix(c.rng, 1, 2)};
    const auto p = triple::extract_homotopy_f32(H, triple::perturbed(H, planted), L, M, c.mp, choices);
    const auto hf = triple::extract_homotopy_f32(H, F, L, M, c.mp, choices);
    c.data["extracted_map"] = matrix_json(hf.f);
    c.add("planted_recovery", (p.f - planted.delta * planted.P).cwiseAbs().maxCoeff(), 1e-7);
    c.add("planted_choice_independence", p.choice_spread, 1e-7);
    c.add("choice_independence", hf.choice_spread, 1e-7);
    c.add("hom1", hf.hom1_residual, 1e-7);
    c.add("zero_map", hf.f.cwiseAbs().maxCoeff(), 1e-7);
}

// ---- ainf ----

template <class K> void ainf_checks(Context& c, const ainf::AInfStructure<K>& s, const std::string& prefix)
{
    for (int n = 1; n <= c.opt.max_arity; ++n) {
        if (!s.m.has(n)) throw BadInput("structure lacks arity " + std::to_string(n));
        const auto r = ainf::check_axiom(s, n);
        c.add(prefix + "Ax_" + std::to_string(n), r.exact_zero ? 0.0 : std::max(r.max_residual, 1e-300), 1e-12);
    }
    const auto b = ainf::check_bar_square(s, c.opt.max_arity);
    c.add(prefix + "bar_square", b.exact_zero ? 0.0 : std::max(b.max_residual, 1e-300), 1e-12);
}

template <class K> void ainf_check_k(Context& c)
{
    const json in = read_input(c.opt);
    ainf_checks(c, ainf::structure_from_json<K>(in), "");
}

template <class K> void ainf_transport_k(Context& c)
{
    const json in = read_input(c.opt);
    const auto s = ainf::structure_from_json<K>(in);
    const auto f = ainf::homotopy_from_json<K>(in);
    const auto t = ainf::transport(s, f, c.opt.max_arity);
    json sj = ainf::to_json(t);
    c.data["structure"] = sj;
    ainf_checks(c, t, "");
}

using Command = std::function<void(Context&)>;

void add_common(CLI::App* a, Options& o)
{
    a->add_option("--tau", o.tau, "modular parameter a+bi");
    a->add_option("--tol", o.tol, "tolerance for every reported residual");
    a->add_option("--cutoff", o.cutoff, "relative tail bound for series");
    a->add_option("--area-cutoff", o.area_cutoff, "polygon area cutoff (0: derived from --cutoff)");
    a->add_option("--seed", o.seed, "seed for randomized suites");
    a->add_option("--rank", o.rank, "largest rank of unipotent factors");
    a->add_option("--samples", o.samples, "number of random samples");
    a->add_option("--input", o.input, "input JSON file");
    a->add_option("--output", o.output, "also write the report here");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"A-infinity structures on elliptic curves: kernels, products and checks"};
    app.require_subcommand(1);
    Options o;
    std::string command;
    Command cmd;

    const auto leaf = [&](CLI::App* group, const std::string& name, const std::string& help, Command fn) {
        CLI::App* a = group->add_subcommand(name, help);
        add_common(a, o);
        a->callback([&, name, group, fn] {
            command = group->get_name() + " " + name;
            cmd = fn;
        });
        return a;
    };

    CLI::App* theta_g = app.add_subcommand("theta", "theta functions and the Kronecker function");
    theta_g->require_subcommand(1);
    CLI::App* te = leaf(theta_g, "eval", "evaluate theta or theta_k and check quasi-periodicity", theta_eval);
    te->add_option("--z", o.z, "argument a+bi");
    te->add_option("--n", o.n, "degree of theta_k (0: plain theta)");
    te->add_option("--k", o.k, "index of theta_k");
    te->add_option("--w", o.w, "translation of theta_k");
    leaf(theta_g, "kronecker-check", "lattice sum vs theta quotient for F(t,u)", theta_kronecker);

    CLI::App* fuk_g = app.add_subcommand("fukaya", "Fukaya products on the torus");
    fuk_g->require_subcommand(1);
    leaf(fuk_g, "mk", "m_k of morphisms given as JSON", fukaya_mk);

    CLI::App* holo_g = app.add_subcommand("holo", "holomorphic side");
    holo_g->require_subcommand(1);
    CLI::App* hm = leaf(holo_g, "m3h", "closed-form triple product and its checks", holo_m3h);
    hm->add_option("--t", o.t, "translation t (a+bi)");
    hm->add_option("--u", o.u, "translation u (a+bi)");
    leaf(holo_g, "mainlem", "exactness of the alpha/beta sequence", holo_mainlem)
        ->add_option("--degree", o.degree, "degree of L (3 or 4)");
    CLI::App* hs = leaf(holo_g, "serre", "Serre pairing of theta_k against the dual classes", holo_serre);
    hs->add_option("--n", o.n, "degree");
    hs->add_option("--w", o.w, "translation");

    CLI::App* mir_g = app.add_subcommand("mirror", "comparison of the two sides");
    mir_g->require_subcommand(1);
    leaf(mir_g, "compare-m2", "m2 on random transversal triples", mirror_m2);
    leaf(mir_g, "compare-m3", "m3 on the basic configuration", mirror_m3);
    leaf(mir_g, "extract-homotopy", "homotopy component between two triple products", mirror_extract);

    CLI::App* ainf_g = app.add_subcommand("ainf", "finite A-infinity structures");
    ainf_g->require_subcommand(1);
    CLI::App* ac = leaf(ainf_g, "check", "axiom residuals per arity", [&](Context& c) {
        o.exact ? ainf_check_k<QC>(c) : ainf_check_k<cplx>(c);
    });
    CLI::App* at = leaf(ainf_g, "transport", "transport a structure along a homotopy", [&](Context& c) {
        o.exact ? ainf_transport_k<QC>(c) : ainf_transport_k<cplx>(c);
    });
    for (CLI::App* a : {ac, at}) {
        a->add_option("--max-arity", o.max_arity, "largest arity");
        a->add_flag("--exact", o.exact, "exact rational arithmetic");
    }

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    const auto start = std::chrono::steady_clock::now();
    Context c;
    c.opt = o;
    json report;
    try {
        c.mp = ModularParam(parse_complex(o.tau));
        if (!(o.cutoff > 0 && o.cutoff < 1)) throw BadInput("--cutoff must lie in (0, 1)");
        if (o.tol == 0 || std::isnan(o.tol)) throw BadInput("--tol must be positive");
        if (o.area_cutoff < 0) throw BadInput("--area-cutoff must be non-negative");
        c.mp.tol = o.cutoff;
        c.eo.area_cutoff = o.area_cutoff;
        c.rng.seed(o.seed);
        cmd(c);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    bool pass = true;
    json results = json::array();
    for (const auto& r : c.results) {
        pass = pass && r.pass();
        results.push_back({{"name", r.name}, {"residual", r.residual}, {"tol", r.tol}, {"pass", r.pass()}});
    }
    report["command"] = command;
    report["config"] = {{"tau", cjson(c.mp.tau)}, {"tol", o.tol > 0 ? json(o.tol) : json(nullptr)}, {"cutoff", o.cutoff}, {"area_cutoff", o.area_cutoff},
                        {"seed", o.seed}, {"rank", o.rank}, {"samples", o.samples > 0 ? json(o.samples) : json(nullptr)}, {"input", o.input}};
    report["results"] = results;
    if (!c.data.empty()) report["data"] = c.data;
    report["pass"] = pass;
    report["wall_time_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    const std::string text = report.dump(2) + "\n";
    out << text;
    if (!o.output.empty()) {
        std::ofstream f(o.output);
        if (!f) {
            err << "cannot write " << o.output << "\n";
            return 2;
        }
        f << text;
    }
    return pass ? 0 : 1;
}

} // namespace ell::cli
