#include "feynpoly/io.hpp"

#include <fstream>
#include <sstream>

namespace feynpoly {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

cplx parse_number(const json& v, const std::string& what) {
    if (v.is_number()) return cplx(v.get<double>(), 0.0);
    if (v.is_string()) return cplx(Rational::parse(v.get<std::string>()).to_double(), 0.0);
    if (v.is_object()) {
        double re = 0.0, im = 0.0;
        if (v.contains("re")) re = parse_number(v.at("re"), what).real();
        if (v.contains("im")) im = parse_number(v.at("im"), what).real();
        return cplx(re, im);
    }
    throw parse_error("cannot read number for " + what);
}

Rational parse_rational(const json& v, const std::string& what) {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    throw parse_error(what + " must be an integer or a rational string like \"3/2\"");
}

RatC parse_ratc(const json& v, const std::string& what) {
    if (v.is_object() && (v.contains("re") || v.contains("im"))) {
        RatC r;
        if (v.contains("re")) r.re = parse_rational(v.at("re"), what + ".re");
        if (v.contains("im")) r.im = parse_rational(v.at("im"), what + ".im");
        return r;
    }
    return RatC(parse_rational(v, what));
}

AffineEps parse_affine(const json& v, const std::string& what) {
    if (v.is_object() && (v.contains("const") || v.contains("eps"))) {
        AffineEps a;
        if (v.contains("const")) a.a = parse_ratc(v.at("const"), what + ".const");
        if (v.contains("eps")) a.b = parse_ratc(v.at("eps"), what + ".eps");
        return a;
    }
    return AffineEps(parse_ratc(v, what));
}

} // namespace

GraphFile parse_graph(const json& j) {
    if (!j.is_object()) throw parse_error("graph file must be a JSON object");
    if (!j.contains("vertices") || !j.contains("edges"))
        throw parse_error("graph file needs 'vertices' and 'edges'");

    std::vector<std::string> vertices;
    for (const auto& v : j.at("vertices")) {
        if (!v.is_string()) throw parse_error("vertex names must be strings");
        vertices.push_back(v.get<std::string>());
    }
    auto vertex_index = [&](const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i] == name) return i;
        throw parse_error("unknown vertex '" + name + "'");
    };

    std::vector<GraphEdge> edges;
    for (const auto& e : j.at("edges")) {
        GraphEdge ge;
        if (!e.contains("id") || !e.contains("ends"))
            throw parse_error("every edge needs 'id' and 'ends'");
        ge.id = e.at("id").get<std::string>();
        const auto& ends = e.at("ends");
        if (!ends.is_array() || ends.size() != 2)
            throw parse_error("edge '" + ge.id + "': 'ends' must list two vertices");
        ge.v1 = vertex_index(ends[0].get<std::string>());
        ge.v2 = vertex_index(ends[1].get<std::string>());
        ge.massive = e.contains("mass") && !e.at("mass").is_null();
        if (e.contains("lambda")) ge.lambda = parse_rational(e.at("lambda"), "edge lambda");
        edges.push_back(std::move(ge));
    }

    std::map<std::string, std::set<std::string>> external;
    if (j.contains("external")) {
        for (const auto& [vname, labels] : j.at("external").items()) {
            vertex_index(vname);
            if (labels.is_string()) external[vname].insert(labels.get<std::string>());
            else if (labels.is_array())
                for (const auto& l : labels) external[vname].insert(l.get<std::string>());
            else throw parse_error("external momenta must be a label or list of labels");
        }
    }

    GraphFile gf{FeynmanGraph(std::move(vertices), std::move(edges), std::move(external)), {}};

    if (j.contains("kinematics")) {
        auto all_labels = gf.graph.all_momentum_labels();
        for (const auto& [key, value] : j.at("kinematics").items()) {
            if (key.rfind("sq:", 0) == 0) {
                std::set<std::string> subset;
                std::stringstream ss(key.substr(3));
                std::string item;
                while (std::getline(ss, item, ',')) {
                    if (!all_labels.count(item))
                        throw parse_error("kinematics key '" + key + "': unknown momentum label '" +
                                          item + "'");
                    subset.insert(item);
                }
                auto canon = gf.graph.sq_key(subset);
                if (!canon)
                    throw parse_error("kinematics key '" + key +
                                      "' vanishes by momentum conservation");
                gf.kinematics.sq[*canon] = parse_number(value, key);
            } else if (key.rfind("m2:", 0) == 0) {
                std::string id = key.substr(3);
                bool found = false;
                for (const auto& e : gf.graph.edges())
                    if (e.id == id) found = e.massive;
                if (!found) throw parse_error("kinematics key '" + key + "': no massive edge '" + id + "'");
                gf.kinematics.m2[id] = parse_number(value, key);
            } else {
                throw parse_error("kinematics keys must start with 'sq:' or 'm2:', got '" + key + "'");
            }
        }
    }
    return gf;
}

GraphFile load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw parse_error("JSON error in '" + path + "': " + e.what());
    }
    return parse_graph(j);
}

MellinProblem parse_mellin(const json& j) {
    if (!j.is_object() || !j.contains("torus_rank") || !j.contains("factors") || !j.contains("s"))
        throw parse_error("mellin file needs 'torus_rank', 'factors' and 's'");
    MellinProblem p;
    p.rank = j.at("torus_rank").get<std::size_t>();

    auto parse_poly = [&](const json& jp, const std::string& what) {
        NumericPoly poly;
        poly.nvars = p.rank;
        const json& terms = jp.is_object() && jp.contains("terms") ? jp.at("terms") : jp;
        if (!terms.is_array()) throw parse_error(what + ": expected a term array");
        for (const auto& t : terms) {
            if (!t.contains("powers")) throw parse_error(what + ": every term needs 'powers'");
            Vec e;
            for (const auto& x : t.at("powers")) e.push_back(x.get<std::int64_t>());
            if (e.size() != p.rank) throw parse_error(what + ": 'powers' length must equal torus_rank");
            cplx c = t.contains("coeff") ? parse_number(t.at("coeff"), what) : cplx(1.0);
            poly.add(e, c);
        }
        if (poly.zero()) throw parse_error(what + ": zero polynomial");
        return poly;
    };

    for (const auto& f : j.at("factors")) {
        if (!f.contains("exponent")) throw parse_error("every factor needs 'exponent'");
        p.factors.push_back(parse_poly(f, "factor"));
        p.exponents.push_back(parse_affine(f.at("exponent"), "factor exponent"));
    }
    if (j.contains("numerator")) p.numerator = parse_poly(j.at("numerator"), "numerator");
    for (const auto& sv : j.at("s")) p.s.push_back(parse_affine(sv, "s"));
    try {
        p.validate();
    } catch (const std::exception& e) {
        throw parse_error(std::string("invalid mellin problem: ") + e.what());
    }
    return p;
}

MellinProblem load_mellin(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw parse_error("JSON error in '" + path + "': " + e.what());
    }
    return parse_mellin(j);
}

std::string edge_subset_names(const FeynmanGraph& g, Subset I) {
    std::string out;
    for (std::size_t e = 0; e < g.num_edges(); ++e)
        if (I & (Subset(1) << e)) {
            if (!out.empty()) out += ',';
            out += g.edges()[e].id;
        }
    return out;
}

ordered_json polytope_report(const FeynmanGraph& g) {
    ordered_json r;
    auto P = g.feynman_polytope();
    r["edges"] = json::array();
    for (const auto& e : g.edges()) r["edges"].push_back(e.id);
    r["vertices"] = json::array();
    for (const auto& v : P.vertices()) r["vertices"].push_back(v);
    r["dimension"] = P.dim();
    r["s_irreducible"] = g.s_irreducible();
    auto dom = feynman_convergence_domain(g);
    r["facets"] = json::array();
    if (dom.s_irreducible) {
        auto z = g.s_function();
        for (Subset I : z.facet_subsets()) {
            ordered_json f;
            f["subgraph"] = edge_subset_names(g, I);
            f["bound"] = z(I);
            f["mass_momentum_spanning"] = g.mass_momentum_spanning(I);
            r["facets"].push_back(std::move(f));
        }
        ordered_json hollow = json::array(), spanning = json::array();
        for (Subset I : dom.hollow) hollow.push_back(edge_subset_names(g, I));
        for (Subset I : dom.mass_spanning) spanning.push_back(edge_subset_names(g, I));
        r["hollow_facets"] = std::move(hollow);
        r["mass_spanning_facets"] = std::move(spanning);
    }
    return r;
}

ordered_json sectors_report(const FeynmanGraph& g, const KinematicAssignment& kin,
                            FanStrategy strategy, bool* fell_back) {
    if (fell_back) *fell_back = false;
    Fan fan = hepp_fan(g.num_edges());
    if (strategy != FanStrategy::Hepp) {
        try {
            fan = sector_fan(g, strategy);
        } catch (const domain_error_code&) {
            if (fell_back) *fell_back = true;
        }
    }
    RegulatorPoint reg = RegulatorPoint::unit(g, Rational(4));
    MellinProblem p = feynman_mellin_problem(g, kin, reg);
    auto sectors = sector_decompose(p, fan);

    std::vector<std::string> var_names;
    for (std::size_t e = 0; e + 1 < g.num_edges(); ++e) var_names.push_back("x" + std::to_string(e));

    ordered_json r;
    r["strategy"] = strategy_name(strategy);
    r["sector_count"] = sectors.size();
    r["sectors"] = json::array();
    for (const auto& sec : sectors) {
        ordered_json s;
        s["cone"] = json::array();
        for (const auto& ray : sec.rays) s["cone"].push_back(ray);
        // chart substitution alpha_i = prod_j x_j^<e_i, u_j> (last edge chart-fixed to 1)
        ordered_json subst = json::array();
        for (std::size_t e = 0; e + 1 < g.num_edges(); ++e) {
            std::ostringstream os;
            os << g.edges()[e].id << " = ";
            bool any = false;
            for (std::size_t jx = 0; jx < sec.rays.size(); ++jx) {
                std::int64_t pw = sec.rays[jx][e];
                if (pw == 0) continue;
                if (any) os << "*";
                any = true;
                os << "x" << jx;
                if (pw != 1) os << "^" << pw;
            }
            if (!any) os << "1";
            subst.push_back(os.str());
        }
        s["substitution"] = std::move(subst);
        ordered_json exps = json::array();
        for (const auto& a : sec.leading) {
            ordered_json e;
            e["const"] = (a.a.re - Rational(1)).str(); // exponent of x is A - 1
            e["eps"] = a.b.re.str();
            exps.push_back(std::move(e));
        }
        s["leading_exponents"] = std::move(exps);
        auto poly_str = [&](const NumericPoly& f) {
            std::ostringstream os;
            bool first = true;
            for (const auto& [m, c] : f.terms) {
                if (!first) os << " + ";
                first = false;
                os << c.real();
                for (std::size_t j = 0; j < m.size(); ++j)
                    if (m[j] != 0) os << "*x" << j << (m[j] != 1 ? "^" + std::to_string(m[j]) : "");
            }
            return os.str();
        };
        s["psi"] = poly_str(sec.local_factor[0]);
        s["Phi"] = poly_str(sec.local_factor[1]);
        r["sectors"].push_back(std::move(s));
    }
    return r;
}

ordered_json series_report(const EpsSeries& s, std::size_t sectors, double wall_ms) {
    ordered_json r;
    r["pole_order"] = s.pole_order();
    r["coefficients"] = json::array();
    for (std::size_t i = 0; i < s.coeff.size(); ++i) {
        ordered_json c;
        c["power"] = s.lead + int(i);
        c["re"] = s.coeff[i].real();
        c["im"] = s.coeff[i].imag();
        c["err"] = s.err[i];
        r["coefficients"].push_back(std::move(c));
    }
    r["sectors"] = sectors;
    r["wall_ms"] = wall_ms;
    return r;
}

ordered_json domain_report(const FeynmanGraph& g, const ConvergenceDomain& dom) {
    ordered_json r;
    r["s_irreducible"] = dom.s_irreducible;
    r["nonempty"] = dom.s_irreducible;
    ordered_json ineqs = json::array();
    for (Subset I : dom.hollow) {
        ordered_json c;
        c["type"] = "omega_sub_positive";
        c["subgraph"] = edge_subset_names(g, I);
        ineqs.push_back(std::move(c));
    }
    for (Subset I : dom.mass_spanning) {
        ordered_json c;
        c["type"] = "omega_quotient_negative";
        c["subgraph"] = edge_subset_names(g, I);
        ineqs.push_back(std::move(c));
    }
    r["constraints"] = std::move(ineqs);
    return r;
}

} // namespace feynpoly
