#include "feynpoly/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>

namespace feynpoly {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

} // namespace

cplx KinematicAssignment::value(const KinSymbol& s) const {
    switch (s.kind) {
        case KinSymbol::Kind::One: return cplx(1.0);
        case KinSymbol::Kind::Sq: {
            auto it = sq.find(s.key);
            if (it == sq.end()) throw domain_error_code("missing kinematic value sq:" + s.key);
            return it->second;
        }
        case KinSymbol::Kind::M2: {
            auto it = m2.find(s.key);
            if (it == m2.end()) throw domain_error_code("missing kinematic value m2:" + s.key);
            return it->second;
        }
    }
    return cplx(0.0);
}

cplx KinematicAssignment::eval(const SymCoeff& c) const {
    cplx v(0.0);
    for (const auto& [s, r] : c) v += r.to_double() * value(s);
    return v;
}

bool KinematicAssignment::generic_euclidean() const {
    for (const auto& [k, v] : sq)
        if (!(v.real() > 0.0)) return false;
    for (const auto& [ks, vs] : sq)
        for (const auto& [km, vm] : m2)
            if (!(vs.real() + vm.real() > 0.0)) return false;
    if (sq.empty())
        for (const auto& [km, vm] : m2)
            if (!(vm.real() > 0.0)) return false;
    return true;
}

FeynmanGraph::FeynmanGraph(std::vector<std::string> vertices, std::vector<GraphEdge> edges,
                           std::map<std::string, std::set<std::string>> external)
    : vertex_names_(std::move(vertices)), edges_(std::move(edges)) {
    if (edges_.size() > max_edge_guard())
        throw domain_error_code("graph exceeds the edge guard (set FEYNPOLY_MAX_EDGES to raise)");
    external_.resize(vertex_names_.size());
    std::set<std::string> ids;
    for (const auto& e : edges_) {
        if (e.v1 >= vertex_names_.size() || e.v2 >= vertex_names_.size())
            throw std::invalid_argument("edge endpoint out of range");
        if (!ids.insert(e.id).second) throw std::invalid_argument("duplicate edge id " + e.id);
    }
    for (auto& [vname, labels] : external) {
        auto it = std::find(vertex_names_.begin(), vertex_names_.end(), vname);
        if (it == vertex_names_.end())
            throw std::invalid_argument("external momentum on unknown vertex " + vname);
        external_[std::size_t(it - vertex_names_.begin())].insert(labels.begin(), labels.end());
    }
}

std::set<std::string> FeynmanGraph::all_momentum_labels() const {
    std::set<std::string> all;
    for (const auto& s : external_) all.insert(s.begin(), s.end());
    return all;
}

bool FeynmanGraph::has_external() const {
    return std::any_of(external_.begin(), external_.end(), [](const auto& s) { return !s.empty(); });
}

Subset FeynmanGraph::massive_edges() const {
    Subset m = 0;
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].massive) m |= Subset(1) << i;
    return m;
}

void FeynmanGraph::check_subset(Subset s) const {
    if (s & ~full_edge_set()) throw std::invalid_argument("edge subset out of range");
}

std::size_t FeynmanGraph::components(Subset edge_subset, bool all_vertices, std::vector<int>* comp_out) const {
    UnionFind uf(vertex_names_.size());
    std::vector<bool> used(vertex_names_.size(), all_vertices);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (edge_subset & (Subset(1) << i)) {
            used[edges_[i].v1] = used[edges_[i].v2] = true;
            uf.unite(edges_[i].v1, edges_[i].v2);
        }
    }
    std::map<std::size_t, int> roots;
    std::size_t count = 0;
    if (comp_out) comp_out->assign(vertex_names_.size(), -1);
    for (std::size_t v = 0; v < vertex_names_.size(); ++v) {
        if (!used[v]) continue;
        std::size_t r = uf.find(v);
        auto [it, fresh] = roots.emplace(r, int(count));
        if (fresh) ++count;
        if (comp_out) (*comp_out)[v] = it->second;
    }
    return count;
}

bool FeynmanGraph::connected() const {
    if (vertex_names_.empty()) return false;
    return components(full_edge_set(), true) == 1;
}

std::size_t FeynmanGraph::h1(Subset edge_subset) const {
    check_subset(edge_subset);
    std::size_t nv = 0;
    std::vector<bool> used(vertex_names_.size(), false);
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (edge_subset & (Subset(1) << i)) {
            used[edges_[i].v1] = used[edges_[i].v2] = true;
        }
    for (bool u : used) nv += u;
    std::size_t ne = std::size_t(__builtin_popcount(edge_subset));
    std::size_t c = components(edge_subset, false);
    return ne + c - nv;
}

bool FeynmanGraph::momentum_spanning(Subset edge_subset) const {
    check_subset(edge_subset);
    if (!has_external()) return false;
    std::vector<int> comp;
    components(edge_subset, false, &comp);
    int target = -1;
    for (std::size_t v = 0; v < vertex_names_.size(); ++v) {
        if (external_[v].empty()) continue;
        if (comp[v] < 0) return false;
        if (target < 0) target = comp[v];
        else if (comp[v] != target) return false;
    }
    return true;
}

bool FeynmanGraph::mass_momentum_spanning(Subset edge_subset) const {
    Subset m = massive_edges();
    if ((m & edge_subset) != m) return false;
    if (has_external()) return momentum_spanning(edge_subset);
    return m != 0; // no momenta: only the mass content can set a scale
}

std::optional<std::string> FeynmanGraph::sq_key(const std::set<std::string>& side) const {
    std::set<std::string> all = all_momentum_labels();
    if (side.empty() || side.size() == all.size()) return std::nullopt; // momentum conservation
    std::set<std::string> comp;
    std::set_difference(all.begin(), all.end(), side.begin(), side.end(),
                        std::inserter(comp, comp.begin()));
    auto join = [](const std::set<std::string>& s) {
        std::string out;
        for (const auto& x : s) {
            if (!out.empty()) out += ',';
            out += x;
        }
        return out;
    };
    std::string a = join(side), b = join(comp);
    if (side.size() != comp.size()) return side.size() < comp.size() ? a : b;
    return a < b ? a : b;
}

std::vector<Subset> FeynmanGraph::spanning_trees() const {
    if (!connected())
        throw domain_error_code("spanning trees of a disconnected graph: handle components separately");
    std::size_t want = vertex_names_.size() - 1;
    std::vector<Subset> trees;
    Subset full = full_edge_set();
    for (Subset s = 0; s <= full; ++s) {
        if (std::size_t(__builtin_popcount(s)) != want) continue;
        UnionFind uf(vertex_names_.size());
        bool acyclic = true;
        for (std::size_t i = 0; i < edges_.size() && acyclic; ++i)
            if (s & (Subset(1) << i)) acyclic = uf.unite(edges_[i].v1, edges_[i].v2);
        if (acyclic) trees.push_back(s);
        if (full == 0) break;
    }
    return trees;
}

std::vector<FeynmanGraph::TwoTree> FeynmanGraph::spanning_2trees() const {
    std::vector<TwoTree> out;
    if (vertex_names_.size() < 2) return out;
    std::size_t want = vertex_names_.size() - 2;
    Subset full = full_edge_set();
    for (Subset s = 0; s <= full; ++s) {
        if (std::size_t(__builtin_popcount(s)) != want) continue;
        UnionFind uf(vertex_names_.size());
        bool acyclic = true;
        for (std::size_t i = 0; i < edges_.size() && acyclic; ++i)
            if (s & (Subset(1) << i)) acyclic = uf.unite(edges_[i].v1, edges_[i].v2);
        if (!acyclic) continue;
        std::vector<int> comp;
        if (components(s, true, &comp) != 2) continue;
        TwoTree t;
        t.edges = s;
        for (std::size_t v = 0; v < vertex_names_.size(); ++v)
            if (comp[v] == 0) t.side1.push_back(v);
        out.push_back(std::move(t));
        if (full == 0) break;
    }
    return out;
}

std::vector<Subset> FeynmanGraph::blocks() const {
    // DFS biconnected components on a multigraph; self-loops become their own block
    std::vector<Subset> out;
    std::size_t n = vertex_names_.size();
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n); // (neighbor, edge)
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (edges_[i].v1 == edges_[i].v2) {
            out.push_back(Subset(1) << i);
            continue;
        }
        adj[edges_[i].v1].push_back({edges_[i].v2, i});
        adj[edges_[i].v2].push_back({edges_[i].v1, i});
    }
    std::vector<int> depth(n, -1), low(n, 0);
    std::vector<std::size_t> stack;
    std::function<void(std::size_t, std::size_t, int)> dfs = [&](std::size_t v, std::size_t pedge, int d) {
        depth[v] = low[v] = d;
        for (auto [w, e] : adj[v]) {
            if (e == pedge) continue;
            if (depth[w] < 0) {
                stack.push_back(e);
                dfs(w, e, d + 1);
                low[v] = std::min(low[v], low[w]);
                if (low[w] >= d) { // v is a cut vertex (or root): pop the block
                    Subset blk = 0;
                    std::size_t x;
                    do {
                        x = stack.back();
                        stack.pop_back();
                        blk |= Subset(1) << x;
                    } while (x != e);
                    out.push_back(blk);
                }
            } else if (depth[w] < depth[v]) {
                stack.push_back(e);
                low[v] = std::min(low[v], depth[w]);
            }
        }
    };
    for (std::size_t v = 0; v < n; ++v)
        if (depth[v] < 0 && !adj[v].empty()) dfs(v, SIZE_MAX, 0);
    std::sort(out.begin(), out.end());
    return out;
}

bool FeynmanGraph::s_irreducible() const {
    std::vector<Subset> blks = blocks();
    for (Subset b : blks) {
        if (b & massive_edges()) continue;
        // momentum routes through the block iff two of its vertices see
        // external momenta through the rest of the graph
        std::vector<int> comp;
        components(full_edge_set() & ~b, true, &comp);
        std::set<int> carrying;
        std::vector<bool> in_block(vertex_names_.size(), false);
        for (std::size_t i = 0; i < edges_.size(); ++i)
            if (b & (Subset(1) << i)) in_block[edges_[i].v1] = in_block[edges_[i].v2] = true;
        std::vector<bool> comp_has_ext(vertex_names_.size() + 1, false);
        for (std::size_t v = 0; v < vertex_names_.size(); ++v)
            if (!external_[v].empty() && comp[v] >= 0) comp_has_ext[std::size_t(comp[v])] = true;
        for (std::size_t v = 0; v < vertex_names_.size(); ++v)
            if (in_block[v] && comp[v] >= 0 && comp_has_ext[std::size_t(comp[v])])
                carrying.insert(comp[v]);
        if (carrying.size() < 2) return false;
    }
    return true;
}

std::int64_t FeynmanGraph::s_value(Subset edge_subset) const {
    return 2 * std::int64_t(h1(edge_subset)) + (mass_momentum_spanning(edge_subset) ? 1 : 0);
}

SupermodularFunction FeynmanGraph::s_function() const {
    if (!connected()) throw domain_error_code("s function requires a connected graph");
    std::size_t n = edges_.size();
    std::vector<std::int64_t> table(std::size_t(1) << n);
    for (Subset s = 0; s < table.size(); ++s) table[s] = s_value(s);
    std::vector<std::string> labels;
    for (const auto& e : edges_) labels.push_back(e.id);
    return SupermodularFunction(std::move(labels), std::move(table));
}

FeynmanGraph::SubgraphClass FeynmanGraph::classify_subgraph(Subset edge_subset) const {
    check_subset(edge_subset);
    SubgraphClass c;
    c.h1 = h1(edge_subset);
    c.momentum_spanning = momentum_spanning(edge_subset);
    c.mass_momentum_spanning = mass_momentum_spanning(edge_subset);
    c.motic = edge_subset != 0;
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (edge_subset & (Subset(1) << i))
            if (s_value(edge_subset & ~(Subset(1) << i)) >= s_value(edge_subset)) c.motic = false;
    c.s_irreducible = subgraph_with_kinematics(edge_subset).s_irreducible();
    return c;
}

FeynmanGraph FeynmanGraph::quotient(Subset edge_subset) const {
    check_subset(edge_subset);
    UnionFind uf(vertex_names_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (edge_subset & (Subset(1) << i)) uf.unite(edges_[i].v1, edges_[i].v2);
    std::map<std::size_t, std::size_t> remap;
    std::vector<std::string> names;
    for (std::size_t v = 0; v < vertex_names_.size(); ++v) {
        std::size_t r = uf.find(v);
        if (!remap.count(r)) {
            remap[r] = names.size();
            names.push_back(vertex_names_[r]);
        }
    }
    bool mm = mass_momentum_spanning(edge_subset);
    std::vector<GraphEdge> qedges;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (edge_subset & (Subset(1) << i)) continue;
        GraphEdge e = edges_[i];
        e.v1 = remap[uf.find(e.v1)];
        e.v2 = remap[uf.find(e.v2)];
        if (mm) e.massive = false; // quotient of a mass-momentum spanning subgraph is scaleless
        qedges.push_back(std::move(e));
    }
    std::map<std::string, std::set<std::string>> ext;
    if (!mm) {
        for (std::size_t v = 0; v < vertex_names_.size(); ++v)
            if (!external_[v].empty())
                ext[names[remap[uf.find(v)]]].insert(external_[v].begin(), external_[v].end());
    }
    return FeynmanGraph(std::move(names), std::move(qedges), std::move(ext));
}

FeynmanGraph FeynmanGraph::subgraph_with_kinematics(Subset edge_subset) const {
    check_subset(edge_subset);
    bool mm = mass_momentum_spanning(edge_subset);
    std::vector<std::string> names;
    std::map<std::size_t, std::size_t> remap;
    std::vector<bool> used(vertex_names_.size(), false);
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (edge_subset & (Subset(1) << i)) used[edges_[i].v1] = used[edges_[i].v2] = true;
    for (std::size_t v = 0; v < vertex_names_.size(); ++v)
        if (used[v]) {
            remap[v] = names.size();
            names.push_back(vertex_names_[v]);
        }
    std::vector<GraphEdge> sedges;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (!(edge_subset & (Subset(1) << i))) continue;
        GraphEdge e = edges_[i];
        e.v1 = remap[e.v1];
        e.v2 = remap[e.v2];
        if (!mm) e.massive = false; // scaleless unless mass-momentum spanning
        sedges.push_back(std::move(e));
    }
    std::map<std::string, std::set<std::string>> ext;
    if (mm) {
        for (std::size_t v = 0; v < vertex_names_.size(); ++v)
            if (used[v] && !external_[v].empty())
                ext[vertex_names_[v]].insert(external_[v].begin(), external_[v].end());
    }
    return FeynmanGraph(std::move(names), std::move(sedges), std::move(ext));
}

LatticePolytope FeynmanGraph::feynman_polytope() const {
    return s_function().base_polytope();
}

std::size_t max_edge_guard() {
    if (const char* env = std::getenv("FEYNPOLY_MAX_EDGES")) {
        long v = std::atol(env);
        if (v > 0 && v <= 30) return std::size_t(v);
    }
    return 16;
}

} // namespace feynpoly
