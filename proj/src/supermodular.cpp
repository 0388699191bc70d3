#include "feynpoly/supermodular.hpp"
#include "feynpoly/seed.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace feynpoly {

namespace {

int popcount(Subset s) { return __builtin_popcount(s); }

} // namespace

SupermodularFunction::SupermodularFunction(std::vector<std::string> labels,
                                           std::vector<std::int64_t> table)
    : labels_(std::move(labels)), table_(std::move(table)) {
    std::size_t n = labels_.size();
    if (n > 16) throw std::domain_error("ground set larger than 16 elements");
    if (table_.size() != (std::size_t(1) << n)) throw std::invalid_argument("set function table size mismatch");
    if (table_[0] != 0) throw std::invalid_argument("set function must vanish on the empty set");

    if (n <= 12) {
        Subset full = full_set();
        for (Subset i = 0; i <= full; ++i)
            for (Subset j = i + 1; j <= full; ++j)
                if (table_[i] + table_[j] > table_[i & j] + table_[i | j])
                    throw std::invalid_argument("set function is not supermodular");
    } else {
        std::mt19937 rng{static_cast<std::uint_fast32_t>(sampling_seed())};
        Subset full = full_set();
        for (int k = 0; k < 10000; ++k) {
            Subset i = rng() & full, j = rng() & full;
            if (table_[i] + table_[j] > table_[i & j] + table_[i | j])
                throw std::invalid_argument("set function is not supermodular (sampled)");
        }
    }
}

SupermodularFunction SupermodularFunction::restrict_to(Subset I) const {
    if ((I | full_set()) != full_set()) throw std::invalid_argument("restriction outside ground set");
    std::vector<std::string> labels;
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (I & (1u << i)) { labels.push_back(labels_[i]); pos.push_back(i); }
    std::vector<std::int64_t> t(std::size_t(1) << labels.size());
    for (Subset J = 0; J < t.size(); ++J) {
        Subset lifted = 0;
        for (std::size_t b = 0; b < pos.size(); ++b)
            if (J & (1u << b)) lifted |= 1u << pos[b];
        t[J] = table_[lifted];
    }
    return SupermodularFunction(std::move(labels), std::move(t));
}

SupermodularFunction SupermodularFunction::contract_by(Subset I) const {
    if ((I | full_set()) != full_set()) throw std::invalid_argument("contraction outside ground set");
    Subset rest = full_set() & ~I;
    std::vector<std::string> labels;
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (rest & (1u << i)) { labels.push_back(labels_[i]); pos.push_back(i); }
    std::vector<std::int64_t> t(std::size_t(1) << labels.size());
    for (Subset J = 0; J < t.size(); ++J) {
        Subset lifted = I;
        for (std::size_t b = 0; b < pos.size(); ++b)
            if (J & (1u << b)) lifted |= 1u << pos[b];
        t[J] = table_[lifted] - table_[I];
    }
    return SupermodularFunction(std::move(labels), std::move(t));
}

// z splits along (S, E\S) iff z(S)+z(E\S)=z(E); for supermodular z this is
// equivalent to full additivity of the bipartition.
bool SupermodularFunction::irreducible() const {
    Subset full = full_set();
    if (popcount(full) <= 1) return true;
    for (Subset S = 1; S < full; ++S)
        if (table_[S] + table_[full & ~S] == table_[full]) return false;
    return true;
}

bool SupermodularFunction::restriction_irreducible(Subset I) const {
    if (popcount(I) <= 1) return I != 0;
    for (Subset S = (I - 1) & I; S != 0; S = (S - 1) & I)
        if (S != I && table_[S] + table_[I & ~S] == table_[I]) return false;
    return true;
}

bool SupermodularFunction::contraction_irreducible(Subset I) const {
    Subset rest = full_set() & ~I;
    if (popcount(rest) <= 1) return rest != 0;
    std::int64_t zr = table_[full_set()] - table_[I];
    for (Subset S = (rest - 1) & rest; S != 0; S = (S - 1) & rest)
        if (S != rest && (table_[S | I] - table_[I]) + (table_[(rest & ~S) | I] - table_[I]) == zr)
            return false;
    return true;
}

std::vector<Subset> SupermodularFunction::irreducible_decomposition() const {
    Subset full = full_set();
    std::vector<Subset> blocks = {full};
    for (Subset S = 1; S < full; ++S) {
        if (table_[S] + table_[full & ~S] != table_[full]) continue;
        std::vector<Subset> refined;
        for (Subset b : blocks) {
            Subset in = b & S, out = b & ~S;
            if (in) refined.push_back(in);
            if (out) refined.push_back(out);
        }
        blocks = std::move(refined);
    }
    std::sort(blocks.begin(), blocks.end());
    return blocks;
}

std::vector<Subset> SupermodularFunction::facet_subsets() const {
    if (!irreducible()) throw std::domain_error("facet subsets require an irreducible set function");
    std::vector<Subset> out;
    Subset full = full_set();
    for (Subset I = 1; I < full; ++I)
        if (restriction_irreducible(I) && contraction_irreducible(I)) out.push_back(I);
    return out;
}

std::vector<Subset> SupermodularFunction::building_set() const {
    std::vector<Subset> out;
    Subset full = full_set();
    for (Subset I = 1; I <= full; ++I)
        if (restriction_irreducible(I)) out.push_back(I);
    return out;
}

LatticePolytope SupermodularFunction::base_polytope() const {
    std::size_t n = labels_.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::set<Vec> verts;
    do {
        Vec m(n, 0);
        Subset I = 0;
        for (std::size_t k = 0; k < n; ++k) {
            Subset next = I | (1u << order[k]);
            m[order[k]] = table_[next] - table_[I];
            I = next;
        }
        verts.insert(std::move(m));
    } while (std::next_permutation(order.begin(), order.end()));
    return LatticePolytope::hull(std::vector<Vec>(verts.begin(), verts.end()));
}

// ---------------------------------------------------------------------------
// Building sets and nested sets

bool BuildingSet::contains(Subset I) const {
    return std::binary_search(members.begin(), members.end(), I);
}

bool BuildingSet::is_building_set() const {
    Subset full = (Subset(1) << ground_size) - 1;
    for (std::size_t i = 0; i < ground_size; ++i)
        if (!contains(Subset(1) << i)) return false;
    for (Subset I : members)
        if (I == 0 || I == full) return false;
    for (Subset a : members)
        for (Subset b : members)
            if ((a & b) && (a | b) != full && !contains(a | b)) return false;
    return true;
}

BuildingSet make_building_set(std::size_t n, std::vector<Subset> members) {
    Subset full = (Subset(1) << n) - 1;
    for (std::size_t i = 0; i < n; ++i) members.push_back(Subset(1) << i);
    members.erase(std::remove_if(members.begin(), members.end(),
                                 [&](Subset s) { return s == 0 || s == full; }),
                  members.end());
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    BuildingSet g{n, std::move(members)};
    if (!g.is_building_set()) throw std::invalid_argument("not a building set");
    return g;
}

bool is_nested(const BuildingSet& g, const std::vector<Subset>& members) {
    Subset full = (Subset(1) << g.ground_size) - 1;
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            Subset a = members[i], b = members[j], c = a & b;
            if (c != 0 && c != a && c != b) return false;
        }
    // unions of >= 2 pairwise disjoint members must escape G and E
    std::size_t k = members.size();
    if (k >= 2 && k <= 20) {
        for (Subset pick = 1; pick < (Subset(1) << k); ++pick) {
            if (popcount(pick) < 2) continue;
            Subset u = 0;
            bool disjoint = true;
            for (std::size_t i = 0; i < k && disjoint; ++i)
                if (pick & (1u << i)) {
                    if (u & members[i]) disjoint = false;
                    u |= members[i];
                }
            if (disjoint && (u == full || g.contains(u))) return false;
        }
    }
    return true;
}

std::vector<std::vector<Subset>> maximal_nested_sets(const BuildingSet& g) {
    std::size_t n = g.ground_size;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::set<std::vector<Subset>> seen;
    do {
        Subset J = 0;
        std::set<Subset> nested;
        for (std::size_t k = 0; k + 1 < n; ++k) { // proper initial segments only
            J |= Subset(1) << order[k];
            // maximal members of G below J
            for (Subset m : g.members) {
                if ((m & ~J) != 0) continue;
                bool maximal = true;
                for (Subset o : g.members)
                    if (o != m && (o & ~J) == 0 && (m & o) == m) { maximal = false; break; }
                if (maximal) nested.insert(m);
            }
        }
        seen.insert(std::vector<Subset>(nested.begin(), nested.end()));
    } while (std::next_permutation(order.begin(), order.end()));
    return std::vector<std::vector<Subset>>(seen.begin(), seen.end());
}

Fan nested_set_fan(const BuildingSet& g) {
    std::size_t n = g.ground_size;
    if (n == 0) throw std::invalid_argument("empty ground set");
    std::vector<Cone> cones;
    for (const auto& nested : maximal_nested_sets(g)) {
        if (!is_nested(g, nested)) throw std::logic_error("generated set is not nested");
        std::vector<Vec> gens;
        for (Subset I : nested) gens.push_back(project_ray(indicator(I, n)));
        cones.push_back(Cone::make(std::move(gens), n - 1));
    }
    return Fan(std::move(cones), n - 1, "nested-set fan", true);
}

std::vector<Subset> hepp_flag(const std::vector<std::size_t>& order) {
    std::vector<Subset> flag;
    Subset I = 0;
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        I |= Subset(1) << order[k];
        flag.push_back(I);
    }
    return flag;
}

Fan hepp_fan(std::size_t n) {
    if (n == 0) throw std::invalid_argument("empty edge set");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<Cone> cones;
    do {
        std::vector<Vec> gens;
        for (Subset I : hepp_flag(order)) gens.push_back(project_ray(indicator(I, n)));
        cones.push_back(Cone::make(std::move(gens), n - 1));
    } while (std::next_permutation(order.begin(), order.end()));
    return Fan(std::move(cones), n - 1, "Hepp fan", true);
}

} // namespace feynpoly
