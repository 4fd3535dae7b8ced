#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gheight/errors.hpp"
#include "gheight/linalg/matrix.hpp"

namespace gheight {

struct Component {
    std::string label;
    std::optional<int> pg;   // geometric genus, curve case only
};

// Components and a multiset of intersection strata (index subsets). A subset
// listed twice stands for two connected components of that intersection, e.g.
// two nodes joining the same pair of curves.
class DegenerationConfig {
public:
    int fiber_dimension = 1;

    int add_component(const std::string& label, std::optional<int> pg = std::nullopt) {
        if (label.empty()) throw InputError("degeneration config: empty component label");
        if (index_.count(label)) throw InputError("degeneration config: duplicate component label '" + label + "'");
        if (pg && *pg < 0) throw InputError("degeneration config: negative pg for '" + label + "'");
        index_[label] = static_cast<int>(components_.size());
        components_.push_back({label, pg});
        return static_cast<int>(components_.size()) - 1;
    }

    void add_stratum(const std::vector<std::string>& labels) {
        std::vector<int> s;
        for (const auto& l : labels) s.push_back(index_of(l));
        add_stratum_indices(std::move(s));
    }
    void add_stratum_indices(std::vector<int> s) {
        std::sort(s.begin(), s.end());
        if (s.empty()) throw InputError("degeneration config: empty intersection");
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw InputError("degeneration config: repeated component in an intersection (self-crossings are not simple normal crossings)");
        for (int i : s)
            if (i < 0 || i >= static_cast<int>(components_.size())) throw InputError("degeneration config: component index out of range");
        if (s.size() > 20) throw UnsupportedError("degeneration config: intersection of more than 20 components");
        if (s.size() == 1) return;   // singletons are implicit
        strata_.push_back(std::move(s));
    }

    int index_of(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw InputError("degeneration config: unknown component '" + label + "'");
        return it->second;
    }

    const std::vector<Component>& components() const { return components_; }
    const std::vector<std::vector<int>>& strata() const { return strata_; }

private:
    std::vector<Component> components_;
    std::vector<std::vector<int>> strata_;
    std::map<std::string, int> index_;
};

class SimplicialComplex {
public:
    SimplicialComplex() = default;
    SimplicialComplex(std::vector<std::string> labels, std::vector<std::vector<int>> simplices)
        : labels_(std::move(labels)) {
        int n = static_cast<int>(labels_.size());
        std::set<std::vector<int>> all;
        for (auto s : simplices) {
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            if (s.empty()) continue;
            for (int v : s)
                if (v < 0 || v >= n) throw InputError("simplicial complex: vertex out of range");
            all.insert(std::move(s));
        }
        for (int v = 0; v < n; ++v) all.insert({v});
        // keep the maximal ones
        std::vector<std::vector<int>> sorted(all.begin(), all.end());
        std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
        for (const auto& s : sorted) {
            bool contained = false;
            for (const auto& f : facets_)
                if (std::includes(f.begin(), f.end(), s.begin(), s.end())) {
                    contained = true;
                    break;
                }
            if (!contained) facets_.push_back(s);
        }
        std::sort(facets_.begin(), facets_.end());
    }

    int vertex_count() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::vector<int>>& facets() const { return facets_; }

    int dimension() const {
        int d = -1;
        for (const auto& f : facets_) d = std::max(d, static_cast<int>(f.size()) - 1);
        return d;
    }

    // All k-dimensional faces, lexicographically sorted.
    std::vector<std::vector<int>> faces(int k) const {
        std::set<std::vector<int>> out;
        if (k < 0) return {};
        size_t r = static_cast<size_t>(k) + 1;
        for (const auto& f : facets_) {
            if (f.size() < r) continue;
            std::vector<bool> pick(f.size(), false);
            std::fill(pick.begin(), pick.begin() + static_cast<long>(r), true);
            do {
                std::vector<int> s;
                for (size_t i = 0; i < f.size(); ++i)
                    if (pick[i]) s.push_back(f[i]);
                out.insert(std::move(s));
            } while (std::prev_permutation(pick.begin(), pick.end()));
        }
        return {out.begin(), out.end()};
    }

    std::vector<size_t> f_vector() const {
        std::vector<size_t> f;
        for (int k = 0; k <= dimension(); ++k) f.push_back(faces(k).size());
        return f;
    }

    int connected_components() const {
        std::vector<int> parent(labels_.size());
        for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
        auto find = [&](int x) {
            while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            return x;
        };
        for (const auto& f : facets_)
            for (size_t i = 1; i < f.size(); ++i) parent[static_cast<size_t>(find(f[i]))] = find(f[0]);
        int c = 0;
        for (size_t i = 0; i < parent.size(); ++i) c += find(static_cast<int>(i)) == static_cast<int>(i);
        return c;
    }

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> facets_;
};

struct DualComplex {
    SimplicialComplex complex;
    bool subdivided = false;
    std::vector<std::string> warnings;
};

namespace detail {

inline std::string stratum_name(const DegenerationConfig& cfg, const std::vector<int>& s) {
    std::string out;
    for (size_t i = 0; i < s.size(); ++i) out += (i ? "." : "") + cfg.components()[static_cast<size_t>(s[i])].label;
    return out;
}

// proper subsets of size >= 2
inline std::vector<std::vector<int>> proper_faces(const std::vector<int>& s) {
    std::vector<std::vector<int>> out;
    unsigned n = static_cast<unsigned>(s.size());
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        if (__builtin_popcount(mask) < 2) continue;
        std::vector<int> t;
        for (unsigned i = 0; i < n; ++i)
            if (mask & (1u << i)) t.push_back(s[i]);
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace detail

// Vertices are components; a subset spans a simplex iff listed. Repeated
// strata are resolved by barycentric subdivision.
inline DualComplex dual_complex(const DegenerationConfig& cfg) {
    DualComplex out;
    if (cfg.components().empty()) throw InputError("dual_complex: no components");
    std::map<std::vector<int>, int> mult;
    for (const auto& s : cfg.strata()) ++mult[s];
    // downward closure
    std::vector<std::vector<int>> added;
    for (const auto& [s, c] : mult)
        for (auto& t : detail::proper_faces(s))
            if (!mult.count(t) && std::find(added.begin(), added.end(), t) == added.end()) added.push_back(t);
    std::sort(added.begin(), added.end());
    for (auto& t : added) {
        out.warnings.push_back("normalization: added missing face " + detail::stratum_name(cfg, t));
        mult[t] = 1;
    }
    bool repeated = false;
    for (const auto& [s, c] : mult)
        if (c > 1) {
            repeated = true;
            for (const auto& [t, ct] : mult)
                if (t.size() > s.size() && std::includes(t.begin(), t.end(), s.begin(), s.end()))
                    throw InputError("dual_complex: ambiguous config, " + detail::stratum_name(cfg, s) +
                                     " is listed more than once and is also a face of " + detail::stratum_name(cfg, t));
        }

    std::vector<std::string> comp_labels;
    for (const auto& c : cfg.components()) comp_labels.push_back(c.label);
    if (!repeated) {
        std::vector<std::vector<int>> simplices;
        for (const auto& [s, c] : mult) simplices.push_back(s);
        out.complex = SimplicialComplex(comp_labels, simplices);
        return out;
    }

    // barycentric subdivision: vertices are cells, simplices are flags
    out.subdivided = true;
    std::vector<std::string> labels = comp_labels;
    std::map<std::vector<int>, int> unique_cell;   // only for subsets of multiplicity one
    for (size_t i = 0; i < comp_labels.size(); ++i) unique_cell[{static_cast<int>(i)}] = static_cast<int>(i);
    struct Cell {
        std::vector<int> set;
        int vertex;
    };
    std::vector<Cell> cells;
    for (const auto& [s, c] : mult)
        for (int j = 0; j < c; ++j) {
            int v = static_cast<int>(labels.size());
            labels.push_back(detail::stratum_name(cfg, s) + (c > 1 ? "#" + std::to_string(j + 1) : ""));
            cells.push_back({s, v});
            if (c == 1) unique_cell[s] = v;
        }
    std::vector<std::vector<int>> simplices;
    for (size_t i = 0; i < comp_labels.size(); ++i) simplices.push_back({static_cast<int>(i)});
    for (const auto& cell : cells) {
        // every flag top = I_k > ... > I_0 obtained by dropping one element at a time
        std::vector<int> order = cell.set;
        do {
            std::vector<int> chain{cell.vertex};
            std::vector<int> cur = cell.set;
            for (size_t drop = 0; drop + 1 < order.size(); ++drop) {
                cur.erase(std::find(cur.begin(), cur.end(), order[drop]));
                chain.push_back(unique_cell.at(cur));
            }
            simplices.push_back(std::move(chain));
        } while (std::next_permutation(order.begin(), order.end()));
    }
    out.complex = SimplicialComplex(labels, simplices);
    return out;
}

// dim H^n(S; Q), from exact ranks of the simplicial boundary maps.
inline long betti(const SimplicialComplex& S, int n) {
    if (n < 0) throw InputError("betti: negative degree " + std::to_string(n));
    if (n > S.dimension()) return 0;
    RationalField Q;
    auto boundary_rank = [&](int k) -> long {
        // d_k : C_k -> C_{k-1}
        if (k <= 0 || k > S.dimension()) return 0;
        auto hi = S.faces(k), lo = S.faces(k - 1);
        std::map<std::vector<int>, size_t> row;
        for (size_t i = 0; i < lo.size(); ++i) row[lo[i]] = i;
        Matrix<RationalField> D(Q, lo.size(), hi.size());
        for (size_t j = 0; j < hi.size(); ++j)
            for (size_t i = 0; i < hi[j].size(); ++i) {
                auto f = hi[j];
                f.erase(f.begin() + static_cast<long>(i));
                D(row.at(f), j) = (i % 2 == 0) ? 1 : -1;
            }
        return static_cast<long>(D.rank());
    };
    long fn = static_cast<long>(S.faces(n).size());
    return fn - boundary_rank(n) - boundary_rank(n + 1);
}

inline long reduced_betti(const SimplicialComplex& S, int n) {
    return betti(S, n) - (n == 0 ? 1 : 0);
}

inline long euler_characteristic(const SimplicialComplex& S) {
    long chi = 0, sign = 1;
    for (auto f : S.f_vector()) {
        chi += sign * static_cast<long>(f);
        sign = -sign;
    }
    return chi;
}

struct VanishingCycleSpec {
    int order = 0;              // r, number of local branches
    std::vector<int> indices;   // i_1 < ... < i_k, 1-based

    void validate() const {
        if (order < 1) throw InputError("vanishing cycle: crossing order must be >= 1");
        if (indices.empty() || static_cast<int>(indices.size()) > order)
            throw InputError("vanishing cycle: need 1 <= k <= r branch indices");
        for (size_t i = 0; i < indices.size(); ++i) {
            if (indices[i] < 1 || indices[i] > order) throw InputError("vanishing cycle: branch index out of range");
            if (i && indices[i] <= indices[i - 1]) throw InputError("vanishing cycle: branch indices must be distinct and increasing");
        }
    }
    std::string describe() const {
        validate();
        std::string s = "product of " + std::to_string(indices.size()) + " simple loop(s) around branches {";
        for (size_t i = 0; i < indices.size(); ++i) s += (i ? "," : "") + std::to_string(indices[i]);
        return s + "} of a crossing of order " + std::to_string(order);
    }
};

struct VanishingCycleReport {
    long count = 0;
    int degree = 0;
    bool middle = true;                // false: combinatorial only
    bool hypothesis_satisfied = false; // two independent vanishing cycles
    DualComplex dual;
};

inline VanishingCycleReport vanishing_cycle_count(const DegenerationConfig& cfg, int n) {
    VanishingCycleReport r;
    r.dual = dual_complex(cfg);
    r.degree = n;
    r.count = betti(r.dual.complex, n);
    r.middle = n == cfg.fiber_dimension;
    r.hypothesis_satisfied = r.middle && r.count >= 2;
    return r;
}

struct StableCurveReport {
    bool condition = false;        // sum pg <= g - 2
    bool node_condition = false;   // delta - ell >= 1
    int pg_sum = 0;
    int delta_minus_ell = 0;
    std::string text;
};

inline StableCurveReport stable_curve_check(int g, const std::vector<int>& pg, int delta, int ell) {
    if (ell < 1) throw InputError("stable_curve_check: need at least one component");
    if (delta < 0) throw InputError("stable_curve_check: negative node count");
    if (static_cast<int>(pg.size()) != ell)
        throw InputError("stable_curve_check: " + std::to_string(pg.size()) + " geometric genera for " + std::to_string(ell) + " components");
    StableCurveReport r;
    for (int p : pg) {
        if (p < 0) throw InputError("stable_curve_check: negative geometric genus");
        r.pg_sum += p;
    }
    int expect = r.pg_sum + delta - ell + 1;
    if (g != expect)
        throw InputError("stable_curve_check: inconsistent data, g = " + std::to_string(g) + " but sum pg + delta - ell + 1 = " + std::to_string(expect));
    r.delta_minus_ell = delta - ell;
    r.condition = r.pg_sum <= g - 2;
    r.node_condition = r.delta_minus_ell >= 1;
    if (r.condition != r.node_condition) throw std::logic_error("stable_curve_check: verdicts disagree");
    r.text = "sum pg = " + std::to_string(r.pg_sum) + (r.condition ? " <= " : " > ") + "g - 2 = " + std::to_string(g - 2) +
             "; delta - ell = " + std::to_string(r.delta_minus_ell) + (r.node_condition ? " >= 1" : " < 1");
    return r;
}

struct CurveData {
    int g = 0, delta = 0, ell = 0;
    std::vector<int> pg;
};

// Nodal curve read off a config: components with pg, one 2-stratum per node.
inline CurveData curve_data(const DegenerationConfig& cfg) {
    CurveData c;
    c.ell = static_cast<int>(cfg.components().size());
    for (const auto& comp : cfg.components()) {
        if (!comp.pg) throw InputError("curve data: component '" + comp.label + "' has no pg");
        c.pg.push_back(*comp.pg);
    }
    for (const auto& s : cfg.strata()) {
        if (s.size() != 2) throw InputError("curve data: a nodal curve has only pairwise intersections");
        ++c.delta;
    }
    int sum = 0;
    for (int p : c.pg) sum += p;
    c.g = sum + c.delta - c.ell + 1;
    return c;
}

// d generic hyperplanes in P^n: k of them meet iff k <= n.
inline DegenerationConfig generic_arrangement_config(int d, int n) {
    if (d < 1 || n < 1) throw InputError("generic arrangement: need d >= 1 and n >= 1");
    DegenerationConfig cfg;
    cfg.fiber_dimension = n - 1;
    for (int i = 1; i <= d; ++i) cfg.add_component("H" + std::to_string(i));
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
        int k = __builtin_popcount(mask);
        if (k < 2 || k > n) continue;
        std::vector<int> s;
        for (int i = 0; i < d; ++i)
            if (mask & (1u << i)) s.push_back(i);
        cfg.add_stratum_indices(std::move(s));
    }
    return cfg;
}

struct ArrangementReport {
    long count = 0;   // C(d-1, n)
    long betti = 0;   // reduced h^{n-1} of the dual complex
    bool agree = false;
};

inline ArrangementReport generic_arrangement_count(int d, int n) {
    if (n < 1 || d <= n + 1)
        throw InputError("generic_arrangement_count: hypothesis violated, need degree d > n + 1 in P^n (got d = " +
                         std::to_string(d) + ", n = " + std::to_string(n) + ")");
    if (d > 20) throw UnsupportedError("generic_arrangement_count: d > 20");
    ArrangementReport r;
    r.count = binomial(static_cast<unsigned long>(d - 1), static_cast<unsigned long>(n)).get_si();
    r.betti = reduced_betti(dual_complex(generic_arrangement_config(d, n)).complex, n - 1);
    r.agree = r.count == r.betti;
    return r;
}

} // namespace gheight
