#include "cdcpath/biclique.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "cdcpath/common.hpp"

namespace cdcpath {

namespace {

// Breadth-first levels inside the masked vertex set; -1 = unreached.
std::vector<int> bfs_levels(const FiniteElementGraph& g, const std::vector<char>& in,
                            int start) {
    std::vector<int> level(g.n, -1);
    std::vector<int> queue{start};
    level[start] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int u = queue[head];
        for (int w : g.adjacency[u]) {
            if (!in[w] || level[w] >= 0) continue;
            level[w] = level[u] + 1;
            queue.push_back(w);
        }
    }
    return level;
}

std::vector<std::vector<int>> component_list(const FiniteElementGraph& g,
                                             const std::vector<char>& in) {
    std::vector<std::vector<int>> comps;
    std::vector<char> seen(g.n, 0);
    for (int s = 0; s < g.n; ++s) {
        if (!in[s] || seen[s]) continue;
        std::vector<int> comp{s};
        seen[s] = 1;
        for (std::size_t head = 0; head < comp.size(); ++head)
            for (int w : g.adjacency[comp[head]])
                if (in[w] && !seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

int max_induced_element(const FiniteElementGraph& g, const std::vector<char>& in) {
    int k = 2;
    for (const auto& el : g.elements) {
        int m = 0;
        for (int v : el)
            if (in[v]) ++m;
        k = std::max(k, m);
    }
    return k;
}

bool complete_in(const FiniteElementGraph& g, const std::vector<int>& verts) {
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if (!g.has_edge(verts[i], verts[j])) return false;
    return true;
}

int side_cap(int n) { return (2 * n + 2) / 3; }  // ceil(2n/3)

struct Candidate {
    std::vector<int> a, b, c;
    bool valid = false;
    bool both = false;
    int cmax = 0;
};

// Components of the remainder, largest first, greedily to the lighter side.
void pack_components(const std::vector<std::vector<int>>& comps, std::vector<int>& a,
                     std::vector<int>& b) {
    std::vector<int> order(comps.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return comps[x].size() > comps[y].size();
    });
    std::size_t wa = 0, wb = 0;
    for (int idx : order) {
        auto& side = (wa <= wb) ? a : b;
        auto& weight = (wa <= wb) ? wa : wb;
        side.insert(side.end(), comps[idx].begin(), comps[idx].end());
        weight += comps[idx].size();
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
}

Candidate evaluate_cut(const FiniteElementGraph& g, const std::vector<char>& in, int n,
                       double c_bound, std::vector<int> cset) {
    Candidate cand;
    std::sort(cset.begin(), cset.end());
    cand.c = std::move(cset);
    if (cand.c.size() >= static_cast<std::size_t>(n)) return cand;
    if (static_cast<double>(cand.c.size()) > c_bound) return cand;
    std::vector<char> rest = in;
    for (int v : cand.c) rest[v] = 0;
    pack_components(component_list(g, rest), cand.a, cand.b);
    cand.cmax = static_cast<int>(std::max(cand.a.size(), cand.b.size()));
    cand.valid = cand.cmax <= side_cap(n);
    cand.both = !cand.a.empty() && !cand.b.empty();
    return cand;
}

bool improves(const Candidate& cand, const Candidate& best) {
    if (!cand.valid) return false;
    if (!best.valid) return true;
    if (cand.both != best.both) return cand.both;
    if (cand.c.size() != best.c.size()) return cand.c.size() < best.c.size();
    return cand.cmax < best.cmax;
}

// Candidate separators: BFS level cuts (optionally after peeling one or two
// highest-degree vertices into the cut), the peel sets themselves, and
// non-adjacent pair cuts as a last resort. The best valid candidate wins.
Candidate separate_subset(const FiniteElementGraph& g, const std::vector<int>& verts,
                          int k) {
    const int n = static_cast<int>(verts.size());
    std::vector<char> in(g.n, 0);
    for (int v : verts) in[v] = 1;
    const double c_bound = 4.0 * (k / 2) * std::sqrt(static_cast<double>(n)) + 1e-9;

    Candidate best;
    const auto consider = [&](std::vector<int> cset) {
        Candidate cand = evaluate_cut(g, in, n, c_bound, std::move(cset));
        if (improves(cand, best)) best = std::move(cand);
    };

    std::vector<int> by_degree = verts;
    std::stable_sort(by_degree.begin(), by_degree.end(), [&](int x, int y) {
        int dx = 0, dy = 0;
        for (int w : g.adjacency[x]) dx += in[w];
        for (int w : g.adjacency[y]) dy += in[w];
        return dx > dy;
    });
    std::vector<std::vector<int>> peels{{}};
    if (n >= 2) peels.push_back({by_degree[0]});
    if (n >= 3) peels.push_back({by_degree[0], by_degree[1]});

    for (const auto& peel : peels) {
        std::vector<char> active = in;
        for (int v : peel) active[v] = 0;
        if (!peel.empty()) consider(peel);
        for (int s : verts) {
            if (!active[s]) continue;
            const auto level = bfs_levels(g, active, s);
            int top = 0;
            for (int v : verts)
                if (active[v]) top = std::max(top, level[v]);
            for (int t = 0; t <= top; ++t) {
                std::vector<int> cset = peel;
                for (int v : verts)
                    if (active[v] && level[v] == t) cset.push_back(v);
                consider(std::move(cset));
            }
        }
    }

    if (!best.valid) {
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = i + 1; j < verts.size(); ++j) {
                if (g.has_edge(verts[i], verts[j])) continue;
                std::vector<int> cset;
                for (int v : verts)
                    if (v != verts[i] && v != verts[j]) cset.push_back(v);
                consider(std::move(cset));
            }
    }
    if (!best.valid) throw Error("no valid separator found");
    return best;
}

// Fill an empty side from the cut so both halves of the recursion shrink.
void ensure_nonempty(const FiniteElementGraph& g, Candidate& sep) {
    for (int round = 0; round < 2 && (sep.a.empty() || sep.b.empty()); ++round) {
        std::vector<int>& empty = sep.a.empty() ? sep.a : sep.b;
        const std::vector<int>& other = sep.a.empty() ? sep.b : sep.a;
        bool moved = false;
        for (std::size_t i = 0; i < sep.c.size() && !moved; ++i) {
            const int v = sep.c[i];
            bool touches = false;
            for (int w : other)
                if (g.has_edge(v, w)) {
                    touches = true;
                    break;
                }
            if (touches) continue;
            empty.push_back(v);
            sep.c.erase(sep.c.begin() + static_cast<long>(i));
            moved = true;
        }
        if (!moved) throw Error("separator postprocessing failed");
    }
}

std::vector<int> sorted_union(const std::vector<int>& x, const std::vector<int>& y) {
    return set_union(x, y);
}

void cover_subset(const FiniteElementGraph& g, const std::vector<int>& verts,
                  std::vector<Biclique>& levels, CoverStats* stats) {
    if (verts.size() <= 1) return;
    std::vector<char> in(g.n, 0);
    for (int v : verts) in[v] = 1;

    const auto comps = component_list(g, in);
    if (comps.size() > 1) {
        // Every cross-component pair is a conflict edge, so component-vs-rest
        // bicliques cover them all at depth comps.size()-1.
        std::vector<int> rest = verts;
        for (std::size_t i = 0; i + 1 < comps.size(); ++i) {
            std::vector<int> tail;
            std::set_difference(rest.begin(), rest.end(), comps[i].begin(), comps[i].end(),
                                std::back_inserter(tail));
            levels.push_back({comps[i], tail});
            rest = std::move(tail);
        }
        for (const auto& comp : comps) cover_subset(g, comp, levels, stats);
        return;
    }

    if (complete_in(g, verts)) return;

    const int n = static_cast<int>(verts.size());
    const int k = max_induced_element(g, in);
    Candidate sep = separate_subset(g, verts, k);
    ensure_nonempty(g, sep);
    if (stats)
        stats->calls.push_back({n, k, static_cast<int>(sep.a.size()),
                                static_cast<int>(sep.b.size()),
                                static_cast<int>(sep.c.size())});
    if (static_cast<int>(sep.a.size()) > side_cap(n) ||
        static_cast<int>(sep.b.size()) > side_cap(n) ||
        static_cast<double>(sep.c.size()) >
            4.0 * (k / 2) * std::sqrt(static_cast<double>(n)) + 1e-9)
        throw Error("separator bound violated");

    levels.push_back({sep.a, sep.b});
    cover_subset(g, sorted_union(sep.a, sep.c), levels, stats);
    cover_subset(g, sorted_union(sep.b, sep.c), levels, stats);
}

std::pair<int, int> norm_edge(int u, int v) {
    return {std::min(u, v), std::max(u, v)};
}

}  // namespace

bool FiniteElementGraph::has_edge(int u, int v) const {
    if (u == v) return false;
    const auto& adj = adjacency[u];
    return std::binary_search(adj.begin(), adj.end(), v);
}

int FiniteElementGraph::max_element_size() const {
    std::size_t k = 0;
    for (const auto& el : elements) k = std::max(k, el.size());
    return static_cast<int>(k);
}

std::vector<std::pair<int, int>> FiniteElementGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n; ++u)
        for (int w : adjacency[u])
            if (u < w) out.emplace_back(u, w);
    return out;
}

FiniteElementGraph finite_element_graph(const CdcInstance& inst) {
    FiniteElementGraph g;
    g.n = inst.ground_size;
    g.elements = inst.families;
    std::vector<std::set<int>> adj(g.n);
    for (const auto& fam : inst.families) {
        for (int v : fam)
            if (v < 0 || v >= g.n) throw Error("family vertex out of range");
        for (std::size_t i = 0; i < fam.size(); ++i)
            for (std::size_t j = i + 1; j < fam.size(); ++j) {
                adj[fam[i]].insert(fam[j]);
                adj[fam[j]].insert(fam[i]);
            }
    }
    g.adjacency.reserve(g.n);
    for (int v = 0; v < g.n; ++v) g.adjacency.emplace_back(adj[v].begin(), adj[v].end());
    return g;
}

SeparatorResult planar_separator(const FiniteElementGraph& g) {
    if (g.n < 2) throw Error("separator requires at least two vertices");
    std::vector<int> all(g.n);
    std::iota(all.begin(), all.end(), 0);
    std::vector<char> in(g.n, 1);
    if (component_list(g, in).size() != 1) throw Error("separator requires a connected graph");
    if (complete_in(g, all)) throw Error("separator requires a non-complete graph");
    Candidate best = separate_subset(g, all, max_induced_element(g, in));
    return {best.a, best.b, best.c};
}

BicliqueCover biclique_cover(const FiniteElementGraph& g, CoverStats* stats) {
    BicliqueCover cover;
    if (stats) *stats = CoverStats{};
    if (g.n == 0) return cover;
    std::vector<int> all(g.n);
    std::iota(all.begin(), all.end(), 0);
    cover_subset(g, all, cover.levels, stats);

    // Sweep up anything the recursion missed with residual stars.
    std::set<std::pair<int, int>> covered;
    for (const auto& level : cover.levels)
        for (int x : level.a)
            for (int y : level.b) covered.insert(norm_edge(x, y));
    std::vector<std::vector<int>> residual(g.n);
    int residual_edges = 0;
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (!g.has_edge(u, v) && !covered.count({u, v})) {
                residual[u].push_back(v);
                residual[v].push_back(u);
                ++residual_edges;
            }
    if (stats) stats->residual_edges = residual_edges;
    std::set<std::pair<int, int>> swept;
    for (int v = 0; v < g.n; ++v) {
        if (residual[v].empty()) continue;
        bool adds = false;
        for (int w : residual[v])
            if (!swept.count(norm_edge(v, w))) adds = true;
        if (!adds) continue;
        cover.levels.push_back({{v}, residual[v]});
        for (int w : residual[v]) swept.insert(norm_edge(v, w));
    }
    return cover;
}

BicliqueCover trivial_cover(const ConflictGraph& conflict) {
    const auto adj = conflict.adjacency();
    BicliqueCover cover;
    std::set<std::pair<int, int>> covered;
    for (int v = 0; v < conflict.n; ++v) {
        if (adj[v].empty()) continue;
        bool adds = false;
        for (int w : adj[v])
            if (!covered.count(norm_edge(v, w))) adds = true;
        if (!adds) continue;
        cover.levels.push_back({{v}, adj[v]});
        for (int w : adj[v]) covered.insert(norm_edge(v, w));
    }
    return cover;
}

namespace {

bool conflict_biclique(const ConflictGraph& conflict, const std::vector<int>& a,
                       const std::vector<int>& b) {
    if (a.empty() || b.empty()) return false;
    if (!set_intersection(a, b).empty()) return false;
    for (int x : a)
        for (int y : b)
            if (!conflict.has_edge(x, y)) return false;
    return true;
}

}  // namespace

BicliqueCover merge_cover(const BicliqueCover& cover, const ConflictGraph& conflict) {
    std::vector<Biclique> levels = cover.levels;
    for (auto& level : levels) {
        std::sort(level.a.begin(), level.a.end());
        std::sort(level.b.begin(), level.b.end());
    }
    bool changed = true;
    while (changed) {
        changed = false;
        std::stable_sort(levels.begin(), levels.end(), [](const Biclique& x, const Biclique& y) {
            const std::size_t sx = x.a.size() + x.b.size();
            const std::size_t sy = y.a.size() + y.b.size();
            if (sx != sy) return sx > sy;
            if (x.a != y.a) return x.a < y.a;
            return x.b < y.b;
        });
        for (std::size_t i = 0; i < levels.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < levels.size() && !changed; ++j) {
                const Biclique merged_same{set_union(levels[i].a, levels[j].a),
                                           set_union(levels[i].b, levels[j].b)};
                const Biclique merged_cross{set_union(levels[i].a, levels[j].b),
                                            set_union(levels[i].b, levels[j].a)};
                for (const Biclique& merged : {merged_same, merged_cross}) {
                    if (!conflict_biclique(conflict, merged.a, merged.b)) continue;
                    levels[i] = merged;
                    levels.erase(levels.begin() + static_cast<long>(j));
                    changed = true;
                    break;
                }
            }
    }
    return {levels};
}

std::optional<std::string> validate_cover(const BicliqueCover& cover,
                                          const ConflictGraph& conflict) {
    std::set<std::pair<int, int>> covered;
    for (std::size_t idx = 0; idx < cover.levels.size(); ++idx) {
        const auto& level = cover.levels[idx];
        std::ostringstream where;
        where << "level " << idx + 1 << ": ";
        if (level.a.empty() || level.b.empty())
            return where.str() + "empty side";
        for (const auto* side : {&level.a, &level.b})
            for (int v : *side)
                if (v < 0 || v >= conflict.n)
                    return where.str() + "vertex " + std::to_string(v + 1) + " out of range";
        std::vector<int> sa = level.a, sb = level.b;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        const auto overlap = set_intersection(sa, sb);
        if (!overlap.empty())
            return where.str() + std::to_string(overlap.front() + 1) +
                   " appears on both sides";
        for (int x : sa)
            for (int y : sb) {
                if (!conflict.has_edge(x, y))
                    return where.str() + "(" + std::to_string(x + 1) + ", " +
                           std::to_string(y + 1) + ") is not a conflict edge";
                covered.insert(norm_edge(x, y));
            }
    }
    for (const auto& e : conflict.edges)
        if (!covered.count(e))
            return "uncovered conflict edge (" + std::to_string(e.first + 1) + ", " +
                   std::to_string(e.second + 1) + ")";
    return std::nullopt;
}

bool ib_feasible(const BicliqueCover& cover, const std::vector<int>& T) {
    for (const auto& level : cover.levels) {
        bool hit_a = false, hit_b = false;
        for (int v : T) {
            if (std::find(level.a.begin(), level.a.end(), v) != level.a.end()) hit_a = true;
            if (std::find(level.b.begin(), level.b.end(), v) != level.b.end()) hit_b = true;
        }
        if (hit_a && hit_b) return false;
    }
    return true;
}

}  // namespace cdcpath
