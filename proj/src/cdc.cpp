#include "cdcpath/cdc.hpp"

#include <algorithm>

namespace cdcpath {

CdcInstance cdc_from_partition(const Partition& p) {
    CdcInstance inst;
    inst.ground_size = static_cast<int>(p.points.size());
    inst.families.reserve(p.faces.size());
    for (const auto& face : p.faces) {
        std::vector<int> fam = face;
        std::sort(fam.begin(), fam.end());
        inst.families.push_back(std::move(fam));
    }
    return inst;
}

bool is_feasible(const CdcInstance& inst, const std::vector<int>& set) {
    std::vector<int> s = set;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (const auto& fam : inst.families)
        if (std::includes(fam.begin(), fam.end(), s.begin(), s.end())) return true;
    return false;
}

bool ConflictGraph::has_edge(int a, int b) const {
    if (a == b) return false;
    const std::pair<int, int> e{std::min(a, b), std::max(a, b)};
    return std::binary_search(edges.begin(), edges.end(), e);
}

std::vector<std::vector<int>> ConflictGraph::adjacency() const {
    std::vector<std::vector<int>> adj(n);
    for (const auto& [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

ConflictGraph conflict_graph(const CdcInstance& inst) {
    ConflictGraph g;
    g.n = inst.ground_size;
    std::vector<std::vector<char>> together(g.n, std::vector<char>(g.n, 0));
    for (const auto& fam : inst.families)
        for (std::size_t a = 0; a < fam.size(); ++a)
            for (std::size_t b = a + 1; b < fam.size(); ++b)
                together[fam[a]][fam[b]] = 1;
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (!together[u][v]) g.edges.push_back({u, v});
    return g;
}

std::optional<std::vector<int>> pairwise_ib_obstruction(const CdcInstance& inst) {
    const int n = inst.ground_size;
    std::vector<std::vector<int>> fams_of(n);
    std::vector<std::vector<char>> together(n, std::vector<char>(n, 0));
    for (int f = 0; f < static_cast<int>(inst.families.size()); ++f) {
        const auto& fam = inst.families[f];
        for (std::size_t a = 0; a < fam.size(); ++a) {
            fams_of[fam[a]].push_back(f);
            for (std::size_t b = a + 1; b < fam.size(); ++b) {
                together[fam[a]][fam[b]] = 1;
                together[fam[b]][fam[a]] = 1;
            }
        }
    }

    // A ground element in no family is a minimal infeasible singleton.
    for (int v = 0; v < n; ++v)
        if (fams_of[v].empty()) return std::vector<int>{v};

    auto common_family = [&](int u, int v, int w) {
        const auto &fu = fams_of[u], &fv = fams_of[v], &fw = fams_of[w];
        std::size_t a = 0, b = 0, c = 0;
        while (a < fu.size() && b < fv.size() && c < fw.size()) {
            const int m = std::max({fu[a], fv[b], fw[c]});
            if (fu[a] == m && fv[b] == m && fw[c] == m) return true;
            if (fu[a] < m) ++a;
            if (fv[b] < m) ++b;
            if (fw[c] < m) ++c;
        }
        return false;
    };

    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (!together[u][v]) continue;
            for (int w = v + 1; w < n; ++w) {
                if (!together[u][w] || !together[v][w]) continue;
                if (!common_family(u, v, w)) return std::vector<int>{u, v, w};
            }
        }
    return std::nullopt;
}

bool is_pairwise_ib_representable(const CdcInstance& inst) {
    return !pairwise_ib_obstruction(inst).has_value();
}

}  // namespace cdcpath
