#include "chainprice/network.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace chainprice {

int InfluenceNetwork::index_of(const std::string& label) const {
    for (int i = 0; i < n_; ++i)
        if (labels_[i] == label) return i;
    return -1;
}

int InfluenceNetwork::out_degree(int i) const {
    int d = 0;
    for (int j = 0; j < n_; ++j)
        if (edge(i, j)) ++d;
    return d;
}

int InfluenceNetwork::edge_count() const {
    int e = 0;
    for (int i = 0; i < n_; ++i) e += out_degree(i);
    return e;
}

std::vector<int> InfluenceNetwork::influenced(int i) const {
    std::vector<int> out;
    for (int j = 0; j < n_; ++j)
        if (edge(i, j)) out.push_back(j);
    return out;
}

namespace {

// 1-based node numbers in messages, matching the usual adjacency notation.
std::string node_name(const std::vector<std::string>& labels, int i) {
    if (static_cast<std::size_t>(i) < labels.size()) return labels[i];
    return std::to_string(i + 1);
}

// Finds one directed cycle by DFS, returned as a node sequence.
std::vector<int> find_cycle(const BoolMatrix& a) {
    const int n = static_cast<int>(a.size());
    std::vector<int> state(n, 0); // 0 unvisited, 1 on stack, 2 done
    std::vector<int> stack;
    std::vector<int> cycle;

    auto dfs = [&](auto&& self, int u) -> bool {
        state[u] = 1;
        stack.push_back(u);
        for (int v = 0; v < n; ++v) {
            if (!a[u][v]) continue;
            if (state[v] == 1) {
                auto it = std::find(stack.begin(), stack.end(), v);
                cycle.assign(it, stack.end());
                return true;
            }
            if (state[v] == 0 && self(self, v)) return true;
        }
        stack.pop_back();
        state[u] = 2;
        return false;
    };

    for (int u = 0; u < n; ++u)
        if (state[u] == 0 && dfs(dfs, u)) return cycle;
    return {};
}

} // namespace

InfluenceNetwork validate(const BoolMatrix& adjacency, std::vector<std::string> labels) {
    const int n = static_cast<int>(adjacency.size());
    for (const auto& row : adjacency)
        if (static_cast<int>(row.size()) != n)
            throw InputError("adjacency matrix is not square");

    if (labels.empty()) {
        labels.reserve(n);
        for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
    }
    if (static_cast<int>(labels.size()) != n)
        throw InputError("label count does not match matrix size");
    {
        std::set<std::string> seen;
        for (const auto& l : labels)
            if (!seen.insert(l).second)
                throw InputError("duplicate firm label: " + l);
    }

    std::vector<std::string> violations;
    for (int i = 0; i < n; ++i)
        if (adjacency[i][i])
            violations.push_back("NonZeroDiagonal(" + node_name(labels, i) + ")");

    auto cycle = find_cycle(adjacency);
    if (!cycle.empty()) {
        std::string msg = "Cycle(";
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            if (k) msg += "->";
            msg += node_name(labels, cycle[k]);
        }
        msg += "->" + node_name(labels, cycle[0]) + ")";
        violations.push_back(msg);
    } else {
        // Transitivity is only meaningful to report on acyclic inputs
        // (self-loops via a cycle would flood the report).
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (!adjacency[i][j]) continue;
                for (int k = 0; k < n; ++k)
                    if (adjacency[j][k] && !adjacency[i][k])
                        violations.push_back("IntransitiveTriple(" + node_name(labels, i) + "," +
                                             node_name(labels, j) + "," + node_name(labels, k) +
                                             ")");
            }
    }

    if (!violations.empty()) throw ValidationError(std::move(violations));

    std::vector<std::uint8_t> flat(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            flat[static_cast<std::size_t>(i) * n + j] = adjacency[i][j] ? 1 : 0;
    return InfluenceNetwork(n, std::move(flat), std::move(labels));
}

PathCounts path_counts(const InfluenceNetwork& net) {
    const int n = net.size();
    PathCounts pc;
    pc.totals.assign(n, 0);
    pc.per_firm.assign(n, std::vector<std::uint64_t>(n, 0));
    if (n == 0) return pc;

    // v = A^{k-1} 1, updated as v <- A v. Counts are bounded by 2^n - 1
    // (transitive-tournament worst case), so uint64 is exact for n <= 64.
    std::vector<std::uint64_t> v(n, 1);
    for (int k = 1; k <= n; ++k) {
        std::uint64_t total = 0;
        for (int i = 0; i < n; ++i) {
            pc.per_firm[i][k - 1] = v[i];
            total += v[i];
        }
        pc.totals[k - 1] = total;
        if (k == n) break;
        std::vector<std::uint64_t> next(n, 0);
        for (int i = 0; i < n; ++i) {
            std::uint64_t s = 0;
            for (int j = 0; j < n; ++j)
                if (net.edge(i, j)) s += v[j];
            next[i] = s;
        }
        v.swap(next);
    }
    return pc;
}

int depth(const InfluenceNetwork& net) {
    const int n = net.size();
    if (n == 0) return 0;
    auto pc = path_counts(net);
    int d = 1;
    for (int k = 2; k <= n; ++k)
        if (pc.totals[k - 1] > 0) d = k;
    return d;
}

InfluenceNetwork canonical(CanonicalKind kind, int n) {
    if (n < 0) throw InputError("negative network size");
    BoolMatrix a(n, std::vector<bool>(n, false));
    if (kind == CanonicalKind::Chain)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) a[i][j] = true;
    return validate(a);
}

BoolMatrix transitive_closure(const BoolMatrix& adjacency) {
    const int n = static_cast<int>(adjacency.size());
    BoolMatrix c = adjacency;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            if (!c[i][k]) continue;
            for (int j = 0; j < n; ++j)
                if (c[k][j]) c[i][j] = true;
        }
    return c;
}

InfluenceNetwork merge_nodes(const InfluenceNetwork& net, int i, int j,
                             const std::vector<std::pair<int, int>>& extra_edges) {
    const int n = net.size();
    if (i == j || i < 0 || j < 0 || i >= n || j >= n)
        throw InputError("merge_nodes: invalid node pair");

    // Survivors keep input order; the merged node sits at i's slot.
    std::vector<int> old_of_new;
    old_of_new.reserve(n - 1);
    for (int u = 0; u < n; ++u)
        if (u != j) old_of_new.push_back(u);
    const int m = n - 1;
    std::vector<int> new_of_old(n, -1);
    for (int u = 0; u < m; ++u) new_of_old[old_of_new[u]] = u;
    const int merged = new_of_old[i];

    std::vector<std::string> labels;
    labels.reserve(m);
    for (int u = 0; u < m; ++u) labels.push_back(net.label(old_of_new[u]));
    labels[merged] = net.label(i) + "+" + net.label(j);

    BoolMatrix a(m, std::vector<bool>(m, false));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (!net.edge(u, v)) continue;
            if ((u == i && v == j) || (u == j && v == i)) continue; // internal edge dropped
            int nu = (u == j) ? merged : new_of_old[u];
            int nv = (v == j) ? merged : new_of_old[v];
            if (nu != nv) a[nu][nv] = true;
        }
    for (auto [from, to] : extra_edges) {
        if (from < 0 || to < 0 || from >= m || to >= m)
            throw InputError("merge_nodes: extra edge references a missing node");
        if (from != to) a[from][to] = true;
    }

    a = transitive_closure(a);
    for (int u = 0; u < m; ++u)
        if (a[u][u])
            throw ValidationError({"ResultCyclic(" + labels[u] + ")"});
    return validate(a, std::move(labels));
}

} // namespace chainprice
