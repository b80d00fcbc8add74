#ifndef CHAINPRICE_NETWORK_HPP
#define CHAINPRICE_NETWORK_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chainprice/errors.hpp"

namespace chainprice {

using BoolMatrix = std::vector<std::vector<bool>>;

/// A validated influence network: an acyclic, transitive DAG over the
/// monopolist firms with a zero diagonal. Edge (i,j) means firm i's price
/// is observed by firm j, which best-responds to it. Immutable after
/// construction; construct via validate().
class InfluenceNetwork {
  public:
    InfluenceNetwork() = default; // zero firms
    int size() const { return n_; }
    bool edge(int i, int j) const { return adj_[static_cast<std::size_t>(i) * n_ + j] != 0; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_[i]; }
    /// Index of the firm with the given label, -1 if absent.
    int index_of(const std::string& label) const;
    int out_degree(int i) const;
    int edge_count() const;
    /// Firms directly influenced by i (by transitivity this is everything
    /// reachable from i).
    std::vector<int> influenced(int i) const;

  private:
    friend InfluenceNetwork validate(const BoolMatrix&, std::vector<std::string>);
    InfluenceNetwork(int n, std::vector<std::uint8_t> adj, std::vector<std::string> labels)
        : n_(n), adj_(std::move(adj)), labels_(std::move(labels)) {}

    int n_ = 0;
    std::vector<std::uint8_t> adj_; // row-major n*n
    std::vector<std::string> labels_;
};

/// Path-count vectors of a network: totals[k-1] is the number of (k-1)-edge
/// directed paths in the whole network (totals[0] = n), per_firm[i][k-1] the
/// number starting at firm i. Entries are exact; counts stay below 2^n, so
/// 64-bit integers suffice for n <= 64.
struct PathCounts {
    std::vector<std::uint64_t> totals;
    std::vector<std::vector<std::uint64_t>> per_firm;
};

enum class CanonicalKind { Empty, Chain };

/// Validates an adjacency matrix (square, zero diagonal, acyclic,
/// transitive). Throws ValidationError listing every violated rule.
/// Labels default to "1".."n" and must be unique when given.
InfluenceNetwork validate(const BoolMatrix& adjacency, std::vector<std::string> labels = {});

PathCounts path_counts(const InfluenceNetwork& net);

/// Smallest d with A^d = 0. depth(empty network with n >= 1) = 1; 0 for n = 0.
int depth(const InfluenceNetwork& net);

/// Empty = no edges (simultaneous decisions); Chain = transitive tournament
/// (fully sequential decisions: i influences j for all i < j).
InfluenceNetwork canonical(CanonicalKind kind, int n);

/// Contracts nodes i and j into one node labelled "<label_i>+<label_j>".
/// The merged node's out-edges are the union of both originals' (edges
/// between i and j are dropped) plus extra_edges; the result is
/// transitively closed before validation.
InfluenceNetwork merge_nodes(const InfluenceNetwork& net, int i, int j,
                             const std::vector<std::pair<int, int>>& extra_edges = {});

/// Transitive closure of an arbitrary boolean matrix (helper for merger
/// rewiring; the input need not be a valid network).
BoolMatrix transitive_closure(const BoolMatrix& adjacency);

} // namespace chainprice

#endif
