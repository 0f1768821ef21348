#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "exphull/qmatrix.hpp"

namespace exphull {

/// All primitive integer vectors of the given dimension with entries in
/// [-height, height], one per line (first nonzero entry positive), sorted by
/// (sum of |entries|, lexicographic) so coordinate vectors come first.
std::vector<std::vector<long>> primitive_vectors(int dim, long height);

/// Breadth-first enumeration of the subspaces base + span(v_1..v_k) with the
/// v_i drawn from a fixed vector family. Every distinct subspace is produced
/// exactly once, level k listing the subspaces of dimension rank(base)+k, in
/// a deterministic order. Deduplication is by rational row space, and
/// extension works span-by-span, so no reachable subspace is missed.
class SubspaceExtender {
public:
    struct Node {
        QMatrix added;  ///< the generating vectors added over the base
        QMatrix span;   ///< base rows stacked with added rows
        std::string key;
    };

    /// `within`: optional subspace that must contain every enumerated span.
    SubspaceExtender(QMatrix base, std::vector<std::vector<long>> family,
                     std::optional<QMatrix> within = std::nullopt);

    /// Nodes of the current level (level 0 is empty; call advance first).
    const std::vector<Node>& level() const { return level_; }

    /// Builds the next level; returns false when no new subspaces appear.
    bool advance();

    int levels_done() const { return levels_; }

private:
    QMatrix base_;
    std::vector<std::vector<long>> family_;
    std::optional<QMatrix> within_;
    std::vector<Node> level_;
    std::set<std::string> seen_;
    int levels_ = 0;
};

/// Index of the first item satisfying pred, evaluating chunks of the list in
/// parallel with search_threads() workers; the returned index is independent
/// of the thread count.
std::optional<size_t> first_matching(size_t count, const std::function<bool(size_t)>& pred);

/// Evaluates fn(0..count-1) with search_threads() workers; completion only,
/// no result ordering concerns.
void parallel_for(size_t count, const std::function<void(size_t)>& fn);

} // namespace exphull
