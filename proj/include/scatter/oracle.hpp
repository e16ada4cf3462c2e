#pragma once

#include <optional>

#include "scatter/classes.hpp"
#include "scatter/separators.hpp"

namespace scatter {

/// Exhaustive reference implementations. They enumerate subsets outright and
/// exist to cross-check the clever code paths, so they refuse instances big
/// enough to make that painful.
inline constexpr std::size_t kOracleVertexLimit = 20;

namespace detail {

/// Visit all size-r subsets of pool in lexicographic order; stop early once
/// visit returns true.
inline bool for_each_subset(const VertexSet& pool, std::size_t r,
                            const std::function<bool(const VertexSet&)>& visit) {
    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = i;
    if (r > pool.size()) return false;
    while (true) {
        VertexSet s;
        s.reserve(r);
        for (std::size_t i : idx) s.push_back(pool[i]);
        if (visit(s)) return true;
        // advance the combination
        std::size_t i = r;
        while (i > 0 && idx[i - 1] == pool.size() - r + i - 1) --i;
        if (i == 0) return false;
        ++idx[i - 1];
        for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline void check_oracle_size(const Graph& g) {
    if (g.num_vertices() > kOracleVertexLimit)
        throw GraphError("oracle refuses graphs with more than " +
                         std::to_string(kOracleVertexLimit) + " vertices");
}

}  // namespace detail

/// Lexicographically least minimum-size modulator of size <= k avoiding the
/// undeletable set, found by exhaustive search; nullopt when none exists.
inline std::optional<VertexSet> oracle_solve(const Graph& g, const ClassFamily& classes, int k,
                                             const VertexSet& undeletable = {}) {
    detail::check_oracle_size(g);
    if (k < 0) return std::nullopt;
    VertexSet pool = vset::subtract(g.vertices(), undeletable);
    std::optional<VertexSet> found;
    for (std::size_t r = 0; r <= static_cast<std::size_t>(k) && !found; ++r)
        detail::for_each_subset(pool, r, [&](const VertexSet& z) {
            if (is_scattered_modulator(g, z, classes)) {
                found = z;
                return true;
            }
            return false;
        });
    return found;
}

/// Every modulator of size <= k avoiding the undeletable set, in
/// lexicographic order.
inline std::vector<VertexSet> oracle_solution_catalog(const Graph& g, const ClassFamily& classes,
                                                      int k, const VertexSet& undeletable = {}) {
    detail::check_oracle_size(g);
    std::vector<VertexSet> out;
    if (k < 0) return out;
    VertexSet pool = vset::subtract(g.vertices(), undeletable);
    for (std::size_t r = 0; r <= static_cast<std::size_t>(k); ++r)
        detail::for_each_subset(pool, r, [&](const VertexSet& z) {
            if (is_scattered_modulator(g, z, classes)) out.push_back(z);
            return false;
        });
    std::sort(out.begin(), out.end());
    return out;
}

/// Important separators straight from the definition: every subset of
/// V - (X ∪ Y ∪ u) of size <= k that separates minimally and is dominated
/// by no other separating subset.
inline std::vector<VertexSet> oracle_important_separators(const SeparatorQuery& q) {
    q.validate();
    detail::check_oracle_size(q.graph);
    VertexSet pool = vset::subtract(
        q.graph.vertices(), vset::unite(vset::unite(q.x, q.y), q.undeletable));
    std::vector<VertexSet> seps;
    for (std::size_t r = 0; r <= static_cast<std::size_t>(q.k); ++r)
        detail::for_each_subset(pool, r, [&](const VertexSet& s) {
            if (is_separator(q.graph, s, q.x, q.y)) seps.push_back(s);
            return false;
        });
    std::vector<VertexSet> out;
    for (const auto& s : seps) {
        if (!is_minimal_separator(q.graph, s, q.x, q.y)) continue;
        bool dominated = false;
        for (const auto& t : seps)
            if (t != s && dominates(q.graph, q.x, t, s)) {
                dominated = true;
                break;
            }
        if (!dominated) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace scatter
