#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace scatter {

using Vertex = int;

/// Sorted, duplicate-free vector of vertex ids. All set algebra below
/// assumes (and preserves) that ordering, which keeps every iteration in
/// the solver deterministic.
using VertexSet = std::vector<Vertex>;

namespace vset {

inline VertexSet make(std::initializer_list<Vertex> vs) {
    VertexSet s(vs);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline VertexSet normalized(VertexSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline bool contains(const VertexSet& s, Vertex v) {
    return std::binary_search(s.begin(), s.end(), v);
}

inline void insert(VertexSet& s, Vertex v) {
    auto it = std::lower_bound(s.begin(), s.end(), v);
    if (it == s.end() || *it != v) s.insert(it, v);
}

inline void erase(VertexSet& s, Vertex v) {
    auto it = std::lower_bound(s.begin(), s.end(), v);
    if (it != s.end() && *it == v) s.erase(it);
}

inline VertexSet unite(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VertexSet intersect(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VertexSet subtract(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool is_subset(const VertexSet& a, const VertexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool disjoint(const VertexSet& a, const VertexSet& b) {
    return intersect(a, b).empty();
}

inline std::string to_string(const VertexSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    out += "}";
    return out;
}

}  // namespace vset
}  // namespace scatter
