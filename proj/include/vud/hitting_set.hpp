#pragma once

// Hitting sets and minimal hitting sets of finite set families, generic
// over any totally ordered element type.

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

namespace vud {

template <typename T>
using SetFamily = std::set<std::set<T>>;

/// h ⊆ ⋃s and h meets every non-empty member of s.
template <typename T>
bool is_hitting_set(const std::set<T>& h, const SetFamily<T>& s) {
    std::set<T> all;
    for (const auto& r : s) all.insert(r.begin(), r.end());
    if (!std::includes(all.begin(), all.end(), h.begin(), h.end())) return false;
    for (const auto& r : s) {
        if (r.empty()) continue;
        bool hit = std::any_of(r.begin(), r.end(), [&](const T& x) { return h.count(x) != 0; });
        if (!hit) return false;
    }
    return true;
}

/// Size first, then lexicographic.
template <typename T>
void sort_by_size(std::vector<std::set<T>>& sets) {
    std::sort(sets.begin(), sets.end(), [](const std::set<T>& a, const std::set<T>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
}

/// Members of `family` with no proper subset in `family`, deduplicated.
template <typename T>
std::vector<std::set<T>> minimal_members(const std::vector<std::set<T>>& family) {
    std::vector<std::set<T>> sorted(family.begin(), family.end());
    sort_by_size(sorted);
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::set<T>> out;
    for (const auto& candidate : sorted) {
        bool dominated = std::any_of(out.begin(), out.end(), [&](const std::set<T>& kept) {
            return std::includes(candidate.begin(), candidate.end(), kept.begin(), kept.end());
        });
        if (!dominated) out.push_back(candidate);
    }
    return out;
}

namespace detail {

template <typename T>
struct HittingSearch {
    std::vector<std::set<T>> members; // non-empty, minimal members only
    std::vector<std::set<T>> found;
    std::set<T> current;

    bool dominated(const std::set<T>& h) const {
        return std::any_of(found.begin(), found.end(), [&](const std::set<T>& f) {
            return std::includes(h.begin(), h.end(), f.begin(), f.end());
        });
    }

    bool is_minimal(const std::set<T>& h) const {
        // Every element needs a member it alone hits.
        for (const T& x : h) {
            bool needed = std::any_of(members.begin(), members.end(), [&](const std::set<T>& r) {
                if (!r.count(x)) return false;
                return std::none_of(r.begin(), r.end(), [&](const T& y) { return !(y == x) && h.count(y); });
            });
            if (!needed) return false;
        }
        return true;
    }

    void search() {
        if (dominated(current)) return;
        auto open = std::find_if(members.begin(), members.end(), [&](const std::set<T>& r) {
            return std::none_of(r.begin(), r.end(), [&](const T& x) { return current.count(x) != 0; });
        });
        if (open == members.end()) {
            if (is_minimal(current)) found.push_back(current);
            return;
        }
        for (const T& x : *open) {
            current.insert(x);
            // Prune: a chosen element must stay necessary.
            if (is_minimal(current)) search();
            current.erase(x);
        }
    }
};

} // namespace detail

/// All inclusion-minimal hitting sets by branch and bound: branch on the
/// first unhit member, cut partial sets that already contain an unneeded
/// element or a found solution. Sorted by size then lexicographically.
template <typename T>
std::vector<std::set<T>> minimal_hitting_sets(const SetFamily<T>& s) {
    detail::HittingSearch<T> search;
    std::vector<std::set<T>> nonempty;
    for (const auto& r : s)
        if (!r.empty()) nonempty.push_back(r);
    search.members = minimal_members(nonempty);
    search.search();
    auto out = minimal_members(search.found);
    sort_by_size(out);
    return out;
}

/// Reference enumeration over every subset of ⋃s. Limited to 24 elements.
template <typename T>
std::vector<std::set<T>> minimal_hitting_sets_exhaustive(const SetFamily<T>& s) {
    std::set<T> all_set;
    for (const auto& r : s) all_set.insert(r.begin(), r.end());
    std::vector<T> all(all_set.begin(), all_set.end());
    if (all.size() > 24) throw std::length_error("exhaustive hitting-set search limited to 24 elements");
    std::vector<std::set<T>> hitting;
    for (std::uint32_t mask = 0; mask < (1u << all.size()); ++mask) {
        std::set<T> h;
        for (std::size_t i = 0; i < all.size(); ++i)
            if (mask & (1u << i)) h.insert(all[i]);
        if (is_hitting_set(h, s)) hitting.push_back(std::move(h));
    }
    auto out = minimal_members(hitting);
    sort_by_size(out);
    return out;
}

} // namespace vud
