#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <utility>
#include <vector>

#include "tropde/ext_nat.hpp"

namespace tropde {

using Order = std::size_t;

/// A subset S of the non-negative integers stored as a finite part plus an
/// optional cofinite tail [m, inf).
///
/// Construction normalizes: the finite part is sorted and deduplicated and
/// every finite element >= m is dropped. Finite elements directly below m are
/// NOT merged into the tail, so two Supports can denote the same set (e.g.
/// {3} + [4,inf) and [3,inf)); within the canonical form used by the solvers
/// (finite part below r, tail >= r) the representation is unique.
class Support {
public:
    Support() = default;

    Support(std::vector<std::uint64_t> finite, std::optional<std::uint64_t> tail)
        : finite_(std::move(finite)), tail_(tail) {
        std::sort(finite_.begin(), finite_.end());
        finite_.erase(std::unique(finite_.begin(), finite_.end()), finite_.end());
        if (tail_) {
            finite_.erase(std::lower_bound(finite_.begin(), finite_.end(), *tail_), finite_.end());
        }
    }

    static Support empty() { return {}; }
    static Support cofinite(std::uint64_t m) { return Support({}, m); }
    static Support all() { return cofinite(0); }

    const std::vector<std::uint64_t>& finite_part() const noexcept { return finite_; }
    const std::optional<std::uint64_t>& tail() const noexcept { return tail_; }

    bool is_empty() const noexcept { return finite_.empty() && !tail_; }

    bool contains(std::uint64_t s) const {
        if (tail_ && s >= *tail_) return true;
        return std::binary_search(finite_.begin(), finite_.end(), s);
    }

    /// Least member >= j, if any.
    std::optional<std::uint64_t> least_member_at_least(std::uint64_t j) const {
        auto it = std::lower_bound(finite_.begin(), finite_.end(), j);
        if (it != finite_.end()) return *it;
        if (tail_) return std::max(*tail_, j);
        return std::nullopt;
    }

    /// Largest finite element plus one, or the tail start: every integer at or
    /// beyond this horizon is a member iff the tail is present.
    std::uint64_t horizon() const {
        std::uint64_t h = finite_.empty() ? 0 : finite_.back() + 1;
        if (tail_) h = std::max(h, *tail_);
        return h;
    }

    friend bool operator==(const Support&, const Support&) = default;

private:
    std::vector<std::uint64_t> finite_;
    std::optional<std::uint64_t> tail_;
};

inline Support make_support(const std::set<std::uint64_t>& finite, std::optional<std::uint64_t> tail) {
    return Support(std::vector<std::uint64_t>(finite.begin(), finite.end()), tail);
}

/// Order at zero of the j-th derivative of a series with support S:
/// min{s - j : s in S, s >= j}, or infinity.
inline ExtNat valuation(const Support& s, std::uint64_t j) {
    if (auto w = s.least_member_at_least(j)) return ExtNat(*w - j);
    return kInfinity;
}

/// Entries valuation(S, j) for j = 0..r.
inline std::vector<ExtNat> valuation_vector(const Support& s, Order r) {
    std::vector<ExtNat> out;
    out.reserve(r + 1);
    for (Order j = 0; j <= r; ++j) out.push_back(valuation(s, j));
    return out;
}

/// Set union. Its valuation is the pointwise minimum of the operands'.
inline Support join(const Support& a, const Support& b) {
    std::vector<std::uint64_t> merged;
    merged.reserve(a.finite_part().size() + b.finite_part().size());
    std::set_union(a.finite_part().begin(), a.finite_part().end(), b.finite_part().begin(),
                   b.finite_part().end(), std::back_inserter(merged));
    std::optional<std::uint64_t> tail;
    if (a.tail() && b.tail()) {
        tail = std::min(*a.tail(), *b.tail());
    } else {
        tail = a.tail() ? a.tail() : b.tail();
    }
    return Support(std::move(merged), tail);
}

inline bool is_subset(const Support& a, const Support& b) {
    for (auto s : a.finite_part()) {
        if (!b.contains(s)) return false;
    }
    if (!a.tail()) return true;
    if (!b.tail()) return false;
    // [a.tail, inf) must be covered by b's finite run below b.tail plus b's tail.
    for (std::uint64_t s = *a.tail(); s < *b.tail(); ++s) {
        if (!b.contains(s)) return false;
    }
    return true;
}

/// Finite part below r plus a tail at the least member >= r. Valuations for
/// j = 0..r are unchanged.
inline Support canonicalize(const Support& s, Order r) {
    auto first_big = s.least_member_at_least(r);
    if (!first_big) return s;
    std::vector<std::uint64_t> low;
    for (std::uint64_t x = 0; x < r; ++x) {
        if (s.contains(x)) low.push_back(x);
    }
    return Support(std::move(low), *first_big);
}

inline bool is_canonical(const Support& s, Order r) {
    if (!s.finite_part().empty() && s.finite_part().back() >= r) return false;
    return !s.tail() || *s.tail() >= r;
}

inline std::ostream& operator<<(std::ostream& os, const Support& s) {
    if (s.is_empty()) return os << "empty";
    os << "fin";
    for (auto x : s.finite_part()) os << ' ' << x;
    os << " tail ";
    if (s.tail()) {
        os << *s.tail();
    } else {
        os << "none";
    }
    return os;
}

}  // namespace tropde
