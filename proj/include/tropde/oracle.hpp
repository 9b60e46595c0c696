#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tropde/linear.hpp"
#include "tropde/nonlinear.hpp"

namespace tropde {

/// Finite parts range over subsets of {0..r-1}; tails over "none" and
/// [r, tail_cap]. tail_cap < r disables tails.
struct EnumerationCaps {
    Order r = 0;
    std::uint64_t tail_cap = 0;
    /// Upper limit on enumerated supports (or support tuples).
    std::uint64_t budget = std::uint64_t{1} << 26;
};

inline std::uint64_t support_count(const EnumerationCaps& caps) {
    if (caps.r >= 62) throw BudgetExceeded("2^r canonical finite parts");
    const std::uint64_t tails = caps.tail_cap >= caps.r ? caps.tail_cap - caps.r + 2 : 1;
    return checked::mul(std::uint64_t{1} << caps.r, tails);
}

/// Calls f(support) for every canonical support within caps, exactly once:
/// finite parts in lexicographic order of their sorted elements, and for each
/// the tail options none, r, r+1, ..., tail_cap.
template <class F>
void for_each_canonical_support(const EnumerationCaps& caps, F&& f) {
    if (support_count(caps) > caps.budget) throw BudgetExceeded("canonical support enumeration over budget");
    const bool tails = caps.tail_cap >= caps.r;
    std::vector<std::uint64_t> subset;
    while (true) {
        f(Support(subset, std::nullopt));
        if (tails) {
            for (std::uint64_t m = caps.r; m <= caps.tail_cap; ++m) f(Support(subset, m));
        }
        if (subset.empty()) {
            if (caps.r == 0) break;
            subset.push_back(0);
        } else if (subset.back() + 1 < caps.r) {
            subset.push_back(subset.back() + 1);
        } else {
            subset.pop_back();
            if (subset.empty()) break;
            ++subset.back();
        }
    }
}

inline std::vector<Support> enumerate_canonical_supports(const EnumerationCaps& caps) {
    std::vector<Support> out;
    out.reserve(support_count(caps));
    for_each_canonical_support(caps, [&](const Support& s) { out.push_back(s); });
    return out;
}

namespace detail {

/// Candidate supports with their valuation tables for orders 0..r.
struct CandidateTable {
    std::vector<Support> supports;
    std::vector<std::vector<ExtNat>> vals;

    explicit CandidateTable(const EnumerationCaps& caps) : supports(enumerate_canonical_supports(caps)) {
        vals.reserve(supports.size());
        for (const auto& s : supports) vals.push_back(valuation_vector(s, caps.r));
    }
};

/// Mixed-radix walk over n-tuples of candidate indices, variable 0 slowest.
template <class F>
void for_each_tuple(std::size_t n, std::size_t radix, std::uint64_t budget, F&& f) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        total = checked::mul(total, radix);
        if (total > budget) throw BudgetExceeded("support tuple enumeration over budget");
    }
    if (radix == 0 && n > 0) return;
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        if (!f(idx)) return;
        std::size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < radix) break;
            idx[pos] = 0;
            if (pos == 0) return;
        }
        if (n == 0) return;
    }
}

}  // namespace detail

struct OracleLinearResult {
    bool solvable = false;
    std::uint64_t solution_count = 0;
    /// Componentwise union of every solution found.
    std::vector<Support> join;
    /// Whether `join` itself solves the system.
    bool join_is_solution = false;
    /// Every solution, when requested.
    std::vector<std::vector<Support>> solutions;
};

inline EnumerationCaps default_caps(const LinearSystem& system) {
    return {system.r(), bound_safe(system.n(), system.r(), system.M())};
}

inline EnumerationCaps default_caps(const NonlinearSystem& system) {
    return {system.r(), bound_N1(system)};
}

/// Exhaustive ground truth for the minimal solution: every n-tuple of
/// canonical supports is tested against the system and all solutions are
/// joined.
inline OracleLinearResult oracle_minimal_linear(const LinearSystem& system, const EnumerationCaps& caps,
                                                bool keep_solutions = false) {
    if (caps.r != system.r()) throw ContractError("caps.r must equal the system's r");
    const detail::CandidateTable table(caps);
    const std::size_t n = system.n();
    OracleLinearResult result;
    result.join.assign(n, Support::empty());

    auto satisfied = [&](const LinearEquation& eq, const std::vector<std::size_t>& idx) {
        ExtNat best = eq.free_term();
        std::size_t hits = best.is_finite() ? 1 : 0;
        for (const auto& t : eq.terms()) {
            const ExtNat v = t.coeff + table.vals[idx[t.slot.var]][t.slot.order];
            if (v < best) {
                best = v;
                hits = 1;
            } else if (v == best) {
                ++hits;
            }
        }
        return best.is_infinite() || hits >= 2;
    };

    detail::for_each_tuple(n, table.supports.size(), caps.budget, [&](const std::vector<std::size_t>& idx) {
        for (const auto& eq : system.equations()) {
            if (!satisfied(eq, idx)) return true;
        }
        ++result.solution_count;
        std::vector<Support> sol;
        for (std::size_t i = 0; i < n; ++i) {
            result.join[i] = join(result.join[i], table.supports[idx[i]]);
            if (keep_solutions) sol.push_back(table.supports[idx[i]]);
        }
        if (keep_solutions) result.solutions.push_back(std::move(sol));
        return true;
    });

    result.solvable = result.solution_count > 0;
    if (result.solvable) {
        result.join_is_solution = is_solution(system, result.join);
    } else {
        result.join.clear();
    }
    return result;
}

inline OracleLinearResult oracle_minimal_linear(const LinearSystem& system) {
    return oracle_minimal_linear(system, default_caps(system));
}

/// First tuple of canonical supports (in enumeration order) solving the
/// nonlinear system.
inline std::optional<std::vector<Support>> oracle_solve_nonlinear(const NonlinearSystem& system,
                                                                  const EnumerationCaps& caps) {
    if (caps.r != system.r()) throw ContractError("caps.r must equal the system's r");
    const detail::CandidateTable table(caps);
    const std::size_t n = system.n();

    auto satisfied = [&](const NonlinearEquation& eq, const std::vector<std::size_t>& idx) {
        ExtNat best = kInfinity;
        std::size_t hits = 0;
        for (const auto& m : eq.monomials()) {
            ExtNat v(m.coeff);
            for (const auto& s : m.factors) v += table.vals[idx[s.var]][s.order];
            if (v < best) {
                best = v;
                hits = 1;
            } else if (v == best) {
                ++hits;
            }
        }
        return best.is_infinite() || hits >= 2;
    };

    std::optional<std::vector<Support>> found;
    detail::for_each_tuple(n, table.supports.size(), caps.budget, [&](const std::vector<std::size_t>& idx) {
        for (const auto& eq : system.equations()) {
            if (!satisfied(eq, idx)) return true;
        }
        std::vector<Support> sol;
        for (auto i : idx) sol.push_back(table.supports[i]);
        found = std::move(sol);
        return false;
    });
    return found;
}

inline std::optional<std::vector<Support>> oracle_solve_nonlinear(const NonlinearSystem& system) {
    return oracle_solve_nonlinear(system, default_caps(system));
}

}  // namespace tropde
