#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "tropde/detail/discard_state.hpp"
#include "tropde/linear.hpp"

namespace tropde {

enum class StepKind { FiniteDiscard, TailAdvance, TailDrop, Jump };

inline const char* to_string(StepKind k) {
    switch (k) {
        case StepKind::FiniteDiscard: return "finite-discard";
        case StepKind::TailAdvance: return "tail-advance";
        case StepKind::TailDrop: return "tail-drop";
        case StepKind::Jump: return "jump";
    }
    return "?";
}

/// One discard step. The discarded elements are [first, last]; `last` is
/// infinity for TailDrop. `jump_p` is set iff kind == Jump.
struct StepRecord {
    StepKind kind{};
    std::size_t variable = 0;
    std::size_t equation = 0;
    std::uint64_t first = 0;
    ExtNat last;
    std::optional<ExtNat> jump_p;

    friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct Solvable {
    std::vector<Support> supports;
    /// Every support is empty: only the infinite solution exists.
    bool only_infinite = false;
};

struct Unsolvable {
    /// Equation whose free term is the unique finite minimum.
    std::size_t equation = 0;
};

struct SolveReport {
    std::variant<Solvable, Unsolvable> outcome;
    std::vector<StepRecord> steps;  // empty when tracing is off
    std::size_t discard_count = 0;
    std::size_t finite_steps = 0;
    std::size_t jumps = 0;
    std::uint64_t max_p = 0;
    /// Tail cap in effect (general solver only).
    std::optional<std::uint64_t> cap;

    bool solvable() const { return std::holds_alternative<Solvable>(outcome); }
    const std::vector<Support>& supports() const { return std::get<Solvable>(outcome).supports; }
};

enum class BoundChoice { Paper, Safe };

struct SolveOptions {
    BoundChoice bound = BoundChoice::Safe;
    bool record_trace = true;
};

namespace detail {

inline void record(SolveReport& report, bool trace, StepRecord step) {
    ++report.discard_count;
    if (step.kind == StepKind::FiniteDiscard) ++report.finite_steps;
    if (step.kind == StepKind::Jump) {
        ++report.jumps;
        report.max_p = std::max(report.max_p, step.jump_p->value());
    }
    if (trace) report.steps.push_back(step);
}

inline Solvable make_solvable(std::vector<Support> supports) {
    const bool none = std::all_of(supports.begin(), supports.end(), [](const Support& s) { return s.is_empty(); });
    return Solvable{std::move(supports), none};
}

}  // namespace detail

/// Minimal solution of a tropical linear differential system, or proof of
/// unsolvability.
///
/// Starts from T_i = {0..N} for every variable (finite part {0..r-1}, tail r
/// capped at N) and repeatedly takes the violated equation of least index. A
/// unique minimum at the free term means no solution exists. A unique minimum
/// at slot (i, j) means the least member s >= j of T_i can belong to no
/// solution, so s is discarded; discarding the tail start N drops the tail.
/// Each discard keeps every solution inside T, so the first T that solves the
/// system is the minimal solution.
inline SolveReport solve_minimal(const LinearSystem& system, SolveOptions options = {}) {
    const std::uint64_t cap = options.bound == BoundChoice::Safe ? bound_safe(system.n(), system.r(), system.M())
                                                                 : bound_paper(system.n(), system.r(), system.M());
    SolveReport report;
    report.cap = cap;
    detail::DiscardState state(system);
    const std::uint64_t max_steps = checked::mul(system.n(), checked::add(cap, 1));

    while (auto l = state.first_violated()) {
        const auto& st = state.status(*l);
        using Kind = detail::DiscardState::Kind;
        if (st.kind == Kind::AtFree) {
            report.outcome = Unsolvable{*l};
            return report;
        }
        const std::size_t var = st.slot.var;
        const std::uint64_t s = st.witness;
        if (st.kind == Kind::AtFinite) {
            state.discard_finite(var, s);
            detail::record(report, options.record_trace, {StepKind::FiniteDiscard, var, *l, s, ExtNat(s), {}});
        } else if (s < cap) {
            state.set_tail(var, s + 1);
            detail::record(report, options.record_trace, {StepKind::TailAdvance, var, *l, s, ExtNat(s), {}});
        } else {
            state.set_tail(var, std::nullopt);
            detail::record(report, options.record_trace, {StepKind::TailDrop, var, *l, s, kInfinity, {}});
        }
        if (report.discard_count > max_steps) {
            throw InternalBoundViolation("general solver exceeded n(N+1) discard steps");
        }
    }
    report.outcome = detail::make_solvable(state.supports());
    return report;
}

}  // namespace tropde
