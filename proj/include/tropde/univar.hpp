#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "tropde/solve.hpp"

namespace tropde {

/// Per-jump bookkeeping: the tail start s0, every violated equation's p_l,
/// and the equation l0 attaining p = max p_l.
struct JumpComputation {
    std::uint64_t tail_start = 0;
    std::vector<std::pair<std::size_t, ExtNat>> p_per_equation;
    ExtNat p;
    std::size_t chosen_equation = 0;
};

namespace detail {

/// Largest p with pivot + p <= c for every competitor c, i.e. min(c - pivot).
/// Competitors are finite terms witnessed by a finite-part element and the
/// free term. Terms witnessed by the tail move together with the pivot and
/// never compete.
template <class ValueOf, class TailWitnessed>
ExtNat jump_length_impl(const LinearEquation& eq, const ExtNat& pivot, ValueOf&& value_of,
                        TailWitnessed&& tail_witnessed) {
    ExtNat best = kInfinity;
    auto consider = [&](const ExtNat& c) {
        if (c.is_infinite()) return;
        if (c <= pivot) throw ContractError("jump pivot is not the unique minimum");
        best = min(best, ExtNat(c.value() - pivot.value()));
    };
    for (const auto& t : eq.terms()) {
        if (tail_witnessed(t.slot)) continue;
        consider(t.coeff + value_of(t.slot));
    }
    consider(eq.free_term());
    return best;
}

}  // namespace detail

/// Jump length p_l for an equation violated by T at a slot whose valuation
/// witness is the tail start s0. Returns infinity when nothing can ever tie
/// with the pivot term.
inline ExtNat jump_length(const LinearEquation& eq, const Support& t, std::uint64_t s0) {
    for (const auto& term : eq.terms()) {
        if (term.slot.var != 0) throw ContractError("jump_length is defined for one variable");
    }
    const Support one[] = {t};
    const auto status = equation_status(eq, one);
    const auto* at = std::get_if<ViolatedAtSlot>(&status);
    if (at == nullptr || !t.tail() || *t.tail() != s0 || t.least_member_at_least(at->slot.order) != s0 ||
        at->slot.order > s0) {
        throw ContractError("jump_length requires a unique minimum witnessed by the tail start");
    }
    auto finite_witness = [&](Order j) {
        const auto& f = t.finite_part();
        return std::lower_bound(f.begin(), f.end(), j) != f.end();
    };
    return detail::jump_length_impl(
        eq, at->value, [&](const Slot& s) { return valuation(t, s.order); },
        [&](const Slot& s) { return !finite_witness(s.order); });
}

/// Minimal solution of a one-variable system using finite-type steps and
/// jumps.
///
/// Finite-type steps (discarding a violating element below r) are preferred.
/// When only the tail start s0 is a violating witness, the tail moves to
/// s0 + p in one step, p the largest jump length among violated equations;
/// p = inf removes the tail. The result and outcome match solve_minimal, in
/// at most 2r+2 steps.
inline SolveReport solve_univar(const LinearSystem& system, bool record_trace = true,
                                std::vector<JumpComputation>* jumps_out = nullptr) {
    if (system.n() != 1) throw ContractError("solve_univar requires exactly one variable");
    const std::uint64_t r = system.r();
    const std::uint64_t M = system.M();
    // s0 + p stays below 2r+M for slot competitors and at most M+r for the
    // free term.
    const std::uint64_t tail_limit = std::max(checked::add(checked::mul(2, r), M), checked::add(checked::add(M, r), 1));
    const std::uint64_t max_steps = checked::add(checked::mul(2, r), 2);

    SolveReport report;
    detail::DiscardState state(system);
    using Kind = detail::DiscardState::Kind;

    while (!state.all_satisfied()) {
        if (!state.violated_at_free().empty()) {
            report.outcome = Unsolvable{*state.violated_at_free().begin()};
            return report;
        }
        if (!state.violated_at_finite().empty()) {
            const std::size_t l = *state.violated_at_finite().begin();
            const std::uint64_t s = state.status(l).witness;
            state.discard_finite(0, s);
            detail::record(report, record_trace, {StepKind::FiniteDiscard, 0, l, s, ExtNat(s), {}});
        } else {
            const std::uint64_t s0 = *state.tail(0);
            JumpComputation jc;
            jc.tail_start = s0;
            jc.p = ExtNat(0);
            for (auto l : state.violated_at_tail()) {
                const auto& st = state.status(l);
                if (st.kind != Kind::AtTail || st.witness != s0) {
                    throw InternalBoundViolation("tail-violated equation not witnessed by the tail start");
                }
                const ExtNat p = detail::jump_length_impl(
                    system.equation(l), st.value, [&](const Slot& s) { return state.val(s); },
                    [&](const Slot& s) { return state.tail_witnessed(s); });
                if (p < ExtNat(1)) throw InternalBoundViolation("jump length below 1");
                jc.p_per_equation.emplace_back(l, p);
                if (p > jc.p) {
                    jc.p = p;
                    jc.chosen_equation = l;
                }
            }
            if (jc.p.is_infinite()) {
                state.set_tail(0, std::nullopt);
                detail::record(report, record_trace, {StepKind::TailDrop, 0, jc.chosen_equation, s0, kInfinity, {}});
            } else {
                const std::uint64_t p = jc.p.value();
                const std::uint64_t next = checked::add(s0, p);
                if (next >= tail_limit) {
                    throw InternalBoundViolation("jump moved the tail start to " + std::to_string(next) +
                                                 ", beyond the bound " + std::to_string(tail_limit - 1));
                }
                state.set_tail(0, next);
                detail::record(report, record_trace,
                               {StepKind::Jump, 0, jc.chosen_equation, s0, ExtNat(next - 1), jc.p});
            }
            if (jumps_out != nullptr) jumps_out->push_back(std::move(jc));
        }
        if (report.discard_count > max_steps) {
            throw InternalBoundViolation("one-variable solver exceeded 2r+2 steps");
        }
    }
    report.outcome = detail::make_solvable(state.supports());
    return report;
}

}  // namespace tropde
