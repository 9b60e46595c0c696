#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "tropde/ext_nat.hpp"
#include "tropde/support.hpp"

namespace tropde {

/// Derivative slot x_var^(order). Variables are 0-based in the API; text
/// formats print them 1-based.
struct Slot {
    std::size_t var = 0;
    Order order = 0;

    friend auto operator<=>(const Slot&, const Slot&) = default;
};

struct LinearTerm {
    Slot slot;
    ExtNat coeff;

    friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};

/// min over slots of (coeff + x_slot), together with a free term.
///
/// At most one finite coefficient is kept per slot: duplicates merge by
/// minimum and infinite coefficients are dropped, since both forms denote the
/// same tropical polynomial. Terms are ordered by slot.
class LinearEquation {
public:
    LinearEquation() = default;

    explicit LinearEquation(std::vector<LinearTerm> terms, ExtNat free = kInfinity) : free_(free) {
        std::erase_if(terms, [](const LinearTerm& t) { return t.coeff.is_infinite(); });
        std::sort(terms.begin(), terms.end(), [](const LinearTerm& a, const LinearTerm& b) {
            return a.slot != b.slot ? a.slot < b.slot : a.coeff < b.coeff;
        });
        for (auto& t : terms) {
            if (terms_.empty() || terms_.back().slot != t.slot) terms_.push_back(t);
        }
    }

    const std::vector<LinearTerm>& terms() const noexcept { return terms_; }
    const ExtNat& free_term() const noexcept { return free_; }
    bool is_homogeneous() const noexcept { return free_.is_infinite(); }

    /// Coefficient on a slot, infinity when absent.
    ExtNat coeff(const Slot& slot) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), slot,
                                   [](const LinearTerm& t, const Slot& s) { return t.slot < s; });
        return it != terms_.end() && it->slot == slot ? it->coeff : kInfinity;
    }

    friend bool operator==(const LinearEquation&, const LinearEquation&) = default;

private:
    std::vector<LinearTerm> terms_;
    ExtNat free_ = kInfinity;
};

/// k tropical linear differential equations in n variables with derivative
/// orders up to r. M is derived from the stored coefficients.
class LinearSystem {
public:
    LinearSystem(std::size_t n, Order r, std::vector<LinearEquation> equations)
        : n_(n), r_(r), equations_(std::move(equations)) {
        for (const auto& eq : equations_) {
            for (const auto& t : eq.terms()) {
                if (t.slot.var >= n_ || t.slot.order > r_) {
                    throw ContractError("slot x" + std::to_string(t.slot.var + 1) + "^" +
                                        std::to_string(t.slot.order) + " outside n=" + std::to_string(n_) +
                                        " r=" + std::to_string(r_));
                }
                max_coeff_ = std::max(max_coeff_, t.coeff.value());
            }
            if (eq.free_term().is_finite()) max_coeff_ = std::max(max_coeff_, eq.free_term().value());
        }
    }

    std::size_t n() const noexcept { return n_; }
    Order r() const noexcept { return r_; }
    std::size_t k() const noexcept { return equations_.size(); }
    std::uint64_t M() const noexcept { return max_coeff_; }
    const std::vector<LinearEquation>& equations() const noexcept { return equations_; }
    const LinearEquation& equation(std::size_t l) const { return equations_.at(l); }

    bool is_homogeneous() const {
        return std::all_of(equations_.begin(), equations_.end(),
                           [](const LinearEquation& e) { return e.is_homogeneous(); });
    }

    friend bool operator==(const LinearSystem&, const LinearSystem&) = default;

private:
    std::size_t n_;
    Order r_;
    std::vector<LinearEquation> equations_;
    std::uint64_t max_coeff_ = 0;
};

// ---------------------------------------------------------------------------
// Solution criterion
// ---------------------------------------------------------------------------

struct Satisfied {
    friend bool operator==(const Satisfied&, const Satisfied&) = default;
};

/// Finite minimum attained only by the term on `slot`.
struct ViolatedAtSlot {
    Slot slot;
    ExtNat value;
    friend bool operator==(const ViolatedAtSlot&, const ViolatedAtSlot&) = default;
};

/// Finite minimum attained only by the free term.
struct ViolatedAtFree {
    ExtNat value;
    friend bool operator==(const ViolatedAtFree&, const ViolatedAtFree&) = default;
};

using EquationStatus = std::variant<Satisfied, ViolatedAtSlot, ViolatedAtFree>;

inline bool is_satisfied(const EquationStatus& s) { return std::holds_alternative<Satisfied>(s); }

/// Substitutes x_i^(j) := Val_{S_i}(j) and reports whether the minimum is
/// infinite or attained at least twice (the free term counts as one term).
inline EquationStatus equation_status(const LinearEquation& eq, std::span<const Support> supports) {
    ExtNat best = eq.free_term();
    std::size_t hits = best.is_finite() ? 1 : 0;
    const LinearTerm* arg = nullptr;
    for (const auto& t : eq.terms()) {
        if (t.slot.var >= supports.size()) throw ContractError("support family does not cover equation");
        ExtNat v = t.coeff + valuation(supports[t.slot.var], t.slot.order);
        if (v.is_infinite()) continue;
        if (v < best) {
            best = v;
            hits = 1;
            arg = &t;
        } else if (v == best) {
            ++hits;
        }
    }
    if (best.is_infinite() || hits >= 2) return Satisfied{};
    if (arg == nullptr) return ViolatedAtFree{best};
    return ViolatedAtSlot{arg->slot, best};
}

inline bool is_solution(const LinearSystem& system, std::span<const Support> supports) {
    if (supports.size() != system.n()) throw ContractError("expected one support per variable");
    return std::all_of(system.equations().begin(), system.equations().end(),
                       [&](const LinearEquation& eq) { return is_satisfied(equation_status(eq, supports)); });
}

// ---------------------------------------------------------------------------
// Bounds on the tail start of the minimal solution
// ---------------------------------------------------------------------------

/// (n-1)(M+r)+r. Too small in general: see bound_safe.
inline std::uint64_t bound_paper(std::uint64_t n, std::uint64_t r, std::uint64_t M) {
    const std::uint64_t path = n == 0 ? 0 : n - 1;
    return checked::add(checked::mul(path, checked::add(M, r)), r);
}

/// 2n(M+r)+r. Default cap for the tail start in solve_minimal.
///
/// The instance min{1+x, 0+x', 2} (n=1, r=1) has minimal solution {0} u [2,inf),
/// whose tail start 2 exceeds bound_paper(1,1,2) = 1. This bound allows a
/// path of length 2n through the 2n+1 vertex constraint graph, each edge
/// raising a valuation by at most M+r.
inline std::uint64_t bound_safe(std::uint64_t n, std::uint64_t r, std::uint64_t M) {
    return checked::add(checked::mul(checked::mul(2, n), checked::add(M, r)), r);
}

// ---------------------------------------------------------------------------
// Tropical derivative
// ---------------------------------------------------------------------------

/// a + x^(j)  ->  min{a-1 + x^(j), a + x^(j+1)} for a >= 1, and x^(j+1) for a = 0,
/// extended to whole equations by linearity. Only homogeneous equations.
inline LinearEquation tropical_derivative(const LinearEquation& eq) {
    if (!eq.is_homogeneous()) throw NonHomogeneousDerivative();
    std::vector<LinearTerm> out;
    out.reserve(2 * eq.terms().size());
    for (const auto& t : eq.terms()) {
        const auto a = t.coeff.value();
        if (a >= 1) out.push_back({t.slot, ExtNat(a - 1)});
        out.push_back({Slot{t.slot.var, checked::add(t.slot.order, 1)}, t.coeff});
    }
    return LinearEquation(std::move(out));
}

}  // namespace tropde
