#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tropde/linear.hpp"

namespace tropde {

/// coeff + sum of x_slot over a multiset of slots. No factors means a free
/// term.
struct Monomial {
    std::uint64_t coeff = 0;
    std::vector<Slot> factors;  // sorted, may repeat

    Monomial() = default;
    Monomial(std::uint64_t c, std::vector<Slot> f) : coeff(c), factors(std::move(f)) {
        std::sort(factors.begin(), factors.end());
    }

    std::size_t degree() const noexcept { return factors.size(); }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Monomials with identical factor multisets are merged by minimum
/// coefficient; "attained twice" then counts distinct multisets.
class NonlinearEquation {
public:
    NonlinearEquation() = default;

    explicit NonlinearEquation(std::vector<Monomial> monomials) {
        std::sort(monomials.begin(), monomials.end(), [](const Monomial& a, const Monomial& b) {
            return a.factors != b.factors ? a.factors < b.factors : a.coeff < b.coeff;
        });
        for (auto& m : monomials) {
            if (monomials_.empty() || monomials_.back().factors != m.factors) monomials_.push_back(std::move(m));
        }
    }

    const std::vector<Monomial>& monomials() const noexcept { return monomials_; }

    friend bool operator==(const NonlinearEquation&, const NonlinearEquation&) = default;

private:
    std::vector<Monomial> monomials_;
};

class NonlinearSystem {
public:
    NonlinearSystem(std::size_t n, Order r, std::vector<NonlinearEquation> equations)
        : n_(n), r_(r), equations_(std::move(equations)) {
        for (const auto& eq : equations_) {
            for (const auto& m : eq.monomials()) {
                for (const auto& s : m.factors) {
                    if (s.var >= n_ || s.order > r_) {
                        throw ContractError("slot x" + std::to_string(s.var + 1) + "^" + std::to_string(s.order) +
                                            " outside n=" + std::to_string(n_) + " r=" + std::to_string(r_));
                    }
                }
                degree_ = std::max(degree_, m.degree());
                max_coeff_ = std::max(max_coeff_, m.coeff);
            }
        }
    }

    std::size_t n() const noexcept { return n_; }
    Order r() const noexcept { return r_; }
    std::size_t k() const noexcept { return equations_.size(); }
    std::size_t d() const noexcept { return degree_; }
    std::uint64_t M() const noexcept { return max_coeff_; }
    const std::vector<NonlinearEquation>& equations() const noexcept { return equations_; }

    friend bool operator==(const NonlinearSystem&, const NonlinearSystem&) = default;

private:
    std::size_t n_;
    Order r_;
    std::vector<NonlinearEquation> equations_;
    std::size_t degree_ = 0;
    std::uint64_t max_coeff_ = 0;
};

inline ExtNat monomial_value(const Monomial& m, std::span<const Support> supports) {
    ExtNat v(m.coeff);
    for (const auto& s : m.factors) {
        if (s.var >= supports.size()) throw ContractError("support family does not cover monomial");
        v += valuation(supports[s.var], s.order);
        if (v.is_infinite()) break;
    }
    return v;
}

/// Minimum over monomial values is infinite or attained by two distinct
/// monomials.
inline bool equation_satisfied_nl(const NonlinearEquation& eq, std::span<const Support> supports) {
    ExtNat best = kInfinity;
    std::size_t hits = 0;
    for (const auto& m : eq.monomials()) {
        const ExtNat v = monomial_value(m, supports);
        if (v < best) {
            best = v;
            hits = 1;
        } else if (v == best) {
            ++hits;
        }
    }
    return best.is_infinite() || hits >= 2;
}

inline bool is_solution_nl(const NonlinearSystem& system, std::span<const Support> supports) {
    if (supports.size() != system.n()) throw ContractError("expected one support per variable");
    return std::all_of(system.equations().begin(), system.equations().end(),
                       [&](const NonlinearEquation& eq) { return equation_satisfied_nl(eq, supports); });
}

/// n! * (M + r*d) * d^n: tail starts of some solution fit under this bound
/// whenever the system is solvable. Throws ResultTooLarge beyond 64 bits.
inline std::uint64_t bound_N1(std::uint64_t n, std::uint64_t r, std::uint64_t M, std::uint64_t d) {
    if (d < 1) throw ContractError("bound_N1 requires d >= 1");
    try {
        const std::uint64_t middle = checked::add(M, checked::mul(r, d));
        // Every factor is >= 1 once middle is nonzero, so partial products
        // are monotone and an intermediate overflow means the result overflows.
        if (middle == 0) return 0;
        std::uint64_t out = middle;
        for (std::uint64_t i = 2; i <= n; ++i) out = checked::mul(out, i);
        for (std::uint64_t i = 0; i < n; ++i) out = checked::mul(out, d);
        return out;
    } catch (const OverflowError&) {
        throw ResultTooLarge("N1 bound exceeds 64 bits");
    }
}

inline std::uint64_t bound_N1(const NonlinearSystem& system) {
    return bound_N1(system.n(), system.r(), system.M(), std::max<std::size_t>(system.d(), 1));
}

/// Checks a short certificate: finite parts inside [0, r], tail starts at
/// most tail_cap, and the supports solve the system.
inline bool verify_certificate(const NonlinearSystem& system, std::span<const Support> supports,
                               std::uint64_t tail_cap) {
    if (supports.size() != system.n()) return false;
    for (const auto& s : supports) {
        if (!s.finite_part().empty() && s.finite_part().back() > system.r()) return false;
        if (s.tail() && *s.tail() > tail_cap) return false;
    }
    return is_solution_nl(system, supports);
}

inline bool verify_certificate(const NonlinearSystem& system, std::span<const Support> supports) {
    return verify_certificate(system, supports, bound_N1(system));
}

/// Each slot term becomes a degree-1 monomial and a finite free term a
/// degree-0 monomial.
inline NonlinearSystem linear_to_nonlinear(const LinearSystem& system) {
    std::vector<NonlinearEquation> out;
    out.reserve(system.k());
    for (const auto& eq : system.equations()) {
        std::vector<Monomial> ms;
        for (const auto& t : eq.terms()) ms.emplace_back(t.coeff.value(), std::vector<Slot>{t.slot});
        if (eq.free_term().is_finite()) ms.emplace_back(eq.free_term().value(), std::vector<Slot>{});
        out.emplace_back(std::move(ms));
    }
    return NonlinearSystem(system.n(), system.r(), std::move(out));
}

}  // namespace tropde
