#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <vector>

#include "tropde/linear.hpp"

namespace tropde::detail {

/// Mutable solver state: one canonical support per variable (finite part
/// inside {0..r-1}, optional tail >= r) with cached per-equation status.
///
/// Every mutation only raises valuations. The slots sharing a witness move
/// together, so an equation can change status only when a witness attaining
/// its minimum moves. Each equation is registered with those witnesses and
/// re-evaluated when one of them is discarded or advanced. The three violated
/// sets partition the violated equations by who attains the unique minimum.
class DiscardState {
public:
    enum class Kind : std::uint8_t { Satisfied, AtFinite, AtTail, AtFree };

    struct Status {
        Kind kind = Kind::Satisfied;
        Slot slot{};
        ExtNat value = kInfinity;
        std::uint64_t witness = 0;  // least member >= slot.order
    };

    explicit DiscardState(const LinearSystem& system)
        : system_(system),
          n_(system.n()),
          r_(system.r()),
          width_(system.r() + 1),
          member_(n_ * r_, 1),
          next_(n_ * width_),
          tail_(n_, system.r()),
          watchers_(n_ * width_),
          status_(system.k()),
          slack_(system.k(), kInfinity),
          version_(system.k(), 0),
          stamp_(system.k(), 0) {
        for (std::size_t i = 0; i < n_ * width_; ++i) next_[i] = i % width_;
        for (std::size_t l = 0; l < system.k(); ++l) reevaluate(l);
    }

    const LinearSystem& system() const noexcept { return system_; }
    const Status& status(std::size_t l) const { return status_[l]; }

    const std::set<std::size_t>& violated_at_free() const noexcept { return at_free_; }
    const std::set<std::size_t>& violated_at_finite() const noexcept { return at_finite_; }
    const std::set<std::size_t>& violated_at_tail() const noexcept { return at_tail_; }

    bool all_satisfied() const noexcept { return at_free_.empty() && at_finite_.empty() && at_tail_.empty(); }

    std::optional<std::size_t> first_violated() const {
        std::optional<std::size_t> best;
        for (const auto* s : {&at_free_, &at_finite_, &at_tail_}) {
            if (!s->empty() && (!best || *s->begin() < *best)) best = *s->begin();
        }
        return best;
    }

    ExtNat val(const Slot& s) const {
        const std::uint64_t w = find(s.var, s.order);
        if (w < r_) return ExtNat(w - s.order);
        return tail_[s.var] ? ExtNat(*tail_[s.var] - s.order) : kInfinity;
    }

    bool tail_witnessed(const Slot& s) const { return find(s.var, s.order) == r_ && tail_[s.var].has_value(); }

    const std::optional<std::uint64_t>& tail(std::size_t var) const { return tail_[var]; }

    void discard_finite(std::size_t var, std::uint64_t s) {
        if (s >= r_ || !member_[var * r_ + s]) throw ContractError("discard of a non-member");
        member_[var * r_ + s] = 0;
        next_[var * width_ + s] = s + 1;
        const std::uint64_t after = find(var, s + 1);
        if (after < r_) {
            notify(var * width_ + s, var * width_ + after, ExtNat(after - s));
        } else {
            notify(var * width_ + s, var * width_ + r_, tail_[var] ? ExtNat(*tail_[var] - s) : kInfinity);
        }
    }

    void set_tail(std::size_t var, std::optional<std::uint64_t> tail) {
        if (tail && *tail < r_) throw ContractError("tail start below r");
        if (tail && (!tail_[var] || *tail < *tail_[var])) throw ContractError("the tail may only move up");
        const ExtNat shift = tail ? ExtNat(*tail - *tail_[var]) : kInfinity;
        tail_[var] = tail;
        if (shift != ExtNat(0)) notify(var * width_ + r_, var * width_ + r_, shift);
    }

    Support support(std::size_t var) const {
        std::vector<std::uint64_t> fin;
        for (Order x = 0; x < r_; ++x) {
            if (member_[var * r_ + x]) fin.push_back(x);
        }
        return Support(std::move(fin), tail_[var]);
    }

    std::vector<Support> supports() const {
        std::vector<Support> out;
        out.reserve(n_);
        for (std::size_t i = 0; i < n_; ++i) out.push_back(support(i));
        return out;
    }

private:
    struct Watch {
        std::size_t equation;
        std::uint64_t version;
    };

    // Least finite member >= j of variable var, or r when there is none.
    // Union-find over "next" links with path halving.
    std::uint64_t find(std::size_t var, std::uint64_t j) const {
        auto* link = next_.data() + var * width_;
        while (link[j] != j) {
            link[j] = link[link[j]];
            j = link[j];
        }
        return j;
    }

    // The group of slots witnessed by `key` moved up by `shift` and is now
    // witnessed by `moved_to`. A violated equation whose unique minimum lies
    // in the group stays violated at the same term while the shift is below
    // its slack, since no other term can have dropped.
    void notify(std::size_t key, std::size_t moved_to, ExtNat shift) {
        auto pending = std::move(watchers_[key]);
        watchers_[key].clear();
        ++epoch_;
        for (const auto& w : pending) {
            const std::size_t l = w.equation;
            if (w.version != version_[l] || stamp_[l] == epoch_) continue;
            stamp_[l] = epoch_;
            auto& st = status_[l];
            if ((st.kind == Kind::AtFinite || st.kind == Kind::AtTail) && shift < slack_[l]) {
                if (slack_[l].is_finite()) slack_[l] = ExtNat(slack_[l].value() - shift.value());
                st.value = st.value + shift;
                const std::uint64_t w_new = moved_to % width_;
                const Kind kind = w_new < r_ ? Kind::AtFinite : Kind::AtTail;
                st.witness = w_new < r_ ? w_new : *tail_[st.slot.var];
                set_kind(l, st.kind, kind);
                st.kind = kind;
                watchers_[moved_to].push_back(w);
            } else {
                reevaluate(l);
            }
        }
    }

    void reevaluate(std::size_t l) {
        const auto& eq = system_.equation(l);
        ExtNat best = eq.free_term();
        std::size_t hits = best.is_finite() ? 1 : 0;
        ExtNat second = kInfinity;
        const LinearTerm* arg = nullptr;
        std::uint64_t arg_witness = 0;
        // (term value, witness key) of each finite term, for registration.
        scratch_.clear();
        for (const auto& t : eq.terms()) {
            const std::uint64_t w = find(t.slot.var, t.slot.order);
            ExtNat v = kInfinity;
            if (w < r_) {
                v = t.coeff + ExtNat(w - t.slot.order);
            } else if (tail_[t.slot.var]) {
                v = t.coeff + ExtNat(*tail_[t.slot.var] - t.slot.order);
            }
            if (v.is_infinite()) continue;
            scratch_.emplace_back(v, t.slot.var * width_ + w);
            if (v < best) {
                second = best;
                best = v;
                hits = 1;
                arg = &t;
                arg_witness = w;
            } else if (v == best) {
                ++hits;
            } else {
                second = min(second, v);
            }
        }
        slack_[l] = second.is_finite() ? ExtNat(second.value() - best.value()) : kInfinity;
        const std::uint64_t version = ++version_[l];
        for (const auto& [v, key] : scratch_) {
            if (v == best) watchers_[key].push_back({l, version});
        }

        Status st;
        if (best.is_finite() && hits == 1) {
            st.value = best;
            if (arg == nullptr) {
                st.kind = Kind::AtFree;
            } else {
                st.slot = arg->slot;
                if (arg_witness < r_) {
                    st.kind = Kind::AtFinite;
                    st.witness = arg_witness;
                } else {
                    st.kind = Kind::AtTail;
                    st.witness = *tail_[arg->slot.var];
                }
            }
        }
        set_kind(l, status_[l].kind, st.kind);
        status_[l] = st;
    }

    std::set<std::size_t>* bucket(Kind k) {
        switch (k) {
            case Kind::AtFree: return &at_free_;
            case Kind::AtFinite: return &at_finite_;
            case Kind::AtTail: return &at_tail_;
            case Kind::Satisfied: break;
        }
        return nullptr;
    }

    void set_kind(std::size_t l, Kind before, Kind after) {
        if (before == after) return;
        if (auto* b = bucket(before)) b->erase(l);
        if (auto* a = bucket(after)) a->insert(l);
    }

    const LinearSystem& system_;
    std::size_t n_;
    std::uint64_t r_;
    std::size_t width_;                       // r + 1
    std::vector<char> member_;                // n * r finite membership
    mutable std::vector<std::uint64_t> next_; // union-find links, r meaning "no finite member"
    std::vector<std::optional<std::uint64_t>> tail_;
    std::vector<std::vector<Watch>> watchers_;  // per witness key: equations whose minimum it attains
    std::vector<Status> status_;
    std::vector<ExtNat> slack_;  // second-least term value minus the least
    std::vector<std::uint64_t> version_;
    std::vector<std::uint64_t> stamp_;
    std::uint64_t epoch_ = 0;
    std::vector<std::pair<ExtNat, std::size_t>> scratch_;
    std::set<std::size_t> at_free_, at_finite_, at_tail_;
};

}  // namespace tropde::detail
