#pragma once

// Line-oriented text formats.
//
// System file:
//   TDE1 linear n=<n> r=<r>
//   <coef> x<i>^<j> ; <coef> x<i>^<j> ; free <coef>
//
//   TDE1 nonlinear n=<n> r=<r>
//   <coef>*x<i>^<j>*x<i>^<j> ; <coef>*x<i>^<j> ; free <coef>
//
// One equation per line, <coef> is a decimal or "inf", variables are
// 1-based, '#' starts a comment, blank lines are ignored. A bare <coef> in a
// nonlinear file is a free monomial. An equation with no finite term is
// written "free inf".
//
// Solution file, one line per variable:
//   x<i>: empty
//   x<i>: fin <e1> <e2> ... tail <m|none>

#include <cctype>
#include <charconv>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tropde/linear.hpp"
#include "tropde/nonlinear.hpp"

namespace tropde {

using AnySystem = std::variant<LinearSystem, NonlinearSystem>;

namespace detail {

class LineCursor {
public:
    LineCursor(std::string_view text, std::size_t line_no) : text_(text), line_(line_no) {}

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, pos_ + 1, what); }

    std::size_t column() const { return pos_ + 1; }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void skip_spaces() {
        while (!at_end() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    bool accept(std::string_view word) {
        if (text_.substr(pos_, word.size()) != word) return false;
        pos_ += word.size();
        return true;
    }

    void expect(std::string_view word) {
        if (!accept(word)) fail("expected '" + std::string(word) + "'");
    }

    std::uint64_t read_uint() {
        std::uint64_t v = 0;
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ptr == first) fail("expected a non-negative integer");
        if (ec == std::errc::result_out_of_range) fail("integer out of 64-bit range");
        pos_ += static_cast<std::size_t>(ptr - first);
        return v;
    }

    ExtNat read_coef() {
        if (accept("inf")) return kInfinity;
        return ExtNat(read_uint());
    }

    /// "x<i>^<j>" with range checks; i is converted to 0-based.
    Slot read_slot(std::size_t n, Order r) {
        expect("x");
        const std::size_t var_col = pos_;
        const std::uint64_t i = read_uint();
        if (i == 0 || i > n) {
            pos_ = var_col;
            fail("variable x" + std::to_string(i) + " outside 1.." + std::to_string(n));
        }
        expect("^");
        const std::size_t ord_col = pos_;
        const std::uint64_t j = read_uint();
        if (j > r) {
            pos_ = ord_col;
            fail("order " + std::to_string(j) + " > r=" + std::to_string(r));
        }
        return Slot{static_cast<std::size_t>(i - 1), static_cast<Order>(j)};
    }

private:
    std::string_view text_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

struct SourceLine {
    std::size_t number;
    std::string_view text;  // comment stripped
};

inline std::vector<SourceLine> content_lines(std::string_view text) {
    std::vector<SourceLine> out;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
        bool blank = true;
        for (char c : line) blank = blank && (c == ' ' || c == '\t');
        if (!blank) out.push_back({number, line});
        if (end == text.size()) break;
        start = end + 1;
    }
    return out;
}

}  // namespace detail

inline AnySystem parse_system_file(std::string_view text) {
    const auto lines = detail::content_lines(text);
    if (lines.empty()) throw ParseError(1, 1, "missing TDE1 header");

    detail::LineCursor head(lines[0].text, lines[0].number);
    head.skip_spaces();
    head.expect("TDE1");
    head.skip_spaces();
    bool linear = true;
    if (head.accept("linear")) {
        linear = true;
    } else if (head.accept("nonlinear")) {
        linear = false;
    } else {
        head.fail("expected 'linear' or 'nonlinear'");
    }
    head.skip_spaces();
    head.expect("n=");
    const auto n = static_cast<std::size_t>(head.read_uint());
    head.skip_spaces();
    head.expect("r=");
    const auto r = static_cast<Order>(head.read_uint());
    head.skip_spaces();
    if (!head.at_end()) head.fail("unexpected text after header");

    std::vector<LinearEquation> lin;
    std::vector<NonlinearEquation> nonlin;
    for (std::size_t idx = 1; idx < lines.size(); ++idx) {
        detail::LineCursor cur(lines[idx].text, lines[idx].number);
        std::vector<LinearTerm> terms;
        std::vector<Monomial> monomials;
        ExtNat free = kInfinity;
        while (true) {
            cur.skip_spaces();
            if (cur.accept("free")) {
                if (cur.peek() != ' ' && cur.peek() != '\t') cur.fail("expected a space after 'free'");
                cur.skip_spaces();
                free = min(free, cur.read_coef());
            } else if (linear) {
                const ExtNat c = cur.read_coef();
                if (cur.peek() != ' ' && cur.peek() != '\t') cur.fail("expected a space before the slot");
                cur.skip_spaces();
                terms.push_back({cur.read_slot(n, r), c});
            } else {
                const ExtNat c = cur.read_coef();
                std::vector<Slot> factors;
                while (cur.accept("*")) factors.push_back(cur.read_slot(n, r));
                if (c.is_finite()) {
                    if (factors.empty()) {
                        free = min(free, c);
                    } else {
                        monomials.emplace_back(c.value(), std::move(factors));
                    }
                }
            }
            cur.skip_spaces();
            if (cur.at_end()) break;
            cur.expect(";");
        }
        if (linear) {
            lin.emplace_back(std::move(terms), free);
        } else {
            if (free.is_finite()) monomials.emplace_back(free.value(), std::vector<Slot>{});
            nonlin.emplace_back(std::move(monomials));
        }
    }
    if (linear) return LinearSystem(n, r, std::move(lin));
    return NonlinearSystem(n, r, std::move(nonlin));
}

inline std::string slot_text(const Slot& s) {
    return "x" + std::to_string(s.var + 1) + "^" + std::to_string(s.order);
}

inline std::string serialize_equation(const LinearEquation& eq) {
    std::string out;
    for (const auto& t : eq.terms()) {
        if (!out.empty()) out += " ; ";
        out += t.coeff.to_string() + " " + slot_text(t.slot);
    }
    if (eq.free_term().is_finite() || out.empty()) {
        if (!out.empty()) out += " ; ";
        out += "free " + eq.free_term().to_string();
    }
    return out;
}

inline std::string serialize_equation(const NonlinearEquation& eq) {
    std::string out;
    const Monomial* free = nullptr;
    for (const auto& m : eq.monomials()) {
        if (m.factors.empty()) {
            free = &m;
            continue;
        }
        if (!out.empty()) out += " ; ";
        out += std::to_string(m.coeff);
        for (const auto& s : m.factors) out += "*" + slot_text(s);
    }
    if (free != nullptr || out.empty()) {
        if (!out.empty()) out += " ; ";
        out += "free " + (free != nullptr ? std::to_string(free->coeff) : std::string("inf"));
    }
    return out;
}

inline std::string serialize_system(const LinearSystem& s) {
    std::string out = "TDE1 linear n=" + std::to_string(s.n()) + " r=" + std::to_string(s.r()) + "\n";
    for (const auto& eq : s.equations()) out += serialize_equation(eq) + "\n";
    return out;
}

inline std::string serialize_system(const NonlinearSystem& s) {
    std::string out = "TDE1 nonlinear n=" + std::to_string(s.n()) + " r=" + std::to_string(s.r()) + "\n";
    for (const auto& eq : s.equations()) out += serialize_equation(eq) + "\n";
    return out;
}

inline std::string serialize_system(const AnySystem& s) {
    return std::visit([](const auto& x) { return serialize_system(x); }, s);
}

inline std::string write_solution_file(const std::vector<Support>& supports) {
    std::string out;
    for (std::size_t i = 0; i < supports.size(); ++i) {
        const auto& s = supports[i];
        out += "x" + std::to_string(i + 1) + ": ";
        if (s.is_empty()) {
            out += "empty\n";
            continue;
        }
        out += "fin";
        for (auto e : s.finite_part()) out += " " + std::to_string(e);
        out += " tail " + (s.tail() ? std::to_string(*s.tail()) : std::string("none")) + "\n";
    }
    return out;
}

inline std::vector<Support> parse_solution_file(std::string_view text) {
    std::map<std::size_t, Support> by_var;
    for (const auto& line : detail::content_lines(text)) {
        detail::LineCursor cur(line.text, line.number);
        cur.skip_spaces();
        cur.expect("x");
        const std::size_t var_col = cur.column();
        const std::uint64_t i = cur.read_uint();
        if (i == 0) throw ParseError(line.number, var_col, "variables are numbered from 1");
        cur.expect(":");
        cur.skip_spaces();
        Support s;
        if (cur.accept("empty")) {
            s = Support::empty();
        } else {
            cur.expect("fin");
            std::vector<std::uint64_t> fin;
            std::optional<std::uint64_t> tail;
            while (true) {
                cur.skip_spaces();
                if (cur.accept("tail")) break;
                fin.push_back(cur.read_uint());
            }
            cur.skip_spaces();
            if (!cur.accept("none")) tail = cur.read_uint();
            s = Support(std::move(fin), tail);
        }
        cur.skip_spaces();
        if (!cur.at_end()) cur.fail("unexpected text after support");
        if (!by_var.emplace(static_cast<std::size_t>(i), std::move(s)).second) {
            throw ParseError(line.number, var_col, "duplicate variable x" + std::to_string(i));
        }
    }
    std::vector<Support> out;
    for (auto& [i, s] : by_var) {
        if (i != out.size() + 1) throw ParseError(1, 1, "missing variable x" + std::to_string(out.size() + 1));
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace tropde
