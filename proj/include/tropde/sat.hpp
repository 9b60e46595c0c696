#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tropde/nonlinear.hpp"

namespace tropde {

struct Literal {
    std::size_t var = 0;  // y_var, 0-based
    bool positive = true;

    friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

struct CnfFormula {
    std::size_t num_vars = 0;
    std::vector<Clause> clauses;

    friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

using Assignment = std::vector<bool>;

inline bool satisfies(const CnfFormula& cnf, const Assignment& a) {
    for (const auto& c : cnf.clauses) {
        bool ok = false;
        for (const auto& lit : c) ok = ok || a.at(lit.var) == lit.positive;
        if (!ok) return false;
    }
    return true;
}

/// DIMACS CNF with clauses of one to three literals. DIMACS variable v is y_{v-1}.
inline CnfFormula parse_dimacs(std::string_view text) {
    using K = DimacsError::Kind;
    std::istringstream in{std::string(text)};
    std::string line;
    std::optional<std::size_t> declared_clauses;
    CnfFormula cnf;
    Clause current;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == 'c' || tok[0] == '%') continue;
        if (tok == "p") {
            std::string fmt;
            long long vars = -1;
            long long clauses = -1;
            std::string extra;
            if (declared_clauses || !(ls >> fmt >> vars >> clauses) || fmt != "cnf" || vars < 0 || clauses < 0 ||
                (ls >> extra)) {
                throw DimacsError(K::MalformedHeader, "malformed header: " + line);
            }
            cnf.num_vars = static_cast<std::size_t>(vars);
            declared_clauses = static_cast<std::size_t>(clauses);
            continue;
        }
        if (!declared_clauses) throw DimacsError(K::MalformedHeader, "clause before 'p cnf' header");
        ls.clear();
        ls.str(line);
        while (ls >> tok) {
            long long v = 0;
            std::size_t used = 0;
            try {
                v = std::stoll(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size()) throw DimacsError(K::BadToken, "not an integer literal: " + tok);
            if (v == 0) {
                if (current.empty()) throw DimacsError(K::EmptyClause, "empty clause");
                if (current.size() > 3) {
                    throw DimacsError(K::ClauseTooLong,
                                      "clause with " + std::to_string(current.size()) + " literals (max 3)");
                }
                cnf.clauses.push_back(std::move(current));
                current.clear();
                continue;
            }
            const auto mag = static_cast<std::size_t>(v < 0 ? -v : v);
            if (mag > cnf.num_vars) throw DimacsError(K::IndexOutOfRange, "variable " + tok + " out of range");
            current.push_back({mag - 1, v > 0});
        }
    }
    if (!declared_clauses) throw DimacsError(K::MalformedHeader, "missing 'p cnf' header");
    if (!current.empty()) {
        if (current.size() > 3) throw DimacsError(K::ClauseTooLong, "clause with more than 3 literals");
        cnf.clauses.push_back(std::move(current));
    }
    if (cnf.clauses.size() != *declared_clauses) {
        throw DimacsError(K::MalformedHeader, "header declares " + std::to_string(*declared_clauses) +
                                                  " clauses, found " + std::to_string(cnf.clauses.size()));
    }
    return cnf;
}

inline std::string write_dimacs(const CnfFormula& cnf) {
    std::string out = "p cnf " + std::to_string(cnf.num_vars) + " " + std::to_string(cnf.clauses.size()) + "\n";
    for (const auto& c : cnf.clauses) {
        for (const auto& lit : c) {
            out += (lit.positive ? "" : "-") + std::to_string(lit.var + 1) + " ";
        }
        out += "0\n";
    }
    return out;
}

/// Derivative order carrying literal y_j (2j) or its negation (2j + 2n).
inline Order literal_order(const Literal& lit, std::size_t num_vars) {
    return lit.positive ? 2 * lit.var : 2 * lit.var + 2 * num_vars;
}

/// One-variable system solvable iff the formula is satisfiable:
///   min{x^(2j+1), 0}            for 0 <= j < 2n   (odd orders in S, even valuations in {0,1})
///   min{x^(2j) + x^(2j+2n), 1}  for 0 <= j < n    (exactly one of y_j, not y_j has valuation 0)
///   min{literal terms..., 0}    per clause        (some literal has valuation 0)
/// With no variables the formula has no clauses and the result is empty, with r = 0.
inline NonlinearSystem reduce_3sat(const CnfFormula& cnf) {
    const std::size_t n = cnf.num_vars;
    const Order r = n == 0 ? 0 : 4 * n - 1;
    std::vector<NonlinearEquation> eqs;
    eqs.reserve(3 * n + cnf.clauses.size());
    for (std::size_t j = 0; j < 2 * n; ++j) {
        eqs.emplace_back(std::vector<Monomial>{Monomial(0, {Slot{0, 2 * j + 1}}), Monomial(0, {})});
    }
    for (std::size_t j = 0; j < n; ++j) {
        eqs.emplace_back(std::vector<Monomial>{Monomial(0, {Slot{0, 2 * j}, Slot{0, 2 * j + 2 * n}}), Monomial(1, {})});
    }
    for (const auto& c : cnf.clauses) {
        std::vector<Monomial> ms;
        for (const auto& lit : c) ms.emplace_back(0, std::vector<Slot>{Slot{0, literal_order(lit, n)}});
        ms.emplace_back(0, std::vector<Slot>{});
        eqs.emplace_back(std::move(ms));
    }
    return NonlinearSystem(1, r, std::move(eqs));
}

/// Odd integers 1..4n-1, plus 2j for true y_j and 2j+2n for false y_j.
inline Support assignment_to_support(const CnfFormula& cnf, const Assignment& a) {
    const std::size_t n = cnf.num_vars;
    if (a.size() != n) throw ContractError("assignment length differs from variable count");
    std::vector<std::uint64_t> members;
    for (std::size_t j = 0; j < 2 * n; ++j) members.push_back(2 * j + 1);
    for (std::size_t j = 0; j < n; ++j) members.push_back(a[j] ? 2 * j : 2 * j + 2 * n);
    return Support(std::move(members), std::nullopt);
}

/// y_j := (Val_S(2j) == 0). Throws InvalidWitness unless S satisfies the
/// odd-order and pairing equations of the reduction.
inline Assignment support_to_assignment(const Support& s, std::size_t num_vars) {
    const std::size_t n = num_vars;
    for (std::size_t j = 0; j < 2 * n; ++j) {
        if (valuation(s, 2 * j + 1) != ExtNat(0)) {
            throw InvalidWitness("valuation of order " + std::to_string(2 * j + 1) + " is not 0");
        }
    }
    Assignment a(n);
    for (std::size_t j = 0; j < n; ++j) {
        const ExtNat pos = valuation(s, 2 * j);
        if (pos + valuation(s, 2 * j + 2 * n) != ExtNat(1)) {
            throw InvalidWitness("orders " + std::to_string(2 * j) + " and " + std::to_string(2 * j + 2 * n) +
                                 " do not encode a truth value");
        }
        a[j] = pos == ExtNat(0);
    }
    return a;
}

/// Truth-table search in lexicographic order (false < true, y_0 most
/// significant). Refuses more than 24 variables.
inline std::optional<Assignment> brute_force_sat(const CnfFormula& cnf) {
    const std::size_t n = cnf.num_vars;
    if (n > 24) throw TooManyVariables("brute_force_sat supports at most 24 variables");
    Assignment a(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        for (std::size_t j = 0; j < n; ++j) a[j] = (mask >> (n - 1 - j)) & 1U;
        if (satisfies(cnf, a)) return a;
    }
    return std::nullopt;
}

}  // namespace tropde
