#include <catch_amalgamated.hpp>

#include "test_helpers.hpp"

using namespace tropde;

namespace {

/// Single-variable equation as the list of (coeff, orders) pairs, free
/// monomials having no orders.
std::vector<std::pair<std::uint64_t, std::vector<Order>>> shape(const NonlinearEquation& eq) {
    std::vector<std::pair<std::uint64_t, std::vector<Order>>> out;
    for (const auto& m : eq.monomials()) {
        std::vector<Order> orders;
        for (const auto& s : m.factors) orders.push_back(s.order);
        out.emplace_back(m.coeff, orders);
    }
    return out;
}

using Shape = std::vector<std::pair<std::uint64_t, std::vector<Order>>>;

}  // namespace

TEST_CASE("parse_dimacs", "[sat]") {
    const auto a = parse_dimacs("p cnf 3 1\n1 -2 3 0\n");
    CHECK(a.num_vars == 3);
    REQUIRE(a.clauses.size() == 1);
    CHECK(a.clauses[0] == Clause{{0, true}, {1, false}, {2, true}});

    const auto b = parse_dimacs("c comment\np cnf 1 2\n1 0\n-1 0\n");
    CHECK(b.clauses.size() == 2);
    CHECK_FALSE(brute_force_sat(b));

    // Clauses may span lines.
    CHECK(parse_dimacs("p cnf 2 1\n1\n-2 0\n").clauses[0].size() == 2);

    auto kind_of = [](const char* text) {
        try {
            parse_dimacs(text);
        } catch (const DimacsError& e) {
            return e.kind();
        }
        FAIL("no error");
        return DimacsError::Kind::BadToken;
    };
    CHECK(kind_of("p cnf 2 1\n1 -2 1 2 0\n") == DimacsError::Kind::ClauseTooLong);
    CHECK(kind_of("1 2 0\n") == DimacsError::Kind::MalformedHeader);
    CHECK(kind_of("p cnf x 1\n1 0\n") == DimacsError::Kind::MalformedHeader);
    CHECK(kind_of("p cnf 2 2\n1 0\n") == DimacsError::Kind::MalformedHeader);
    CHECK(kind_of("p cnf 2 1\n3 0\n") == DimacsError::Kind::IndexOutOfRange);
    CHECK(kind_of("p cnf 2 1\n0\n") == DimacsError::Kind::EmptyClause);
    CHECK(kind_of("p cnf 2 1\n1 a 0\n") == DimacsError::Kind::BadToken);
}

TEST_CASE("write_dimacs round trips", "[sat]") {
    const char* text = "p cnf 3 2\n1 -2 3 0\n-1 0\n";
    CHECK(write_dimacs(parse_dimacs(text)) == text);
}

TEST_CASE("reduce_3sat builds the three equation families", "[sat]") {
    CnfFormula cnf{3, {{{0, false}, {1, true}, {2, false}}}};
    const auto sys = reduce_3sat(cnf);
    CHECK(sys.n() == 1);
    CHECK(sys.r() == 11);
    CHECK(sys.M() == 1);
    CHECK(sys.d() == 2);
    REQUIRE(sys.k() == 3 * 3 + 1);

    for (Order j = 0; j < 6; ++j) CHECK(shape(sys.equations()[j]) == Shape{{0, {}}, {0, {2 * j + 1}}});
    CHECK(shape(sys.equations()[7]) == Shape{{1, {}}, {0, {2, 8}}});
    // not y0 -> x^(6), y1 -> x^(2), not y2 -> x^(10)
    CHECK(shape(sys.equations()[9]) == Shape{{0, {}}, {0, {2}}, {0, {6}}, {0, {10}}});

    CHECK(reduce_3sat(CnfFormula{}).k() == 0);
}

TEST_CASE("assignment_to_support and back", "[sat]") {
    CnfFormula one{1, {}};
    CHECK(assignment_to_support(one, {true}) == Support({0, 1, 3}, std::nullopt));
    CHECK(assignment_to_support(one, {false}) == Support({1, 2, 3}, std::nullopt));
    CnfFormula two{2, {}};
    CHECK(assignment_to_support(two, {true, false}) == Support({0, 1, 3, 5, 6, 7}, std::nullopt));

    CHECK(support_to_assignment(Support({0, 1, 3}, std::nullopt), 1) == Assignment{true});
    CHECK(support_to_assignment(Support({1, 2, 3}, std::nullopt), 1) == Assignment{false});
    CHECK_THROWS_AS(support_to_assignment(Support({0, 3}, std::nullopt), 1), InvalidWitness);
    CHECK_THROWS_AS(support_to_assignment(Support({0, 1, 2, 3}, std::nullopt), 1), InvalidWitness);

    for (std::size_t n = 0; n <= 4; ++n) {
        CnfFormula f{n, {}};
        for (std::uint64_t mask = 0; mask < (1U << n); ++mask) {
            Assignment a(n);
            for (std::size_t j = 0; j < n; ++j) a[j] = mask >> j & 1U;
            const auto s = assignment_to_support(f, a);
            CHECK(support_to_assignment(s, n) == a);
            CHECK(is_solution_nl(reduce_3sat(f), std::vector<Support>{s}));
        }
    }
}

TEST_CASE("brute_force_sat", "[sat]") {
    CHECK_FALSE(brute_force_sat(CnfFormula{1, {{{0, true}}, {{0, false}}}}));
    CHECK(brute_force_sat(CnfFormula{3, {{{0, true}, {1, false}, {2, true}}}}) == Assignment{false, false, false});
    CHECK(brute_force_sat(CnfFormula{2, {}}) == Assignment{false, false});
    // (y0 or y1) and not y1: first model in order is (true, false).
    CHECK(brute_force_sat(CnfFormula{2, {{{0, true}, {1, true}}, {{1, false}}}}) == Assignment{true, false});
    CHECK_THROWS_AS(brute_force_sat(CnfFormula{25, {}}), TooManyVariables);
}

TEST_CASE("reduction witnesses on random formulas", "[sat][property]") {
    std::mt19937_64 rng(5150);
    for (int iter = 0; iter < 200; ++iter) {
        CnfFormula cnf;
        cnf.num_vars = 1 + rng() % 3;
        for (int c = 0, count = static_cast<int>(rng() % 5); c < count; ++c) {
            Clause cl;
            for (int l = 0, len = 1 + static_cast<int>(rng() % 3); l < len; ++l) {
                cl.push_back({rng() % cnf.num_vars, rng() % 2 == 0});
            }
            cnf.clauses.push_back(cl);
        }
        const auto sys = reduce_3sat(cnf);
        CHECK(sys.k() == 3 * cnf.num_vars + cnf.clauses.size());
        const auto model = brute_force_sat(cnf);
        if (model) CHECK(is_solution_nl(sys, std::vector<Support>{assignment_to_support(cnf, *model)}));

        const auto found = oracle_solve_nonlinear(sys);
        CHECK(found.has_value() == model.has_value());
        if (found) {
            CHECK(satisfies(cnf, support_to_assignment((*found)[0], cnf.num_vars)));
            CHECK(verify_certificate(sys, *found));
        }
    }
}
