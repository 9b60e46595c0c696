#include <catch_amalgamated.hpp>

#include "test_helpers.hpp"

using namespace tropde;
using tropde::testing::tail_gap_example;

namespace {

const Slot x0{0, 0};
const Slot x1{0, 1};

ExtNat equation_min(const LinearEquation& eq, std::span<const Support> supports) {
    ExtNat best = eq.free_term();
    for (const auto& t : eq.terms()) best = min(best, t.coeff + valuation(supports[t.slot.var], t.slot.order));
    return best;
}

}  // namespace

TEST_CASE("LinearEquation merges duplicate slots by minimum", "[linear]") {
    LinearEquation eq({{x1, 4}, {x0, 3}, {x1, 2}, {x0, kInfinity}});
    REQUIRE(eq.terms().size() == 2);
    CHECK(eq.coeff(x0) == ExtNat(3));
    CHECK(eq.coeff(x1) == ExtNat(2));
    CHECK(eq.coeff(Slot{0, 5}) == kInfinity);
    CHECK(eq.is_homogeneous());

    LinearEquation with_inf({{x0, kInfinity}});
    CHECK(with_inf == LinearEquation());
}

TEST_CASE("LinearSystem validates slots and derives M", "[linear]") {
    CHECK_THROWS_AS(LinearSystem(1, 1, {LinearEquation({{Slot{0, 2}, 1}})}), ContractError);
    CHECK_THROWS_AS(LinearSystem(1, 1, {LinearEquation({{Slot{1, 0}, 1}})}), ContractError);
    LinearSystem s(2, 3, {LinearEquation({{Slot{1, 3}, 7}}, 9), LinearEquation({}, kInfinity)});
    CHECK(s.M() == 9);
    CHECK(s.k() == 2);
    CHECK(LinearSystem(1, 0, {}).M() == 0);
}

TEST_CASE("equation_status examples", "[linear]") {
    const auto eq = tail_gap_example().equation(0);
    const Support with_tail[] = {Support({0}, 2)};
    CHECK(is_satisfied(equation_status(eq, with_tail)));  // terms 1, 1, 2

    const Support everything[] = {Support::all()};
    CHECK(equation_status(eq, everything) == EquationStatus(ViolatedAtSlot{x1, 0}));  // terms 1, 0, 2

    const LinearEquation free_only({}, 5);
    const Support any[] = {Support({0, 3}, std::nullopt)};
    CHECK(equation_status(free_only, any) == EquationStatus(ViolatedAtFree{5}));

    const LinearEquation homogeneous({{x0, 0}, {x1, 3}});
    const Support none[] = {Support::empty()};
    CHECK(is_satisfied(equation_status(homogeneous, none)));
}

TEST_CASE("is_solution examples", "[linear]") {
    const auto sys = tail_gap_example();
    CHECK(is_solution(sys, std::vector<Support>{Support({0}, 2)}));
    CHECK_FALSE(is_solution(sys, std::vector<Support>{Support::all()}));
    CHECK(is_solution(LinearSystem(2, 1, {}), std::vector<Support>{Support::empty(), Support::empty()}));
    CHECK_THROWS_AS(is_solution(sys, std::vector<Support>{}), ContractError);
}

TEST_CASE("is_solution agrees with the naive evaluator", "[linear][property]") {
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 500; ++iter) {
        const auto sys = tropde::testing::random_small_system(rng, 3, 4, 3, 5);
        std::vector<Support> sup;
        std::vector<tropde::testing::NaiveSet> naive;
        for (std::size_t i = 0; i < sys.n(); ++i) {
            sup.push_back(tropde::testing::random_support(rng, 7));
            naive.push_back(tropde::testing::naive_of(sup.back()));
        }
        bool expect = true;
        for (const auto& eq : sys.equations()) expect = expect && tropde::testing::naive_satisfied(eq, naive, 64);
        CHECK(is_solution(sys, sup) == expect);
    }
}

TEST_CASE("bounds", "[linear]") {
    CHECK(bound_paper(3, 2, 5) == 16);
    for (std::uint64_t r : {0, 1, 4, 9}) {
        for (std::uint64_t M : {0, 2, 100}) CHECK(bound_paper(1, r, M) == r);
    }
    CHECK(bound_paper(1, 1, 2) == 1);
    CHECK(bound_safe(1, 1, 2) == 7);
    CHECK(bound_safe(3, 2, 5) == 44);
    for (std::uint64_t n = 0; n < 6; ++n) {
        for (std::uint64_t r = 0; r < 6; ++r) {
            for (std::uint64_t M = 0; M < 6; ++M) CHECK(bound_safe(n, r, M) >= bound_paper(n, r, M));
        }
    }
    CHECK_THROWS_AS(bound_safe(UINT64_MAX / 2, 3, 3), OverflowError);
}

TEST_CASE("tropical_derivative examples", "[linear]") {
    CHECK(tropical_derivative(LinearEquation({{x1, 3}})) == LinearEquation({{x1, 2}, {Slot{0, 2}, 3}}));
    CHECK(tropical_derivative(LinearEquation({{x0, 0}})) == LinearEquation({{x1, 0}}));
    // min{1+x, 0+x''} -> min{0+x, 1+x', 0+x'''}
    CHECK(tropical_derivative(LinearEquation({{x0, 1}, {Slot{0, 2}, 0}})) ==
          LinearEquation({{x0, 0}, {x1, 1}, {Slot{0, 3}, 0}}));
    // Contributions landing on the same slot merge by minimum.
    CHECK(tropical_derivative(LinearEquation({{x0, 5}, {x1, 9}})) ==
          LinearEquation({{x0, 4}, {x1, 5}, {Slot{0, 2}, 9}}));
    CHECK_THROWS_AS(tropical_derivative(LinearEquation({{x0, 1}}, 4)), NonHomogeneousDerivative);
}

TEST_CASE("tropical_derivative evaluation law", "[linear][property]") {
    std::mt19937_64 rng(77);
    for (int iter = 0; iter < 1000; ++iter) {
        GeneratorConfig cfg{2, 4, 1, 6, 0.4, 0.0, rng()};
        const auto eq = generate_random_system(cfg).equation(0);
        const auto d = tropical_derivative(eq);
        const std::vector<Support> sup{tropde::testing::random_support(rng), tropde::testing::random_support(rng)};

        ExtNat expect = kInfinity;
        for (const auto& t : eq.terms()) {
            const auto a = t.coeff.value();
            const auto& s = sup[t.slot.var];
            if (a >= 1) expect = min(expect, ExtNat(a - 1) + valuation(s, t.slot.order));
            expect = min(expect, t.coeff + valuation(s, t.slot.order + 1));
        }
        CHECK(equation_min(d, sup) == expect);
    }
}

TEST_CASE("linear_to_nonlinear structure", "[linear][nonlinear]") {
    LinearSystem sys(1, 0, {LinearEquation({{x0, 1}}, 2)});
    const auto nl = linear_to_nonlinear(sys);
    REQUIRE(nl.k() == 1);
    const auto& ms = nl.equations()[0].monomials();
    REQUIRE(ms.size() == 2);
    CHECK(ms[0] == Monomial(2, {}));
    CHECK(ms[1] == Monomial(1, {x0}));

    const auto hom = linear_to_nonlinear(LinearSystem(1, 0, {LinearEquation({{x0, 1}})}));
    REQUIRE(hom.equations()[0].monomials().size() == 1);
    CHECK_FALSE(hom.equations()[0].monomials()[0].factors.empty());
}

TEST_CASE("linear_to_nonlinear preserves the solution criterion", "[linear][nonlinear][property]") {
    std::mt19937_64 rng(8);
    const auto ex = tail_gap_example();
    const auto ex_nl = linear_to_nonlinear(ex);
    for (int iter = 0; iter < 100; ++iter) {
        const std::vector<Support> sup{tropde::testing::random_support(rng, 5)};
        CHECK(is_solution(ex, sup) == is_solution_nl(ex_nl, sup));
    }
    for (int iter = 0; iter < 1000; ++iter) {
        const auto sys = tropde::testing::random_small_system(rng, 3, 4, 4, 6);
        const auto nl = linear_to_nonlinear(sys);
        std::vector<Support> sup;
        for (std::size_t i = 0; i < sys.n(); ++i) sup.push_back(tropde::testing::random_support(rng, 7));
        CHECK(is_solution(sys, sup) == is_solution_nl(nl, sup));
    }
}
