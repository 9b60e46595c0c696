#include <catch_amalgamated.hpp>

#include "test_helpers.hpp"

using namespace tropde;
using tropde::testing::tail_gap_example;

namespace {

const Slot x0{0, 0};
const Slot x1{0, 1};

/// Jump length by hand: smallest gap between the pivot and any term not
/// witnessed by the tail, scanning explicit valuations.
ExtNat naive_jump(const std::vector<std::pair<ExtNat, bool>>& terms, ExtNat pivot) {
    ExtNat best = kInfinity;
    for (auto [value, tail] : terms) {
        if (!tail && value.is_finite()) best = min(best, ExtNat(value.value() - pivot.value()));
    }
    return best;
}

}  // namespace

TEST_CASE("jump_length examples", "[univar]") {
    const Support t({0}, 1);

    // Terms: 1 + Val(0) = 1 (finite witness), 0 + Val(1) = 0 (tail), free 2.
    const auto eq = tail_gap_example().equation(0);
    CHECK(naive_jump({{1, false}, {0, true}, {2, false}}, 0) == ExtNat(1));
    CHECK(jump_length(eq, t, 1) == ExtNat(1));

    CHECK(jump_length(LinearEquation({{x1, 0}}), t, 1) == kInfinity);

    const LinearEquation eq3({{x1, 0}, {x0, 3}});
    CHECK(naive_jump({{3, false}, {0, true}}, 0) == ExtNat(3));
    CHECK(jump_length(eq3, t, 1) == ExtNat(3));
    // After the jump the tail starts at 4 and 0 + Val(1) = 3 ties with 3 + Val(0).
    const Support jumped[] = {Support({0}, 4)};
    CHECK(is_satisfied(equation_status(eq3, jumped)));
}

TEST_CASE("jump_length rejects states outside its precondition", "[univar]") {
    const auto eq = tail_gap_example().equation(0);
    CHECK_THROWS_AS(jump_length(eq, Support({0}, 2), 2), ContractError);  // satisfied
    CHECK_THROWS_AS(jump_length(eq, Support({0}, 1), 3), ContractError);  // wrong tail start
    CHECK_THROWS_AS(jump_length(LinearEquation({{x0, 0}}, 5), Support({0}, 1), 1), ContractError);  // finite witness
}

TEST_CASE("solve_univar on the tail-gap example performs one jump", "[univar]") {
    std::vector<JumpComputation> jumps;
    const auto rep = solve_univar(tail_gap_example(), true, &jumps);
    REQUIRE(rep.solvable());
    CHECK(rep.supports() == std::vector<Support>{Support({0}, 2)});
    REQUIRE(rep.steps.size() == 1);
    CHECK(rep.steps[0].kind == StepKind::Jump);
    CHECK(rep.steps[0].jump_p == ExtNat(1));
    CHECK(rep.jumps == 1);
    REQUIRE(jumps.size() == 1);
    CHECK(jumps[0].tail_start == 1);
    CHECK(jumps[0].p == ExtNat(1));
}

TEST_CASE("solve_univar drops the tail on an infinite jump", "[univar]") {
    const LinearSystem sys(1, 1, {LinearEquation({{x1, 0}})});
    auto oracle = oracle_minimal_linear(sys);
    REQUIRE(oracle.solvable);
    CHECK(oracle.join == std::vector<Support>{Support({0}, std::nullopt)});

    const auto rep = solve_univar(sys);
    REQUIRE(rep.solvable());
    CHECK(rep.supports() == oracle.join);
    REQUIRE(rep.steps.size() == 1);
    CHECK(rep.steps[0].kind == StepKind::TailDrop);
}

TEST_CASE("solve_univar handles r = 0 with a free-term competitor", "[univar]") {
    // min{0 + x, 5}: the tail must move from 0 to 5 in a single jump.
    const LinearSystem sys(1, 0, {LinearEquation({{x0, 0}}, 5)});
    const auto rep = solve_univar(sys);
    REQUIRE(rep.solvable());
    CHECK(rep.supports() == std::vector<Support>{Support::cofinite(5)});
    CHECK(rep.max_p == 5);
    CHECK(solve_minimal(sys).supports() == rep.supports());
}

TEST_CASE("solve_univar rejects multivariate systems", "[univar]") {
    CHECK_THROWS_AS(solve_univar(LinearSystem(2, 1, {})), ContractError);
}

TEST_CASE("solve_univar agrees with solve_minimal", "[univar][property]") {
    std::mt19937_64 rng(31337);
    for (int iter = 0; iter < 2000; ++iter) {
        GeneratorConfig cfg;
        cfg.n = 1;
        cfg.r = rng() % 7;
        cfg.k = 1 + rng() % 4;
        cfg.M = rng() % 7;
        cfg.density = 0.2 + 0.2 * static_cast<double>(rng() % 4);
        cfg.free_term_probability = 0.25 * static_cast<double>(rng() % 5);
        cfg.seed = rng();
        const auto sys = generate_random_system(cfg);
        INFO(serialize_system(sys));

        const auto general = solve_minimal(sys, {BoundChoice::Safe, false});
        const auto fast = solve_univar(sys);
        REQUIRE(general.solvable() == fast.solvable());
        if (general.solvable()) CHECK(general.supports() == fast.supports());

        const std::uint64_t r = sys.r();
        CHECK(fast.finite_steps <= r);
        CHECK(fast.discard_count <= 2 * r + 2);
        for (std::size_t s = 0; s < fast.steps.size(); ++s) {
            const auto& step = fast.steps[s];
            if (step.kind != StepKind::Jump) continue;
            const auto p = step.jump_p->value();
            CHECK(p >= 1);
            // Post-jump: done, or the next step is a finite-type discard.
            if (s + 1 < fast.steps.size()) CHECK(fast.steps[s + 1].kind == StepKind::FiniteDiscard);
        }
    }
}
