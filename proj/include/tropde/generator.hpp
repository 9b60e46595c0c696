#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tropde/linear.hpp"

namespace tropde {

struct GeneratorConfig {
    std::size_t n = 1;
    Order r = 1;
    std::size_t k = 1;
    std::uint64_t M = 1;
    double density = 0.5;                // probability that a slot coefficient is finite
    double free_term_probability = 0.5;  // probability that a free term is finite
    std::uint64_t seed = 0;
};

/// Random system, deterministic for a given seed within one build.
///
/// Slots of each equation are visited in (variable, order) order. Finite
/// slots are found by geometric skipping with success probability `density`
/// (equivalent to an independent coin per slot), each getting a coefficient
/// uniform in [0, M]. The free term is then finite with probability
/// `free_term_probability`, again uniform in [0, M]. All draws come from one
/// std::mt19937_64 seeded with `seed`.
inline LinearSystem generate_random_system(const GeneratorConfig& cfg) {
    if (!(cfg.density >= 0.0 && cfg.density <= 1.0) ||
        !(cfg.free_term_probability >= 0.0 && cfg.free_term_probability <= 1.0)) {
        throw ContractError("density and free_term_probability must lie in [0, 1]");
    }
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<std::uint64_t> coeff(0, cfg.M);
    std::bernoulli_distribution has_free(cfg.free_term_probability);
    const std::uint64_t width = cfg.r + 1;
    const std::uint64_t slots = cfg.n * width;

    std::vector<LinearEquation> eqs;
    eqs.reserve(cfg.k);
    for (std::size_t l = 0; l < cfg.k; ++l) {
        std::vector<LinearTerm> terms;
        if (cfg.density > 0.0 && slots > 0) {
            // geometric_distribution needs p < 1; density 1 means no gaps.
            std::geometric_distribution<std::uint64_t> gap(cfg.density < 1.0 ? cfg.density : 0.5);
            auto skip = [&] { return cfg.density < 1.0 ? gap(rng) : 0; };
            for (std::uint64_t pos = skip(); pos < slots; pos += 1 + skip()) {
                terms.push_back({Slot{static_cast<std::size_t>(pos / width), static_cast<Order>(pos % width)},
                                 ExtNat(coeff(rng))});
            }
        }
        const ExtNat free = has_free(rng) ? ExtNat(coeff(rng)) : kInfinity;
        eqs.emplace_back(std::move(terms), free);
    }
    return LinearSystem(cfg.n, cfg.r, std::move(eqs));
}

}  // namespace tropde
