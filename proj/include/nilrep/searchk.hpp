#pragma once

#include "nilrep/rep.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace nilrep {

struct SearchConfig {
    unsigned r = 2;
    unsigned k = 2;
    unsigned trials_per_profile = 200;
    long entry_bound = 9;
    std::uint64_t master_seed = 1;
    std::size_t dim_budget = 0;       // 0: default window above the lower bound
    double time_budget_seconds = 0;   // 0: unlimited
};

struct ProfileStat {
    std::vector<std::size_t> profile;
    unsigned trials = 0;
    unsigned successes = 0;
};

struct SearchResult {
    bool found = false;
    std::size_t best_dim = 0;
    BlockProfile best_profile;
    std::optional<GradedRep> representation;
    unsigned long long trials_run = 0;
    std::vector<ProfileStat> per_profile;
    std::size_t lower_start = 0;
    std::size_t budget_dim = 0;

    nlohmann::ordered_json to_json(const SearchConfig& config) const;
};

// All block profiles (a_0,...,a_k) with the given total, every a_i >= 1 and
// a_0*a_k >= dim of the degree-k component (center images must fit in the
// top-right block). Ordered by decreasing a_0*a_k, then lexicographically.
std::vector<BlockProfile> profile_candidates(unsigned r, unsigned k, std::size_t total_dim);

// One seeded sampling of all r*k generator blocks; returns the extension
// when it certifies as faithful.
std::optional<GradedRep> random_trial(std::shared_ptr<const FreeNilAlgebra> alg,
                                      const BlockProfile& profile, std::uint64_t seed,
                                      long entry_bound);

// Increasing total dimension from the trivial lower bound; the first
// success (minimal total, then profile index, then trial index) wins, so
// the result is deterministic given the master seed. Throws
// BudgetExhaustedError when the time budget runs out; an exhausted
// dimension budget returns found = false with the attempted-profile log.
SearchResult search_min_dim(const SearchConfig& config);

struct ReferenceBounds {
    unsigned long long dim_power;       // (dim g)^k + 1
    unsigned long long binomial;        // C(k + dim g, k)
    unsigned long long lo_ostheimer;    // 1 + r + ... + r^k
    unsigned long long asymptote_ceil;  // ceil(2*sqrt(r^k/k))
};

ReferenceBounds reference_bounds(unsigned r, unsigned k);

nlohmann::ordered_json reference_bounds_json(unsigned r, unsigned k);

} // namespace nilrep
