#include "nilrep/searchk.hpp"

#include "nilrep/errors.hpp"
#include "nilrep/rng.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace nilrep {

std::vector<BlockProfile> profile_candidates(unsigned r, unsigned k, std::size_t total_dim) {
    if (total_dim < k + 1)
        throw std::invalid_argument("profile_candidates: total dimension below k+1");
    const unsigned long long center_dim = witt_graded_dims(r, k).back();

    std::vector<BlockProfile> out;
    std::vector<std::size_t> parts(k + 1, 1);
    // enumerate compositions of total_dim into k+1 positive parts
    auto emit = [&](auto&& self, unsigned idx, std::size_t remaining) -> void {
        if (idx == k) {
            parts[k] = remaining;
            if (parts.front() * parts.back() >= center_dim)
                out.push_back(BlockProfile{parts});
            return;
        }
        for (std::size_t v = 1; v + (k - idx) <= remaining; ++v) {
            parts[idx] = v;
            self(self, idx + 1, remaining - v);
        }
    };
    emit(emit, 0, total_dim);

    std::stable_sort(out.begin(), out.end(), [](const BlockProfile& x, const BlockProfile& y) {
        const std::size_t px = x.dims.front() * x.dims.back();
        const std::size_t py = y.dims.front() * y.dims.back();
        if (px != py)
            return px > py;
        return x.dims < y.dims;
    });
    return out;
}

std::optional<GradedRep> random_trial(std::shared_ptr<const FreeNilAlgebra> alg,
                                      const BlockProfile& profile, std::uint64_t seed,
                                      long entry_bound) {
    if (profile.dims.size() != alg->step() + 1)
        throw std::invalid_argument("random_trial: profile length must be k+1");
    SplitMix64 rng(seed);
    const unsigned r = alg->rank(), k = alg->step();
    std::vector<std::vector<RatMatrix>> blocks(r);
    for (unsigned i = 0; i < r; ++i)
        for (unsigned j = 0; j < k; ++j) {
            RatMatrix m(profile.dims[j], profile.dims[j + 1]);
            for (std::size_t s = 0; s < m.rows(); ++s)
                for (std::size_t t = 0; t < m.cols(); ++t)
                    m.at(s, t) = static_cast<long>(rng.in_range(-entry_bound, entry_bound));
            blocks[i].push_back(std::move(m));
        }
    GradedRep rep = GradedRep::extend_generators(std::move(alg), profile, std::move(blocks));
    if (is_faithful(rep).ok)
        return rep;
    return std::nullopt;
}

SearchResult search_min_dim(const SearchConfig& config) {
    auto alg = FreeNilAlgebra::build(config.r, config.k);
    const unsigned long long center_dim = alg->graded_dims().back();
    const std::size_t lower =
        std::max<std::size_t>(config.k + 1, static_cast<std::size_t>(schur_bound(center_dim)));
    const std::size_t budget = config.dim_budget > 0 ? config.dim_budget : lower + 24;

    SearchResult result;
    result.lower_start = lower;
    result.budget_dim = budget;

    const auto t0 = std::chrono::steady_clock::now();
    auto over_time = [&] {
        if (config.time_budget_seconds <= 0)
            return false;
        std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        return dt.count() > config.time_budget_seconds;
    };

    for (std::size_t total = lower; total <= budget; ++total) {
        auto candidates = profile_candidates(config.r, config.k, total);
        for (std::size_t pi = 0; pi < candidates.size(); ++pi) {
            ProfileStat stat;
            stat.profile = candidates[pi].dims;
            for (unsigned t = 0; t < config.trials_per_profile; ++t) {
                if (over_time())
                    throw BudgetExhaustedError("search_min_dim: time budget exhausted");
                ++result.trials_run;
                ++stat.trials;
                auto rep = random_trial(alg, candidates[pi],
                                        derive_seed(config.master_seed, {total, pi, t}),
                                        config.entry_bound);
                if (rep) {
                    ++stat.successes;
                    result.per_profile.push_back(std::move(stat));
                    result.found = true;
                    result.best_dim = total;
                    result.best_profile = candidates[pi];
                    result.representation = std::move(rep);
                    return result;
                }
            }
            result.per_profile.push_back(std::move(stat));
        }
    }
    return result;  // found = false: dimension budget exhausted
}

ReferenceBounds reference_bounds(unsigned r, unsigned k) {
    auto dims = witt_graded_dims(r, k);
    unsigned long long dim_g = 0;
    for (auto d : dims)
        dim_g += d;

    ReferenceBounds rb{};
    unsigned __int128 p = 1;
    for (unsigned i = 0; i < k; ++i)
        p *= dim_g;
    rb.dim_power = static_cast<unsigned long long>(p + 1);

    unsigned __int128 binom = 1;
    for (unsigned long long i = 1; i <= k; ++i)
        binom = binom * (dim_g + i) / i;
    rb.binomial = static_cast<unsigned long long>(binom);

    unsigned long long lo = 1, rpow = 1;
    for (unsigned i = 1; i <= k; ++i) {
        rpow *= r;
        lo += rpow;
    }
    rb.lo_ostheimer = lo;

    // smallest s with k*s^2 >= 4*r^k, i.e. ceil(2*sqrt(r^k/k)) exactly
    unsigned long long rk = 1;
    for (unsigned i = 0; i < k; ++i)
        rk *= r;
    unsigned long long s = isqrt_floor(4 * rk / k);
    while (s * s * k < 4 * rk)
        ++s;
    while (s > 0 && (s - 1) * (s - 1) * k >= 4 * rk)
        --s;
    rb.asymptote_ceil = s;
    return rb;
}

nlohmann::ordered_json reference_bounds_json(unsigned r, unsigned k) {
    ReferenceBounds rb = reference_bounds(r, k);
    nlohmann::ordered_json j;
    j["dim_power_plus_one"] = rb.dim_power;
    j["binomial"] = rb.binomial;
    j["lo_ostheimer"] = rb.lo_ostheimer;
    j["center_asymptote_ceil"] = rb.asymptote_ceil;
    return j;
}

nlohmann::ordered_json SearchResult::to_json(const SearchConfig& config) const {
    nlohmann::ordered_json j;
    j["r"] = config.r;
    j["k"] = config.k;
    j["seed"] = config.master_seed;
    j["trials_per_profile"] = config.trials_per_profile;
    j["entry_bound"] = config.entry_bound;
    j["lower_start"] = lower_start;
    j["dim_budget"] = budget_dim;
    j["found"] = found;
    j["trials_run"] = trials_run;
    if (found) {
        j["best_dim"] = best_dim;
        j["best_profile"] = best_profile.dims;
        j["representation"] = representation->to_json();
    } else {
        j["best_dim"] = nullptr;
        j["best_profile"] = nullptr;
        j["representation"] = nullptr;
    }
    nlohmann::ordered_json profiles = nlohmann::ordered_json::array();
    for (const auto& s : per_profile) {
        nlohmann::ordered_json p;
        p["profile"] = s.profile;
        p["trials"] = s.trials;
        p["successes"] = s.successes;
        profiles.push_back(std::move(p));
    }
    j["per_profile"] = std::move(profiles);
    j["reference_bounds"] = reference_bounds_json(config.r, config.k);
    return j;
}

} // namespace nilrep
