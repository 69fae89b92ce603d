#include "nilrep/rep.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace nilrep {

std::size_t BlockProfile::total() const {
    std::size_t t = 0;
    for (auto d : dims)
        t += d;
    return t;
}

namespace {

unsigned worker_count() {
    if (const char* env = std::getenv("NILREP_THREADS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n >= 1)
            return static_cast<unsigned>(n);
    }
    return 1;
}

} // namespace

GradedRep GradedRep::extend_generators(std::shared_ptr<const FreeNilAlgebra> alg,
                                       BlockProfile profile,
                                       std::vector<std::vector<RatMatrix>> gen_blocks) {
    const unsigned r = alg->rank(), k = alg->step();
    if (profile.dims.size() != k + 1)
        throw std::invalid_argument("extend_generators: profile must have k+1 blocks");
    for (auto d : profile.dims)
        if (d == 0)
            throw std::invalid_argument("extend_generators: block sizes must be positive");
    if (gen_blocks.size() != r)
        throw std::invalid_argument("extend_generators: need one block tuple per generator");
    for (const auto& blocks : gen_blocks) {
        if (blocks.size() != k)
            throw std::invalid_argument("extend_generators: need k blocks per generator");
        for (unsigned j = 0; j < k; ++j)
            if (blocks[j].rows() != profile.dims[j] || blocks[j].cols() != profile.dims[j + 1])
                throw std::invalid_argument("extend_generators: block shape mismatch");
    }

    std::vector<std::size_t> offset(k + 2, 0);
    for (unsigned j = 0; j <= k; ++j)
        offset[j + 1] = offset[j] + profile.dims[j];
    const std::size_t n = offset[k + 1];

    GradedRep rep;
    rep.alg_ = std::move(alg);
    rep.profile_ = std::move(profile);
    rep.gen_blocks_ = std::move(gen_blocks);
    rep.images_.reserve(rep.alg_->dim());
    for (unsigned i = 0; i < r; ++i) {
        RatMatrix m(n, n);
        for (unsigned j = 0; j < k; ++j) {
            const RatMatrix& b = rep.gen_blocks_[i][j];
            for (std::size_t s = 0; s < b.rows(); ++s)
                for (std::size_t t = 0; t < b.cols(); ++t)
                    m.at(offset[j] + s, offset[j + 1] + t) = b.at(s, t);
        }
        rep.images_.push_back(std::move(m));
    }
    // Basis elements are ordered by degree, so left/right images exist
    // before they are needed.
    const auto& basis = rep.alg_->basis();
    for (std::size_t id = r; id < basis.size(); ++id)
        rep.images_.push_back(commutator(rep.images_[basis[id].left], rep.images_[basis[id].right]));
    return rep;
}

GradedRep GradedRep::with_perturbed_image(std::size_t basis_id, std::size_t row, std::size_t col,
                                          const Rational& delta) const {
    GradedRep copy = *this;
    copy.images_.at(basis_id).at(row, col) += delta;
    return copy;
}

RatMatrix GradedRep::corner_block(std::size_t basis_id) const {
    const std::size_t a0 = profile_.dims.front(), ak = profile_.dims.back();
    const std::size_t n = dimension();
    const RatMatrix& m = images_.at(basis_id);
    RatMatrix block(a0, ak);
    for (std::size_t i = 0; i < a0; ++i)
        for (std::size_t j = 0; j < ak; ++j)
            block.at(i, j) = m.at(i, n - ak + j);
    return block;
}

HomCheck is_homomorphism(const GradedRep& rep) {
    const auto& alg = rep.algebra();
    const std::size_t dim = alg.dim();
    const unsigned workers = worker_count();

    // The verdict is a conjunction over basis pairs; with several workers
    // the minimal failing pair is reported so the result is
    // schedule-independent.
    std::atomic<std::uint64_t> first_fail{~std::uint64_t(0)};
    auto run = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t j = i + 1; j < dim; ++j) {
                RatMatrix expected(rep.dimension(), rep.dimension());
                for (const auto& [t, c] : alg.bracket_basis(i, j))
                    expected = expected + c * rep.image(t);
                if (commutator(rep.image(i), rep.image(j)) != expected) {
                    std::uint64_t code = static_cast<std::uint64_t>(i) * dim + j;
                    std::uint64_t cur = first_fail.load();
                    while (code < cur && !first_fail.compare_exchange_weak(cur, code)) {
                    }
                    return;
                }
            }
        }
    };

    if (workers <= 1 || dim < 16) {
        run(0, dim);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (dim + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            std::size_t b = w * chunk, e = std::min(dim, b + chunk);
            if (b < e)
                pool.emplace_back(run, b, e);
        }
        for (auto& t : pool)
            t.join();
    }

    HomCheck out;
    std::uint64_t code = first_fail.load();
    if (code != ~std::uint64_t(0)) {
        out.ok = false;
        out.witness_i = code / dim;
        out.witness_j = code % dim;
    }
    return out;
}

FaithCheck is_faithful(const GradedRep& rep, FaithMode mode) {
    const auto& alg = rep.algebra();
    const auto center = alg.center_basis_ids();
    std::vector<RatMatrix> corner_images;
    corner_images.reserve(center.size());
    for (auto id : center)
        corner_images.push_back(rep.corner_block(id));

    FaithCheck out;
    out.ok = is_independent(corner_images);
    if (!out.ok) {
        if (auto combo = dependent_combination(corner_images)) {
            out.witness_combination = *combo;
            for (std::size_t t = 0; t < center.size(); ++t)
                if ((*combo)[t] != 0)
                    out.witness_names.push_back(alg.basis()[center[t]].name);
        }
    }
    if (mode == FaithMode::full || mode == FaithMode::both) {
        std::vector<RatMatrix> all;
        all.reserve(alg.dim());
        for (std::size_t id = 0; id < alg.dim(); ++id)
            all.push_back(rep.image(id));
        out.full_ok = is_independent(all);
    }
    return out;
}

RepReport certify(const GradedRep& rep, bool full_cross_check) {
    RepReport report;
    report.dimension = rep.dimension();
    if (rep.algebra().step() == 2) {
        const auto& d = rep.profile().dims;
        report.type_triple = std::array<std::size_t, 3>{d[0], d[1], d[2]};
    }
    HomCheck hom = is_homomorphism(rep);
    report.is_homomorphism = hom.ok;
    if (!hom.ok) {
        const auto& basis = rep.algebra().basis();
        report.witness = {{"kind", "homomorphism"},
                          {"pair", {hom.witness_i, hom.witness_j}},
                          {"basis", {basis[hom.witness_i].name, basis[hom.witness_j].name}}};
        report.is_faithful = false;
        return report;
    }
    FaithCheck faith = is_faithful(rep, full_cross_check ? FaithMode::both : FaithMode::center);
    if (faith.full_ok && *faith.full_ok != faith.ok)
        throw std::logic_error("center criterion and full injectivity disagree");
    report.is_faithful = faith.ok;
    if (!faith.ok) {
        nlohmann::ordered_json combo = nlohmann::ordered_json::array();
        for (const auto& c : faith.witness_combination)
            combo.push_back(rational_to_string(c));
        report.witness = {{"kind", "faithfulness"},
                          {"vanishing_combination", std::move(combo)},
                          {"elements", faith.witness_names}};
    }
    return report;
}

nlohmann::ordered_json RepReport::to_json() const {
    nlohmann::ordered_json j;
    j["is_homomorphism"] = is_homomorphism;
    j["is_faithful"] = is_faithful;
    j["dimension"] = dimension;
    if (type_triple)
        j["type_triple"] = *type_triple;
    else
        j["type_triple"] = nullptr;
    j["witness"] = witness.is_null() ? nlohmann::ordered_json(nullptr) : witness;
    return j;
}

nlohmann::ordered_json GradedRep::to_json() const {
    nlohmann::ordered_json j;
    j["r"] = alg_->rank();
    j["k"] = alg_->step();
    j["profile"] = profile_.dims;
    nlohmann::ordered_json gens = nlohmann::ordered_json::array();
    for (const auto& blocks : gen_blocks_) {
        nlohmann::ordered_json tuple = nlohmann::ordered_json::array();
        for (const auto& b : blocks)
            tuple.push_back(matrix_to_json(b));
        gens.push_back(std::move(tuple));
    }
    j["generators"] = std::move(gens);
    return j;
}

GradedRep GradedRep::from_json(const nlohmann::json& j) {
    const unsigned r = j.at("r").get<unsigned>();
    const unsigned k = j.at("k").get<unsigned>();
    BlockProfile profile;
    profile.dims = j.at("profile").get<std::vector<std::size_t>>();
    std::vector<std::vector<RatMatrix>> gen_blocks;
    for (const auto& tuple : j.at("generators")) {
        std::vector<RatMatrix> blocks;
        for (const auto& b : tuple)
            blocks.push_back(matrix_from_json(b));
        gen_blocks.push_back(std::move(blocks));
    }
    return extend_generators(FreeNilAlgebra::build(r, k), std::move(profile), std::move(gen_blocks));
}

GradedRep build_pi0(unsigned r) {
    if (r < 2)
        throw std::invalid_argument("build_pi0: need r >= 2");
    auto alg = FreeNilAlgebra::build(r, 2);
    BlockProfile profile{{r, 1, r}};
    std::vector<std::vector<RatMatrix>> blocks;
    for (unsigned s = 1; s <= r; ++s) {
        RatMatrix upper(r, 1);
        upper.at(s - 1, 0) = 1;
        RatMatrix lower(1, r);
        lower.at(0, r - s) = 1;
        blocks.push_back({std::move(upper), std::move(lower)});
    }
    return GradedRep::extend_generators(std::move(alg), std::move(profile), std::move(blocks));
}

GradedRep build_pi1(unsigned r) {
    if (r < 2)
        throw std::invalid_argument("build_pi1: need r >= 2");
    auto alg = FreeNilAlgebra::build(r, 2);
    BlockProfile profile{{r - 1, 1, r - 1}};
    std::vector<std::vector<RatMatrix>> blocks;
    for (unsigned s = 1; s <= r; ++s) {
        RatMatrix upper(r - 1, 1);
        if (s <= r - 1)
            upper.at(s - 1, 0) = 1;
        RatMatrix lower(1, r - 1);
        if (s >= 2)
            lower.at(0, r - s) = 1;
        blocks.push_back({std::move(upper), std::move(lower)});
    }
    return GradedRep::extend_generators(std::move(alg), std::move(profile), std::move(blocks));
}

bool type_feasible(unsigned long long a, unsigned long long p, unsigned long long b, unsigned r) {
    if (a == 0 || p == 0 || b == 0 || r == 0)
        throw std::invalid_argument("type_feasible: arguments must be positive");
    const unsigned long long pairs = static_cast<unsigned long long>(r) * (r - 1) / 2;
    return r <= p * std::min(a, b) + 1 && pairs <= a * b;
}

unsigned long long isqrt_floor(unsigned long long n) {
    unsigned long long x = 0, bit = 1ULL << 62;
    while (bit > n)
        bit >>= 2;
    while (bit != 0) {
        if (n >= x + bit) {
            n -= x + bit;
            x = (x >> 1) + bit;
        } else {
            x >>= 1;
        }
        bit >>= 2;
    }
    return x;
}

unsigned long long isqrt_ceil(unsigned long long n) {
    if (n == 0)
        return 0;
    unsigned long long f = isqrt_floor(n);
    return f * f == n ? f : f + 1;
}

unsigned long long schur_bound(unsigned long long n) {
    if (n == 0)
        throw std::invalid_argument("schur_bound: need n >= 1");
    return isqrt_ceil(4 * (n - 1));
}

unsigned long long mu_formula(unsigned r) {
    if (r < 2)
        throw std::invalid_argument("mu_formula: need r >= 2");
    if (r == 2)
        return 3;
    if (r == 3)
        return 5;
    return isqrt_ceil(2ULL * r * (r - 1)) + 2;
}

} // namespace nilrep
