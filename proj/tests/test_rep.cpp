#include "nilrep/rep.hpp"
#include "nilrep/rng.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace nilrep;

namespace {

RatMatrix power(const RatMatrix& m, unsigned e) {
    RatMatrix acc = RatMatrix::identity(m.rows());
    for (unsigned i = 0; i < e; ++i)
        acc = acc * m;
    return acc;
}

GradedRep heisenberg() {
    auto alg = FreeNilAlgebra::build(2, 2);
    RatMatrix one(1, 1), zero(1, 1);
    one.at(0, 0) = 1;
    return GradedRep::extend_generators(alg, BlockProfile{{1, 1, 1}},
                                        {{one, zero}, {zero, one}});
}

} // namespace

TEST_CASE("extend_generators: zero images give a valid non-faithful rep") {
    auto alg = FreeNilAlgebra::build(3, 2);
    std::vector<std::vector<RatMatrix>> blocks(3, {RatMatrix(2, 1), RatMatrix(1, 2)});
    GradedRep rep = GradedRep::extend_generators(alg, BlockProfile{{2, 1, 2}}, blocks);
    for (std::size_t id = 0; id < alg->dim(); ++id)
        CHECK(rep.image(id).is_zero());
    CHECK(is_homomorphism(rep).ok);
    auto faith = is_faithful(rep, FaithMode::both);
    CHECK_FALSE(faith.ok);
    CHECK(faith.full_ok == false);
    REQUIRE(!faith.witness_names.empty());
    CHECK(faith.witness_names.front() == "[x1,x2]");
}

TEST_CASE("extend_generators: Heisenberg") {
    GradedRep rep = heisenberg();
    CHECK(rep.dimension() == 3);
    // Z_12 lands on E_13
    RatMatrix e13(3, 3);
    e13.at(0, 2) = 1;
    CHECK(rep.image(2) == e13);
    CHECK(is_homomorphism(rep).ok);
    CHECK(is_faithful(rep, FaithMode::both).ok);
}

TEST_CASE("extend_generators: Z_ij image is upper_i lower_j - upper_j lower_i") {
    auto alg = FreeNilAlgebra::build(4, 2);
    SplitMix64 rng(99);
    std::vector<std::vector<RatMatrix>> blocks;
    for (int i = 0; i < 4; ++i)
        blocks.push_back({oracles::random_int_matrix(3, 2, rng, 9),
                          oracles::random_int_matrix(2, 2, rng, 9)});
    GradedRep rep = GradedRep::extend_generators(alg, BlockProfile{{3, 2, 2}}, blocks);
    CHECK(is_homomorphism(rep).ok);
    std::size_t t = 0;
    auto center = alg->center_basis_ids();
    for (unsigned i = 0; i < 4; ++i)
        for (unsigned j = i + 1; j < 4; ++j) {
            RatMatrix expected = blocks[i][0] * blocks[j][1] - blocks[j][0] * blocks[i][1];
            CHECK(rep.corner_block(center[t]) == expected);
            ++t;
        }
}

TEST_CASE("extend_generators rejects malformed input") {
    auto alg = FreeNilAlgebra::build(2, 2);
    RatMatrix one(1, 1);
    one.at(0, 0) = 1;
    CHECK_THROWS_AS(GradedRep::extend_generators(alg, BlockProfile{{1, 1}}, {{one, one}, {one, one}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(GradedRep::extend_generators(alg, BlockProfile{{1, 1, 1}}, {{one, one}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(GradedRep::extend_generators(alg, BlockProfile{{1, 1, 1}},
                                                 {{RatMatrix(2, 1), one}, {one, one}}),
                    std::invalid_argument);
}

TEST_CASE("is_homomorphism detects a perturbed image") {
    GradedRep bad = heisenberg().with_perturbed_image(2, 0, 1, 1);
    auto check = is_homomorphism(bad);
    CHECK_FALSE(check.ok);
    CHECK(check.witness_i == 0);
    CHECK(check.witness_j == 1);

    RepReport report = certify(bad, false);
    CHECK_FALSE(report.is_homomorphism);
    CHECK(report.witness.at("kind") == "homomorphism");
}

TEST_CASE("pi0: faithful of type (r,1,r), dimension 2r+1") {
    for (unsigned r = 2; r <= 12; ++r) {
        GradedRep rep = build_pi0(r);
        CHECK(rep.dimension() == 2 * r + 1);
        CHECK(is_homomorphism(rep).ok);
        CHECK(is_faithful(rep).ok);
    }
    // center images of pi0(3) span 3 dimensions
    GradedRep rep = build_pi0(3);
    auto center = rep.algebra().center_basis_ids();
    std::vector<RatMatrix> blocks;
    for (auto id : center)
        blocks.push_back(rep.corner_block(id));
    CHECK(blocks.size() == 3);
    CHECK(is_independent(blocks));
    // the Z_12 block alone is a single skew pair, independent of the others
    CHECK(rank(blocks[0]) == 2);
}

TEST_CASE("pi1: faithful of type (r-1,1,r-1), dimension 2r-1") {
    for (unsigned r = 2; r <= 12; ++r) {
        GradedRep rep = build_pi1(r);
        CHECK(rep.dimension() == 2 * r - 1);
        CHECK(is_homomorphism(rep).ok);
        CHECK(is_faithful(rep, FaithMode::both).ok);
    }
    CHECK(build_pi1(3).dimension() == 5);
    CHECK(build_pi1(4).dimension() == 7);
    CHECK(build_pi1(2).dimension() == 3);
}

TEST_CASE("basis images are nilpotent of order k+1") {
    for (const GradedRep& rep : {build_pi0(4), build_pi1(5), heisenberg()}) {
        const unsigned k = rep.algebra().step();
        for (std::size_t id = 0; id < rep.algebra().dim(); ++id)
            CHECK(power(rep.image(id), k + 1).is_zero());
    }
}

TEST_CASE("type_feasible") {
    CHECK(type_feasible(3, 1, 3, 4));
    CHECK_FALSE(type_feasible(2, 1, 2, 4));
    CHECK_THROWS_AS(type_feasible(0, 1, 1, 2), std::invalid_argument);

    // for p = 1 the minimum of a+b+1 over feasible (a,b) is 2r-1
    for (unsigned r = 2; r <= 9; ++r) {
        unsigned long long best = ~0ULL;
        for (unsigned long long a = 1; a <= 40; ++a)
            for (unsigned long long b = 1; b <= 40; ++b)
                if (type_feasible(a, 1, b, r))
                    best = std::min(best, a + b + 1);
        CHECK(best == 2ULL * r - 1);
    }
}

TEST_CASE("schur_bound") {
    CHECK(schur_bound(1) == 0);
    CHECK(schur_bound(10) == 6);
    CHECK(schur_bound(45) == 14);  // r = 10: consistent with mu = 16
    CHECK_THROWS_AS(schur_bound(0), std::invalid_argument);
}

TEST_CASE("mu_formula reproduces the closed-form table") {
    const std::vector<unsigned long long> table = {3,  5,  7,  9,  10, 12, 13, 14,
                                                   16, 17, 19, 20, 22, 23, 24};
    for (unsigned r = 2; r <= 16; ++r)
        CHECK(mu_formula(r) == table[r - 2]);
    CHECK(mu_formula(7) == 12);
    CHECK(mu_formula(16) == 24);
    CHECK(mu_formula(3) == 5);
    CHECK(mu_formula(8) == 13);
    CHECK(mu_formula(12) == 19);

    for (unsigned r = 4; r <= 16; ++r) {
        unsigned long long pairs = static_cast<unsigned long long>(r) * (r - 1) / 2;
        CHECK(mu_formula(r) >= schur_bound(pairs));
    }
}

TEST_CASE("center criterion equals full injectivity on random reps") {
    auto alg = FreeNilAlgebra::build(3, 2);
    SplitMix64 rng(4242);
    for (int t = 0; t < 25; ++t) {
        std::vector<std::vector<RatMatrix>> blocks;
        long bound = t % 3 == 0 ? 0 : 2;  // bound 0 forces non-faithful samples
        for (int i = 0; i < 3; ++i)
            blocks.push_back({oracles::random_int_matrix(2, 1, rng, bound > 0 ? bound : 1),
                              oracles::random_int_matrix(1, 3, rng, bound)});
        GradedRep rep = GradedRep::extend_generators(alg, BlockProfile{{2, 1, 3}}, blocks);
        auto faith = is_faithful(rep, FaithMode::both);
        REQUIRE(faith.full_ok.has_value());
        CHECK(faith.ok == *faith.full_ok);
    }
}

TEST_CASE("representation JSON round-trip re-certifies") {
    GradedRep rep = build_pi1(4);
    auto j = rep.to_json();
    CHECK(j["r"] == 4);
    CHECK(j["k"] == 2);
    CHECK(j["profile"] == nlohmann::ordered_json({3, 1, 3}));
    GradedRep back = GradedRep::from_json(j);
    CHECK(back.dimension() == rep.dimension());
    for (std::size_t id = 0; id < rep.algebra().dim(); ++id)
        CHECK(back.image(id) == rep.image(id));
    RepReport report = certify(back, true);
    CHECK(report.is_homomorphism);
    CHECK(report.is_faithful);
    REQUIRE(report.type_triple.has_value());
    CHECK((*report.type_triple)[0] == 3);
    CHECK((*report.type_triple)[1] == 1);
    CHECK((*report.type_triple)[2] == 3);
    CHECK(report.witness.is_null());
}
