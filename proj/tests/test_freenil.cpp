#include "nilrep/freenil.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace nilrep;

TEST_CASE("dimensions of small algebras") {
    CHECK(FreeNilAlgebra::build(2, 2)->dim() == 3);  // Heisenberg
    CHECK(FreeNilAlgebra::build(3, 2)->dim() == 6);

    auto a23 = FreeNilAlgebra::build(2, 3);
    CHECK(a23->graded_dims() == std::vector<std::size_t>{2, 1, 2});
    CHECK(a23->dim() == 5);

    CHECK_THROWS_AS(FreeNilAlgebra::build(1, 2), std::invalid_argument);
    CHECK_THROWS_AS(FreeNilAlgebra::build(2, 1), std::invalid_argument);
}

TEST_CASE("dim L_{r,2} = r + r(r-1)/2 for r = 2..20") {
    for (unsigned r = 2; r <= 20; ++r) {
        auto dims = witt_graded_dims(r, 2);
        CHECK(dims[0] == r);
        CHECK(dims[1] == static_cast<unsigned long long>(r) * (r - 1) / 2);
    }
}

TEST_CASE("witt dims agree with Lyndon-word enumeration for r <= 4, k <= 4") {
    for (unsigned r = 2; r <= 4; ++r)
        for (unsigned k = 2; k <= 4; ++k) {
            auto dims = witt_graded_dims(r, k);
            auto alg = FreeNilAlgebra::build(r, k);
            for (unsigned d = 1; d <= k; ++d) {
                CHECK(dims[d - 1] == oracles::lyndon_count(r, d));
                CHECK(alg->graded_dims()[d - 1] == oracles::lyndon_count(r, d));
            }
        }
    CHECK(witt_graded_dims(2, 4) == std::vector<unsigned long long>{2, 1, 2, 3});
    CHECK(witt_graded_dims(3, 2) == std::vector<unsigned long long>{3, 3});
    CHECK(witt_graded_dims(5, 2) == std::vector<unsigned long long>{5, 10});
}

TEST_CASE("basis is a Hall set under the chosen order") {
    for (auto [r, k] : std::vector<std::pair<unsigned, unsigned>>{{2, 4}, {3, 3}, {4, 2}}) {
        auto alg = FreeNilAlgebra::build(r, k);
        const auto& basis = alg->basis();
        for (const auto& e : basis) {
            if (e.degree == 1)
                continue;
            const auto& l = basis[e.left];
            const auto& rgt = basis[e.right];
            CHECK(e.degree == l.degree + rgt.degree);
            CHECK(e.left < e.right);  // left factor strictly smaller
            if (rgt.degree >= 2)
                CHECK(basis[e.right].left <= e.left);  // Hall condition
        }
    }
}

TEST_CASE("brackets of generators in L_{r,2}") {
    auto alg = FreeNilAlgebra::build(3, 2);
    auto x1 = AlgebraElement::basis_vector(alg, 0);
    auto x2 = AlgebraElement::basis_vector(alg, 1);
    auto x3 = AlgebraElement::basis_vector(alg, 2);

    CHECK(bracket(x1, x1).is_zero());

    // degree-2 basis order is Z_12, Z_13, Z_23
    CHECK(alg->basis()[3].name == "[x1,x2]");
    CHECK(alg->basis()[4].name == "[x1,x3]");
    CHECK(alg->basis()[5].name == "[x2,x3]");
    CHECK(bracket(x1, x2).coords[3] == 1);
    CHECK(bracket(x2, x1).coords[3] == -1);
    CHECK(bracket(x2, x3).coords[5] == 1);

    auto z12 = AlgebraElement::basis_vector(alg, 3);
    CHECK(bracket(z12, x1).is_zero());  // center annihilates

    auto other = FreeNilAlgebra::build(2, 2);
    CHECK_THROWS_AS(bracket(x1, AlgebraElement::basis_vector(other, 0)), std::invalid_argument);
}

TEST_CASE("center basis") {
    auto a32 = FreeNilAlgebra::build(3, 2);
    auto center = a32->center_basis_ids();
    REQUIRE(center.size() == 3);
    CHECK(a32->basis()[center[0]].name == "[x1,x2]");
    CHECK(a32->basis()[center[1]].name == "[x1,x3]");
    CHECK(a32->basis()[center[2]].name == "[x2,x3]");

    CHECK(FreeNilAlgebra::build(2, 2)->center_basis_ids().size() == 1);
    CHECK(FreeNilAlgebra::build(2, 3)->center_basis_ids().size() == 2);
}

TEST_CASE("antisymmetry, Jacobi and grading on the full suite") {
    // the named suite plus one deeper algebra (dim 30) and one step-5 case
    const std::vector<std::pair<unsigned, unsigned>> suite = {{2, 2}, {3, 2}, {4, 2},
                                                              {5, 2}, {2, 3}, {3, 3},
                                                              {2, 4}, {4, 3}, {2, 5}};
    for (auto [r, k] : suite) {
        auto alg = FreeNilAlgebra::build(r, k);
        const std::size_t dim = alg->dim();
        const auto& basis = alg->basis();

        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) {
                auto bij = alg->bracket_basis(i, j);
                auto bji = alg->bracket_basis(j, i);
                // antisymmetry
                REQUIRE(bij.size() == bji.size());
                for (std::size_t t = 0; t < bij.size(); ++t) {
                    CHECK(bij[t].first == bji[t].first);
                    CHECK(bij[t].second == -bji[t].second);
                }
                // grading
                for (const auto& [id, c] : bij)
                    CHECK(basis[id].degree == basis[i].degree + basis[j].degree);
                if (basis[i].degree + basis[j].degree > k)
                    CHECK(bij.empty());
            }

        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i; j < dim; ++j)
                for (std::size_t l = j; l < dim; ++l) {
                    auto ei = AlgebraElement::basis_vector(alg, i);
                    auto ej = AlgebraElement::basis_vector(alg, j);
                    auto el = AlgebraElement::basis_vector(alg, l);
                    auto jac = bracket(ei, bracket(ej, el)) + bracket(ej, bracket(el, ei)) +
                               bracket(el, bracket(ei, ej));
                    CHECK(jac.is_zero());
                }
    }
}

TEST_CASE("descriptor JSON") {
    auto alg = FreeNilAlgebra::build(2, 3);
    auto j = nlohmann::json::parse(alg->descriptor_json());
    CHECK(j["r"] == 2);
    CHECK(j["k"] == 3);
    CHECK(j["dims"] == nlohmann::json({2, 1, 2}));
    CHECK(j["basis"][0] == "x1");
    CHECK(j["basis"][2] == "[x1,x2]");
    CHECK(j["basis"][3] == "[x1,[x1,x2]]");
    CHECK(j["basis"][4] == "[x2,[x1,x2]]");
}

TEST_CASE("dimension guard") {
    CHECK_THROWS_AS(FreeNilAlgebra::build(50, 5), std::invalid_argument);
}
