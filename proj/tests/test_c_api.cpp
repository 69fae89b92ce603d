#include <nilrep.h>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <string>

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    nilrep_string_free(s);
    return out;
}

} // namespace

TEST_CASE("C API: algebra lifecycle") {
    nilrep_algebra* alg = nullptr;
    REQUIRE(nilrep_algebra_build(3, 2, &alg) == NILREP_OK);
    CHECK(nilrep_algebra_dim(alg) == 6);
    unsigned long long dims[4] = {0, 0, 0, 0};
    size_t written = 0;
    CHECK(nilrep_algebra_graded_dims(alg, dims, 4, &written) == NILREP_OK);
    CHECK(written == 2);
    CHECK(dims[0] == 3);
    CHECK(dims[1] == 3);
    char* desc = nullptr;
    REQUIRE(nilrep_algebra_descriptor_json(alg, &desc) == NILREP_OK);
    auto j = nlohmann::json::parse(take(desc));
    CHECK(j["basis"].size() == 6);
    nilrep_algebra_free(alg);

    nilrep_algebra* bad = nullptr;
    CHECK(nilrep_algebra_build(1, 2, &bad) == NILREP_ERR_INVALID);
    CHECK(std::string(nilrep_last_error()).find("r >= 2") != std::string::npos);
    CHECK(nilrep_algebra_build(50, 5, &bad) == NILREP_ERR_GUARD);
}

TEST_CASE("C API: formulas") {
    CHECK(nilrep_mu_formula(6) == 10);
    CHECK(nilrep_mu_formula(16) == 24);
    CHECK(nilrep_schur_bound(10) == 6);
    CHECK(nilrep_type_feasible(3, 1, 3, 4) == 1);
    CHECK(nilrep_type_feasible(2, 1, 2, 4) == 0);
    CHECK(nilrep_sab_conditions(6, 5) == 1);
    CHECK(nilrep_sab_conditions(13, 13) == 0);
    unsigned long long a = 0, b = 0;
    nilrep_integer_square_roots(26, &a, &b);
    CHECK(a == 6);
    CHECK(b == 5);
    unsigned long long n = 0, i0 = 0;
    nilrep_triangular_rep(30, &n, &i0);
    CHECK(n == 7);
    CHECK(i0 == 2);
}

TEST_CASE("C API: pi0/pi1 and reports") {
    nilrep_rep* rep = nullptr;
    REQUIRE(nilrep_rep_pi1(5, &rep) == NILREP_OK);
    CHECK(nilrep_rep_dimension(rep) == 9);
    int ok = 0;
    char* report_raw = nullptr;
    REQUIRE(nilrep_rep_report_json(rep, 1, &ok, &report_raw) == NILREP_OK);
    CHECK(ok == 1);
    auto report = nlohmann::json::parse(take(report_raw));
    CHECK(report["is_homomorphism"] == true);
    CHECK(report["is_faithful"] == true);
    CHECK(report["dimension"] == 9);
    nilrep_rep_free(rep);
}

TEST_CASE("C API: construct, serialize, reload, re-certify") {
    nilrep_rep* rep = nullptr;
    char* cert_raw = nullptr;
    REQUIRE(nilrep_construct_minimal(4, "random", 1, 99, &rep, &cert_raw) == NILREP_OK);
    CHECK(nilrep_rep_dimension(rep) == 7);
    auto cert = nlohmann::json::parse(take(cert_raw));
    CHECK(cert["checks"]["is_faithful"] == true);
    CHECK(cert["det_nonzero"] == true);

    char* rep_raw = nullptr;
    REQUIRE(nilrep_rep_to_json(rep, &rep_raw) == NILREP_OK);
    std::string rep_json = take(rep_raw);
    nilrep_rep_free(rep);

    nilrep_rep* back = nullptr;
    REQUIRE(nilrep_rep_from_json(rep_json.c_str(), &back) == NILREP_OK);
    int ok = 0;
    REQUIRE(nilrep_rep_report_json(back, 1, &ok, nullptr) == NILREP_OK);
    CHECK(ok == 1);
    nilrep_rep_free(back);

    CHECK(nilrep_rep_from_json("{not json", &back) == NILREP_ERR_INVALID);
}

TEST_CASE("C API: sab and search") {
    char* raw = nullptr;
    REQUIRE(nilrep_sab_json(4, 3, "recursive", 1, 99, &raw) == NILREP_OK);
    auto j = nlohmann::json::parse(take(raw));
    CHECK(j["certificate"]["verify_sab"] == true);

    CHECK(nilrep_sab_json(13, 13, "recursive", 1, 99, &raw) == NILREP_ERR_INVALID);
    CHECK(nilrep_sab_json(4, 3, "bogus", 1, 99, &raw) == NILREP_ERR_INVALID);

    int found = 0;
    REQUIRE(nilrep_search_json(2, 2, 1, 50, 0, 9, &found, &raw) == NILREP_OK);
    CHECK(found == 1);
    auto result = nlohmann::json::parse(take(raw));
    CHECK(result["best_dim"] == 3);

    REQUIRE(nilrep_reference_bounds_json(2, 3, &raw) == NILREP_OK);
    auto rb = nlohmann::json::parse(take(raw));
    CHECK(rb["lo_ostheimer"] == 15);
}

TEST_CASE("C API: version string") {
    CHECK(std::string(nilrep_version()).find("nilrep") == 0);
}
