#include "nilrep.h"

#include "nilrep/errors.hpp"
#include "nilrep/minconstruct.hpp"
#include "nilrep/rep.hpp"
#include "nilrep/rng.hpp"
#include "nilrep/searchk.hpp"
#include "nilrep/version.hpp"

#include <cstring>
#include <string>

using namespace nilrep;

struct nilrep_algebra {
    std::shared_ptr<const FreeNilAlgebra> alg;
};

struct nilrep_rep {
    GradedRep rep;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename F>
nilrep_status guarded(F&& f) {
    try {
        g_last_error.clear();
        return f();
    } catch (const BudgetExhaustedError& e) {
        g_last_error = e.what();
        return NILREP_ERR_BUDGET;
    } catch (const CertificationError& e) {
        g_last_error = e.what();
        return NILREP_ERR_CERT;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        if (g_last_error.find("guard") != std::string::npos)
            return NILREP_ERR_GUARD;
        return NILREP_ERR_INVALID;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return NILREP_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return NILREP_ERR_INTERNAL;
    }
}

Strategy parse_strategy(const char* s) {
    std::string v = s ? s : "random";
    if (v == "random")
        return Strategy::random;
    if (v == "recursive")
        return Strategy::recursive;
    throw std::invalid_argument("strategy must be \"random\" or \"recursive\"");
}

} // namespace

extern "C" {

const char* nilrep_version(void) {
    return kVersionString;
}

const char* nilrep_last_error(void) {
    return g_last_error.c_str();
}

void nilrep_string_free(char* s) {
    delete[] s;
}

nilrep_status nilrep_algebra_build(unsigned r, unsigned k, nilrep_algebra** out) {
    return guarded([&] {
        if (!out)
            throw std::invalid_argument("out must not be NULL");
        *out = new nilrep_algebra{FreeNilAlgebra::build(r, k)};
        return NILREP_OK;
    });
}

void nilrep_algebra_free(nilrep_algebra* alg) {
    delete alg;
}

unsigned long long nilrep_algebra_dim(const nilrep_algebra* alg) {
    return alg ? alg->alg->dim() : 0;
}

nilrep_status nilrep_algebra_graded_dims(const nilrep_algebra* alg, unsigned long long* buf,
                                         size_t buflen, size_t* written) {
    return guarded([&] {
        if (!alg)
            throw std::invalid_argument("alg must not be NULL");
        const auto& dims = alg->alg->graded_dims();
        if (written)
            *written = dims.size();
        if (buf)
            for (size_t i = 0; i < dims.size() && i < buflen; ++i)
                buf[i] = dims[i];
        return NILREP_OK;
    });
}

nilrep_status nilrep_algebra_descriptor_json(const nilrep_algebra* alg, char** json_out) {
    return guarded([&] {
        if (!alg || !json_out)
            throw std::invalid_argument("alg and json_out must not be NULL");
        *json_out = dup_string(alg->alg->descriptor_json());
        return NILREP_OK;
    });
}

unsigned long long nilrep_mu_formula(unsigned r) {
    return r < 2 ? 0 : mu_formula(r);
}

unsigned long long nilrep_schur_bound(unsigned long long n) {
    return n == 0 ? 0 : schur_bound(n);
}

int nilrep_type_feasible(unsigned long long a, unsigned long long p, unsigned long long b,
                         unsigned r) {
    if (a == 0 || p == 0 || b == 0 || r == 0)
        return 0;
    return type_feasible(a, p, b, r) ? 1 : 0;
}

int nilrep_sab_conditions(unsigned long long a, unsigned long long b) {
    if (b == 0 || a < b)
        return 0;
    return sab_conditions(a, b) ? 1 : 0;
}

void nilrep_integer_square_roots(unsigned long long n, unsigned long long* a,
                                 unsigned long long* b) {
    SqrtPair p = integer_square_roots(n == 0 ? 1 : n);
    if (a)
        *a = p.a;
    if (b)
        *b = p.b;
}

void nilrep_triangular_rep(unsigned long long m, unsigned long long* n, unsigned long long* i0) {
    TriangularRep t = triangular_rep(m == 0 ? 1 : m);
    if (n)
        *n = t.n;
    if (i0)
        *i0 = t.i0;
}

nilrep_status nilrep_rep_pi0(unsigned r, nilrep_rep** out) {
    return guarded([&] {
        if (!out)
            throw std::invalid_argument("out must not be NULL");
        *out = new nilrep_rep{build_pi0(r)};
        return NILREP_OK;
    });
}

nilrep_status nilrep_rep_pi1(unsigned r, nilrep_rep** out) {
    return guarded([&] {
        if (!out)
            throw std::invalid_argument("out must not be NULL");
        *out = new nilrep_rep{build_pi1(r)};
        return NILREP_OK;
    });
}

nilrep_status nilrep_rep_from_json(const char* json, nilrep_rep** out) {
    return guarded([&] {
        if (!json || !out)
            throw std::invalid_argument("json and out must not be NULL");
        nlohmann::json j = nlohmann::json::parse(json, nullptr, false);
        if (j.is_discarded())
            throw std::invalid_argument("malformed JSON");
        *out = new nilrep_rep{GradedRep::from_json(j)};
        return NILREP_OK;
    });
}

nilrep_status nilrep_rep_to_json(const nilrep_rep* rep, char** json_out) {
    return guarded([&] {
        if (!rep || !json_out)
            throw std::invalid_argument("rep and json_out must not be NULL");
        *json_out = dup_string(rep->rep.to_json().dump(2));
        return NILREP_OK;
    });
}

void nilrep_rep_free(nilrep_rep* rep) {
    delete rep;
}

unsigned long long nilrep_rep_dimension(const nilrep_rep* rep) {
    return rep ? rep->rep.dimension() : 0;
}

nilrep_status nilrep_rep_report_json(const nilrep_rep* rep, int full_cross_check, int* ok,
                                     char** report_json_out) {
    return guarded([&] {
        if (!rep)
            throw std::invalid_argument("rep must not be NULL");
        RepReport report = certify(rep->rep, full_cross_check != 0);
        if (ok)
            *ok = (report.is_homomorphism && report.is_faithful) ? 1 : 0;
        if (report_json_out)
            *report_json_out = dup_string(report.to_json().dump(2));
        return NILREP_OK;
    });
}

nilrep_status nilrep_construct_minimal(unsigned r, const char* strategy, unsigned long long seed,
                                       long entry_bound, nilrep_rep** out,
                                       char** certificate_json_out) {
    return guarded([&] {
        if (!out)
            throw std::invalid_argument("out must not be NULL");
        BuildInfo info;
        GradedRep rep = build_minimal(r, parse_strategy(strategy), seed,
                                      entry_bound > 0 ? entry_bound : 99, &info);
        RepReport report = certify(rep, false);
        if (!report.is_homomorphism || !report.is_faithful)
            throw CertificationError("construct: certification failed");
        if (certificate_json_out) {
            nlohmann::ordered_json cert;
            cert["version"] = kVersionString;
            cert["r"] = r;
            cert["strategy"] = strategy ? strategy : "random";
            cert["seed"] = seed;
            cert["checks"] = {{"is_homomorphism", report.is_homomorphism},
                              {"is_faithful", report.is_faithful},
                              {"dimension_equals_formula", rep.dimension() == mu_formula(r)}};
            cert["det_nonzero"] = true;
            cert["epsilon"] = rational_to_string(info.epsilon);
            cert["attempts"] = info.attempts;
            cert["dimension"] = rep.dimension();
            cert["sab_trace"] = trace_to_json(info.sab_trace);
            *certificate_json_out = dup_string(cert.dump(2));
        }
        *out = new nilrep_rep{std::move(rep)};
        return NILREP_OK;
    });
}

nilrep_status nilrep_sab_json(unsigned long long a, unsigned long long b, const char* strategy,
                              unsigned long long seed, long entry_bound, char** sab_json_out) {
    return guarded([&] {
        if (!sab_json_out)
            throw std::invalid_argument("sab_json_out must not be NULL");
        Strategy s = parse_strategy(strategy);
        SabSequence seq = s == Strategy::random
                              ? random_sab(a, b, seed, entry_bound > 0 ? entry_bound : 99)
                              : recursive_sab(a, b, seed);
        nlohmann::ordered_json j = seq.to_json();
        auto cp = verify_column_property(seq, derive_seed(seed, {0xCE27}));
        nlohmann::ordered_json cert;
        cert["verify_sab"] = verify_sab(seq);
        cert["column_property"] = cp.ok;
        cert["column_property_mode"] = cp.exhaustive ? "exhaustive" : "probabilistic";
        cert["strategy"] = strategy ? strategy : "random";
        cert["seed"] = seed;
        j["certificate"] = std::move(cert);
        *sab_json_out = dup_string(j.dump(2));
        return NILREP_OK;
    });
}

nilrep_status nilrep_search_json(unsigned r, unsigned k, unsigned long long seed, unsigned trials,
                                 unsigned long long dim_budget, long entry_bound, int* found,
                                 char** result_json_out) {
    return guarded([&] {
        SearchConfig config;
        config.r = r;
        config.k = k;
        config.master_seed = seed;
        if (trials > 0)
            config.trials_per_profile = trials;
        if (dim_budget > 0)
            config.dim_budget = dim_budget;
        if (entry_bound > 0)
            config.entry_bound = entry_bound;
        SearchResult result = search_min_dim(config);
        if (found)
            *found = result.found ? 1 : 0;
        if (result_json_out)
            *result_json_out = dup_string(result.to_json(config).dump(2));
        return NILREP_OK;
    });
}

nilrep_status nilrep_reference_bounds_json(unsigned r, unsigned k, char** json_out) {
    return guarded([&] {
        if (!json_out)
            throw std::invalid_argument("json_out must not be NULL");
        *json_out = dup_string(reference_bounds_json(r, k).dump(2));
        return NILREP_OK;
    });
}

} // extern "C"
