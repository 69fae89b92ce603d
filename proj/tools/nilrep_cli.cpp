// nilrep command-line tool. Talks to the library exclusively through the
// C API in nilrep.h; all artifacts are exact-arithmetic JSON with embedded
// certificates and seeds so any published number is one command away from
// re-derivation.

#include <nilrep.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitFlags = 2;
constexpr int kExitCertification = 3;
constexpr int kExitBudget = 4;

int status_to_exit(nilrep_status s) {
    switch (s) {
    case NILREP_OK:
        return kExitOk;
    case NILREP_ERR_INVALID:
    case NILREP_ERR_GUARD:
        return kExitFlags;
    case NILREP_ERR_CERT:
        return kExitCertification;
    case NILREP_ERR_BUDGET:
        return kExitBudget;
    default:
        return kExitInternal;
    }
}

int fail(nilrep_status s) {
    std::cerr << "error: " << nilrep_last_error() << "\n";
    return status_to_exit(s);
}

std::string take_string(char* s) {
    std::string out = s ? s : "";
    nilrep_string_free(s);
    return out;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

int write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open " << out_path << " for writing\n";
        return kExitInternal;
    }
    f << text;
    return kExitOk;
}

unsigned long long isqrt_ceil_u64(unsigned long long n) {
    if (n == 0)
        return 0;
    unsigned long long x = 0, bit = 1ULL << 62, v = n;
    while (bit > v)
        bit >>= 2;
    while (bit != 0) {
        if (v >= x + bit) {
            v -= x + bit;
            x = (x >> 1) + bit;
        } else {
            x >>= 1;
        }
        bit >>= 2;
    }
    return x * x == n ? x : x + 1;
}

std::optional<nlohmann::json> read_json_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        return std::nullopt;
    nlohmann::json j = nlohmann::json::parse(f, nullptr, false);
    if (j.is_discarded())
        return std::nullopt;
    return j;
}

int cmd_dim(unsigned r, unsigned k, const std::string& format) {
    nilrep_algebra* alg = nullptr;
    nilrep_status s = nilrep_algebra_build(r, k, &alg);
    if (s != NILREP_OK)
        return fail(s);
    std::vector<unsigned long long> dims(k);
    size_t written = 0;
    nilrep_algebra_graded_dims(alg, dims.data(), dims.size(), &written);
    unsigned long long total = nilrep_algebra_dim(alg);
    int rc = kExitOk;
    if (format == "json") {
        char* desc = nullptr;
        s = nilrep_algebra_descriptor_json(alg, &desc);
        if (s != NILREP_OK) {
            nilrep_algebra_free(alg);
            return fail(s);
        }
        nlohmann::ordered_json j = nlohmann::ordered_json::parse(take_string(desc));
        j["total"] = total;
        rc = write_output(j.dump(2) + "\n", "");
    } else {
        std::ostringstream os;
        os << "L_{" << r << "," << k << "}: total dimension " << total << ", graded (";
        for (size_t i = 0; i < written; ++i)
            os << (i ? ", " : "") << dims[i];
        os << ")\n";
        rc = write_output(os.str(), "");
    }
    nilrep_algebra_free(alg);
    return rc;
}

int cmd_mu(unsigned r, const std::string& format) {
    if (r < 2) {
        std::cerr << "error: need r >= 2\n";
        return kExitFlags;
    }
    unsigned long long mu = nilrep_mu_formula(r);
    unsigned long long branch_small = 2ULL * r - 1;
    unsigned long long branch_general = isqrt_ceil_u64(2ULL * r * (r - 1)) + 2;
    if (format == "json") {
        nlohmann::ordered_json j;
        j["r"] = r;
        j["mu"] = mu;
        j["branch_2r_minus_1"] = branch_small;
        j["branch_sqrt_plus_2"] = branch_general;
        return write_output(j.dump(2) + "\n", "");
    }
    std::ostringstream os;
    os << "mu(L_{" << r << ",2}) = " << mu << "  (2r-1 = " << branch_small
       << ", ceil(sqrt(2r(r-1)))+2 = " << branch_general << ")\n";
    return write_output(os.str(), "");
}

int cmd_construct(unsigned r, const std::string& strategy, std::uint64_t seed, long bound,
                  const std::string& out_path) {
    nilrep_rep* rep = nullptr;
    char* cert_raw = nullptr;
    nilrep_status s = nilrep_construct_minimal(r, strategy.c_str(), seed, bound, &rep, &cert_raw);
    if (s != NILREP_OK)
        return fail(s);
    char* rep_raw = nullptr;
    s = nilrep_rep_to_json(rep, &rep_raw);
    if (s != NILREP_OK) {
        nilrep_rep_free(rep);
        return fail(s);
    }
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(take_string(rep_raw));
    nlohmann::ordered_json cert = nlohmann::ordered_json::parse(take_string(cert_raw));
    std::ostringstream canon;
    canon << "construct|r=" << r << "|strategy=" << strategy << "|seed=" << seed
          << "|bound=" << bound;
    cert["input_hash"] = hex64(fnv1a(canon.str()));
    j["certificate"] = std::move(cert);
    nilrep_rep_free(rep);
    return write_output(j.dump(2) + "\n", out_path);
}

int cmd_verify(const std::string& in_path, bool full, const std::string& out_path) {
    auto j = read_json_file(in_path);
    if (!j) {
        std::cerr << "error: cannot read JSON from " << in_path << "\n";
        return kExitFlags;
    }
    nilrep_rep* rep = nullptr;
    nilrep_status s = nilrep_rep_from_json(j->dump().c_str(), &rep);
    if (s != NILREP_OK)
        return fail(s);
    int ok = 0;
    char* report_raw = nullptr;
    s = nilrep_rep_report_json(rep, full ? 1 : 0, &ok, &report_raw);
    nilrep_rep_free(rep);
    if (s != NILREP_OK)
        return fail(s);
    std::string report = take_string(report_raw);
    int rc = write_output(report + "\n", out_path);
    if (rc != kExitOk)
        return rc;
    return ok ? kExitOk : kExitCertification;
}

int cmd_sab(unsigned long long a, unsigned long long b, const std::string& strategy,
            std::uint64_t seed, long bound, const std::string& out_path) {
    char* raw = nullptr;
    nilrep_status s = nilrep_sab_json(a, b, strategy.c_str(), seed, bound, &raw);
    if (s != NILREP_OK)
        return fail(s);
    return write_output(take_string(raw) + "\n", out_path);
}

std::string render_search_report(const nlohmann::json& result) {
    std::ostringstream os;
    unsigned r = result.at("r").get<unsigned>();
    unsigned k = result.at("k").get<unsigned>();
    os << "# Search report: L_{" << r << "," << k << "}\n\n";
    if (result.at("found").get<bool>()) {
        os << "Best certified faithful dimension: **" << result.at("best_dim").get<std::size_t>()
           << "** at profile " << result.at("best_profile").dump() << ".\n\n";
    } else {
        os << "No faithful representation found within the dimension budget.\n\n";
    }
    const auto& rb = result.at("reference_bounds");
    os << "| reference | value |\n|---|---|\n";
    os << "| (dim g)^k + 1 | " << rb.at("dim_power_plus_one") << " |\n";
    os << "| C(k + dim g, k) | " << rb.at("binomial") << " |\n";
    os << "| 1 + r + ... + r^k | " << rb.at("lo_ostheimer") << " |\n";
    os << "| ceil(2 sqrt(r^k/k)) | " << rb.at("center_asymptote_ceil") << " |\n\n";
    os << "Seed " << result.at("seed") << ", " << result.at("trials_run")
       << " trials, profiles attempted:\n\n";
    os << "| profile | trials | successes |\n|---|---|---|\n";
    for (const auto& p : result.at("per_profile"))
        os << "| " << p.at("profile").dump() << " | " << p.at("trials") << " | "
           << p.at("successes") << " |\n";
    return os.str();
}

int cmd_search(unsigned r, unsigned k, std::uint64_t seed, unsigned trials,
               unsigned long long budget, long bound, const std::string& out_path,
               const std::string& report_path) {
    int found = 0;
    char* raw = nullptr;
    nilrep_status s = nilrep_search_json(r, k, seed, trials, budget, bound, &found, &raw);
    if (s != NILREP_OK)
        return fail(s);
    std::string json_text = take_string(raw);
    int rc = write_output(json_text + "\n", out_path);
    if (rc != kExitOk)
        return rc;
    if (!report_path.empty()) {
        nlohmann::json result = nlohmann::json::parse(json_text);
        rc = write_output(render_search_report(result), report_path);
        if (rc != kExitOk)
            return rc;
    }
    return found ? kExitOk : kExitBudget;
}

int cmd_report(const std::vector<std::string>& result_files, const std::string& out_path) {
    std::ostringstream os;
    os << "# nilrep summary\n\n";
    os << "## Minimal faithful dimension of L_{r,2}\n\n";
    os << "| r | mu(L_{r,2}) |\n|---|---|\n";
    for (unsigned r = 2; r <= 16; ++r)
        os << "| " << r << " | " << nilrep_mu_formula(r) << " |\n";
    os << "\n## Step k >= 3: search results vs reference values\n\n";
    os << "| r | k | found dim | (dim g)^k+1 | C(k+dim g,k) | 1+r+...+r^k | "
          "ceil(2 sqrt(r^k/k)) |\n|---|---|---|---|---|---|---|\n";

    struct Row {
        unsigned r, k;
        std::string found = "-";
    };
    std::vector<Row> rows;
    for (unsigned k = 3; k <= 4; ++k)
        for (unsigned r = 2; r <= 10; ++r)
            rows.push_back({r, k});
    for (const auto& path : result_files) {
        auto j = read_json_file(path);
        if (!j) {
            std::cerr << "error: cannot read JSON from " << path << "\n";
            return kExitFlags;
        }
        unsigned r = j->at("r").get<unsigned>();
        unsigned k = j->at("k").get<unsigned>();
        std::string found =
            j->at("found").get<bool>() ? std::to_string(j->at("best_dim").get<std::size_t>()) : "-";
        bool matched = false;
        for (auto& row : rows)
            if (row.r == r && row.k == k) {
                row.found = found;
                matched = true;
            }
        if (!matched)
            rows.push_back({r, k, found});
    }
    for (const auto& row : rows) {
        char* raw = nullptr;
        nilrep_status s = nilrep_reference_bounds_json(row.r, row.k, &raw);
        if (s != NILREP_OK)
            return fail(s);
        nlohmann::json rb = nlohmann::json::parse(take_string(raw));
        os << "| " << row.r << " | " << row.k << " | " << row.found << " | "
           << rb.at("dim_power_plus_one") << " | " << rb.at("binomial") << " | "
           << rb.at("lo_ostheimer") << " | " << rb.at("center_asymptote_ceil") << " |\n";
    }
    return write_output(os.str(), out_path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact construction and certification of minimal faithful "
                 "nilrepresentations of free nilpotent Lie algebras"};
    app.require_subcommand(1);

    unsigned r = 2, k = 2;
    std::uint64_t seed = 1;
    long bound = 0;
    unsigned trials = 0;
    unsigned long long a = 1, b = 1, budget = 0;
    std::string strategy = "random", format = "pretty", out_path, in_path, report_path;
    std::vector<std::string> result_files;
    bool full = false;

    auto* dim = app.add_subcommand("dim", "graded and total dimensions of L_{r,k}");
    dim->add_option("--r", r, "rank")->required();
    dim->add_option("--k", k, "nilpotency step")->required();
    dim->add_option("--format", format, "json|pretty")->check(CLI::IsMember({"json", "pretty"}));

    auto* mu = app.add_subcommand("mu", "closed formula for the minimal faithful dimension");
    mu->add_option("--r", r, "rank")->required();
    mu->add_option("--format", format, "json|pretty")->check(CLI::IsMember({"json", "pretty"}));

    auto* construct =
        app.add_subcommand("construct", "build a certified minimal faithful representation");
    construct->add_option("--r", r, "rank")->required();
    construct->add_option("--strategy", strategy, "random|recursive")
        ->check(CLI::IsMember({"random", "recursive"}));
    construct->add_option("--seed", seed, "master seed");
    construct->add_option("--bound", bound, "entry bound for sampling");
    construct->add_option("--out", out_path, "output file (stdout when omitted)");

    auto* verify = app.add_subcommand("verify", "re-certify a representation JSON");
    verify->add_option("--in", in_path, "representation JSON file")->required();
    verify->add_flag("--full", full, "also run the full-injectivity cross-check");
    verify->add_option("--out", out_path, "report file (stdout when omitted)");

    auto* sab = app.add_subcommand("sab", "build a certified product-basis sequence");
    sab->add_option("--a", a, "rows")->required();
    sab->add_option("--b", b, "cols")->required();
    sab->add_option("--strategy", strategy, "random|recursive")
        ->check(CLI::IsMember({"random", "recursive"}));
    sab->add_option("--seed", seed, "master seed");
    sab->add_option("--bound", bound, "entry bound for sampling");
    sab->add_option("--out", out_path, "output file (stdout when omitted)");

    auto* search = app.add_subcommand("search", "minimal-dimension random search for step k");
    search->add_option("--r", r, "rank")->required();
    search->add_option("--k", k, "nilpotency step")->required();
    search->add_option("--seed", seed, "master seed");
    search->add_option("--trials", trials, "trials per profile");
    search->add_option("--budget", budget, "maximal total dimension");
    search->add_option("--bound", bound, "entry bound for sampling");
    search->add_option("--out", out_path, "result file (stdout when omitted)");
    search->add_option("--report", report_path, "also write a markdown report");

    auto* report = app.add_subcommand("report", "summary tables, optionally merging search results");
    report->add_option("--results", result_files, "search result JSON files");
    report->add_option("--out", out_path, "markdown file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e);
            return kExitOk;
        }
        app.exit(e);
        return kExitFlags;
    }

    try {
        if (dim->parsed())
            return cmd_dim(r, k, format);
        if (mu->parsed())
            return cmd_mu(r, format);
        if (construct->parsed())
            return cmd_construct(r, strategy, seed, bound, out_path);
        if (verify->parsed())
            return cmd_verify(in_path, full, out_path);
        if (sab->parsed())
            return cmd_sab(a, b, strategy, seed, bound, out_path);
        if (search->parsed())
            return cmd_search(r, k, seed, trials, budget, bound, out_path, report_path);
        if (report->parsed())
            return cmd_report(result_files, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitFlags;
}
