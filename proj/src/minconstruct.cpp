#include "nilrep/minconstruct.hpp"

#include "nilrep/errors.hpp"
#include "nilrep/rng.hpp"

#include <algorithm>
#include <string>

namespace nilrep {

SqrtPair integer_square_roots(unsigned long long n) {
    if (n == 0)
        throw std::invalid_argument("integer_square_roots: need n >= 1");
    unsigned long long a = isqrt_ceil(n);
    unsigned long long b = (a * (a - 1) >= n) ? a - 1 : a;
    return {a, b};
}

TriangularRep triangular_rep(unsigned long long m) {
    if (m == 0)
        throw std::invalid_argument("triangular_rep: need m >= 1");
    unsigned long long n = (isqrt_floor(8 * m + 1) - 1) / 2;
    unsigned long long i0 = m - n * (n + 1) / 2;
    if (i0 > n)
        throw std::logic_error("triangular_rep: internal inconsistency");
    return {n, i0};
}

bool sab_conditions(unsigned long long a, unsigned long long b) {
    if (b == 0 || a < b)
        throw std::invalid_argument("sab_conditions: need a >= b >= 1");
    if (a != b && a != b + 1)
        return false;
    TriangularRep t = triangular_rep(a * b);
    if (a == b && t.i0 > b)
        return false;
    return true;
}

std::vector<RatMatrix> sab_products(const SabSequence& seq) {
    if (seq.A.size() != seq.n || seq.B.size() != seq.n || seq.A_prime.size() != 1)
        throw std::invalid_argument("sab_products: sequence shape mismatch");
    for (const auto& m : seq.A)
        if (m.rows() != seq.a || m.cols() != 2)
            throw std::invalid_argument("sab_products: A matrices must be a x 2");
    if (seq.a_prime().rows() != seq.a || seq.a_prime().cols() != 2)
        throw std::invalid_argument("sab_products: A' must be a x 2");
    for (const auto& m : seq.B)
        if (m.rows() != 2 || m.cols() != seq.b)
            throw std::invalid_argument("sab_products: B matrices must be 2 x b");

    std::vector<RatMatrix> products;
    for (std::size_t i = 1; i <= seq.n; ++i) {
        for (std::size_t j = 1; j <= i; ++j)
            products.push_back(seq.A[i - 1] * seq.B[j - 1]);
        if (i == seq.i0)
            for (std::size_t j = 1; j <= seq.i0; ++j)
                products.push_back(seq.a_prime() * seq.B[j - 1]);
    }
    // i0 == 0 means the primed row carries no products
    if (products.size() != seq.a * seq.b)
        throw std::invalid_argument("sab_products: product count differs from a*b");
    return products;
}

bool verify_sab(const SabSequence& seq) {
    TriangularRep t = triangular_rep(seq.a * seq.b);
    if (t.n != seq.n || t.i0 != seq.i0)
        throw std::invalid_argument("verify_sab: (n, i0) is not the triangular representation of a*b");
    return is_independent(sab_products(seq));
}

namespace {

unsigned long long binom_capped(unsigned long long n, unsigned long long k,
                                unsigned long long cap) {
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    unsigned __int128 c = 1;
    for (unsigned long long i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;  // prefix products are the exact binomials
        if (c > cap)
            return cap + 1;
    }
    return static_cast<unsigned long long>(c);
}

std::vector<std::vector<Rational>> all_columns(const SabSequence& seq) {
    std::vector<std::vector<Rational>> cols;
    auto push_cols = [&](const RatMatrix& m) {
        for (std::size_t c = 0; c < 2; ++c) {
            std::vector<Rational> col(seq.a);
            for (std::size_t i = 0; i < seq.a; ++i)
                col[i] = m.at(i, c);
            cols.push_back(std::move(col));
        }
    };
    for (const auto& m : seq.A)
        push_cols(m);
    push_cols(seq.a_prime());
    return cols;
}

// Per-subset independence checker; integer columns go through the
// machine-word rank with a per-subset exact fallback.
class ColumnChecker {
public:
    ColumnChecker(std::vector<std::vector<Rational>> cols, std::size_t a)
        : cols_(std::move(cols)), a_(a) {
        fast_.reserve(cols_.size());
        for (const auto& col : cols_) {
            std::vector<long long> iv(a_);
            for (std::size_t i = 0; i < a_; ++i) {
                const Rational& e = col[i];
                if (e.get_den() != 1 || !e.get_num().fits_slong_p()) {
                    fast_.clear();
                    return;
                }
                iv[i] = e.get_num().get_si();
            }
            fast_.push_back(std::move(iv));
        }
    }

    bool independent(const std::vector<std::size_t>& pick) const {
        if (!fast_.empty()) {
            std::vector<std::vector<long long>> rows;
            rows.reserve(pick.size());
            for (auto p : pick)
                rows.push_back(fast_[p]);
            if (auto r = rank_small_integer(rows, a_))
                return *r == pick.size();
        }
        RatMatrix m(pick.size(), a_);
        for (std::size_t i = 0; i < pick.size(); ++i)
            for (std::size_t j = 0; j < a_; ++j)
                m.at(i, j) = cols_[pick[i]][j];
        return rank(m) == pick.size();
    }

private:
    std::vector<std::vector<Rational>> cols_;
    std::vector<std::vector<long long>> fast_;
    std::size_t a_;
};

} // namespace

ColumnPropertyResult verify_column_property(const SabSequence& seq, std::uint64_t seed,
                                            unsigned long long max_exhaustive,
                                            unsigned samples, std::size_t subset_size) {
    const std::size_t b = subset_size == 0 ? seq.b : subset_size;
    ColumnChecker checker(all_columns(seq), seq.a);
    const std::size_t total = 2 * (seq.n + 1);
    ColumnPropertyResult result;
    if (b > seq.a) {
        // b vectors in K^a cannot be independent
        result.ok = false;
        result.exhaustive = true;
        return result;
    }
    if (binom_capped(total, b, max_exhaustive) <= max_exhaustive) {
        std::vector<std::size_t> pick(b);
        for (std::size_t i = 0; i < b; ++i)
            pick[i] = i;
        while (true) {
            if (!checker.independent(pick)) {
                result.ok = false;
                result.exhaustive = true;
                return result;
            }
            // next combination
            std::size_t i = b;
            while (i > 0 && pick[i - 1] == total - b + (i - 1))
                --i;
            if (i == 0)
                break;
            ++pick[i - 1];
            for (std::size_t j = i; j < b; ++j)
                pick[j] = pick[j - 1] + 1;
        }
        result.ok = true;
        result.exhaustive = true;
        return result;
    }
    SplitMix64 rng(seed);
    std::vector<std::size_t> indices(total);
    for (std::size_t i = 0; i < total; ++i)
        indices[i] = i;
    for (unsigned s = 0; s < samples; ++s) {
        for (std::size_t i = 0; i < b; ++i) {
            std::size_t j = i + static_cast<std::size_t>(rng.below(total - i));
            std::swap(indices[i], indices[j]);
        }
        std::vector<std::size_t> pick(indices.begin(), indices.begin() + b);
        if (!checker.independent(pick)) {
            result.ok = false;
            result.exhaustive = false;
            return result;
        }
    }
    result.ok = true;
    result.exhaustive = false;
    return result;
}

namespace {

RatMatrix random_matrix(std::size_t rows, std::size_t cols, SplitMix64& rng, long bound) {
    RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = static_cast<long>(rng.in_range(-bound, bound));
    return m;
}

} // namespace

SabSequence random_sab(std::size_t a, std::size_t b, std::uint64_t seed, long entry_bound,
                       unsigned max_attempts) {
    if (a == 0 || b == 0)
        throw std::invalid_argument("random_sab: need a, b >= 1");
    if (entry_bound < 1)
        throw std::invalid_argument("random_sab: entry bound must be >= 1");
    TriangularRep t = triangular_rep(a * b);
    for (unsigned attempt = 0; attempt < max_attempts; ++attempt) {
        SplitMix64 rng(derive_seed(seed, {attempt}));
        SabSequence seq;
        seq.a = a;
        seq.b = b;
        seq.n = t.n;
        seq.i0 = t.i0;
        for (std::size_t i = 0; i < t.n; ++i)
            seq.A.push_back(random_matrix(a, 2, rng, entry_bound));
        seq.A_prime.push_back(random_matrix(a, 2, rng, entry_bound));
        for (std::size_t i = 0; i < t.n; ++i)
            seq.B.push_back(random_matrix(2, b, rng, entry_bound));
        if (!verify_sab(seq))
            continue;
        auto cp = verify_column_property(seq, derive_seed(seed, {attempt, 0xC01}));
        if (!cp.ok)
            continue;
        SabTraceLevel level;
        level.a = a;
        level.b = b;
        level.n = t.n;
        level.i0 = t.i0;
        level.case_id = 0;
        level.method = "random";
        level.attempts = attempt + 1;
        level.verified = true;
        level.column_property = cp.ok;
        level.column_property_exhaustive = cp.exhaustive;
        seq.trace.push_back(level);
        return seq;
    }
    throw BudgetExhaustedError("random_sab: attempts exhausted for a=" + std::to_string(a) +
                               ", b=" + std::to_string(b) +
                               " (pair likely infeasible or entry bound too small)");
}

namespace {

RatMatrix pad_to_rows(const RatMatrix& m, std::size_t rows) {
    RatMatrix out(rows, m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out.at(i, j) = m.at(i, j);
    return out;
}

// Places a pad x 2 block in the bottom rows of an otherwise zero a x 2
// matrix. The explicit pivot matrices of every case have this shape.
RatMatrix explicit_from_block(std::size_t a, const RatMatrix& block) {
    RatMatrix out(a, 2);
    const std::size_t pad = block.rows();
    for (std::size_t i = 0; i < pad; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            out.at(a - pad + i, j) = block.at(i, j);
    return out;
}

struct CasePlan {
    int case_id = 0;
    std::size_t child_a = 0, child_b = 0;
    std::size_t child_n = 0, child_i0 = 0;
    std::size_t i1 = 0;  // 1-based pivot; 0 means no pivot (case 4)
    std::size_t pad = 1;
};

CasePlan plan_case(std::size_t a, std::size_t b, std::size_t n, std::size_t i0) {
    if (2 * b <= i0 || b >= n || n >= 2 * b)
        throw std::logic_error("plan_case: b < n < 2b must hold on recursion inputs");
    CasePlan p;
    if (a == b + 1 && 2 * b - i0 < n) {
        p.case_id = 1;
        p.i1 = 2 * b - i0;
        p.child_a = b;
        p.child_b = b - 1;
        p.child_n = n - 1;
        p.child_i0 = n - p.i1;
        p.pad = 2;
    } else if (a == b + 1) {
        p.case_id = 2;
        p.i1 = b - i0;
        p.child_a = b;
        p.child_b = b;
        p.child_n = n - 1;
        p.child_i0 = n - p.i1;
        p.pad = 1;
    } else if (i0 < b) {
        p.case_id = 3;
        p.i1 = b - i0;
        p.child_a = b;
        p.child_b = a - 1;
        p.child_n = n - 1;
        p.child_i0 = n - p.i1;
        p.pad = 1;
    } else {
        p.case_id = 4;
        p.i1 = 0;
        p.child_a = b;
        p.child_b = a - 1;
        p.child_n = n;
        p.child_i0 = 0;
        p.pad = 1;
    }
    return p;
}

// Literal pivot blocks (bottom pad x 2 of A_{i1} and A'_{i0}).
RatMatrix literal_u_block(const CasePlan& p) {
    RatMatrix u(p.pad, 2);
    u.at(0, 1) = 1;  // case 1: row a-1; cases 2/3: row a
    return u;
}

RatMatrix literal_v_block(const CasePlan& p) {
    RatMatrix v(p.pad, 2);
    v.at(0, 0) = 1;
    if (p.pad == 2)
        v.at(1, 0) = 1;
    return v;
}

SabSequence apply_case_transform(const CasePlan& p, std::size_t a, std::size_t b, std::size_t n,
                                 std::size_t i0, const SabSequence& child,
                                 const RatMatrix& u_block, const RatMatrix& v_block) {
    if (child.n != p.child_n || child.i0 != p.child_i0 || child.a != p.child_a ||
        child.b != p.child_b)
        throw CertificationError("recursive_sab: child shape disagrees with the case analysis");

    SabSequence out;
    out.a = a;
    out.b = b;
    out.n = n;
    out.i0 = i0;
    out.A.reserve(n);
    out.B.reserve(n);
    if (p.case_id == 4) {
        for (std::size_t i = 1; i <= n; ++i) {
            out.B.push_back(child.A[n - i].transpose());
            out.A.push_back(pad_to_rows(child.B[n - i].transpose(), a));
        }
        out.A_prime.push_back(explicit_from_block(a, v_block));
        return out;
    }
    for (std::size_t i = 1; i <= n; ++i) {
        if (i < p.i1) {
            out.B.push_back(child.A[n - i - 1].transpose());
            out.A.push_back(pad_to_rows(child.B[n - i - 1].transpose(), a));
        } else if (i == p.i1) {
            out.B.push_back(child.a_prime().transpose());
            out.A.push_back(explicit_from_block(a, u_block));
        } else {
            out.B.push_back(child.A[n - i].transpose());
            out.A.push_back(pad_to_rows(child.B[n - i].transpose(), a));
        }
    }
    out.A_prime.push_back(explicit_from_block(a, v_block));
    return out;
}

} // namespace

SabSequence recursive_sab(std::size_t a, std::size_t b, std::uint64_t seed) {
    if (!sab_conditions(a, b))
        throw std::invalid_argument("recursive_sab: conditions fail for a=" + std::to_string(a) +
                                    ", b=" + std::to_string(b));
    if (a <= 4) {
        // Base of the induction, pinned to fixed seeds so the construction
        // is reproducible independently of the caller.
        SabSequence base = random_sab(a, b, derive_seed(0xBA5EULL, {a, b}), 9, 200);
        base.trace.front().method = "random-base";
        return base;
    }

    TriangularRep t = triangular_rep(a * b);
    CasePlan plan = plan_case(a, b, t.n, t.i0);

    // The induction consumes subsets of the child's columns sized by the
    // parent's b.
    auto child_columns = [&](const SabSequence& c, std::uint64_t s) {
        return verify_column_property(c, s, 20000, 2000, b);
    };

    SabSequence child = recursive_sab(plan.child_a, plan.child_b, derive_seed(seed, {1}));
    // The chain below documents the validated case analysis even when the
    // transform input is re-drawn.
    std::vector<SabTraceLevel> chain_trace = child.trace;
    bool resampled = false;
    ColumnPropertyResult gate = child_columns(child, derive_seed(seed, {5}));
    if (!gate.ok) {
        // The inductive set is Zariski open, so a generic member satisfies
        // the column property on top of the basis property. Recursively
        // transformed children contain the explicit pivot matrices and
        // never do, hence the generic re-choice.
        for (unsigned attempt = 0; attempt < 10; ++attempt) {
            child = random_sab(plan.child_a, plan.child_b, derive_seed(seed, {2, attempt}), 99, 25);
            gate = child_columns(child, derive_seed(seed, {5, attempt}));
            if (gate.ok)
                break;
        }
        resampled = true;
    }

    SabTraceLevel level;
    level.a = a;
    level.b = b;
    level.n = t.n;
    level.i0 = t.i0;
    level.case_id = plan.case_id;
    level.child_resampled = resampled;
    // what the induction needed on its input
    level.column_property = gate.ok;
    level.column_property_exhaustive = gate.exhaustive;

    // In case 1 the explicit rows contribute i1 + i0 = 2b products whose
    // bottom-two-row parts split into groups of sizes i1 and i0 that must
    // be independent separately; with the unit-pattern blocks that is
    // possible only when i0 = b. Skip the doomed attempt otherwise.
    const bool literal_feasible = plan.case_id != 1 || t.i0 == b;

    bool certified = false;
    SabSequence out = apply_case_transform(plan, a, b, t.n, t.i0, child, literal_u_block(plan),
                                           literal_v_block(plan));
    if (literal_feasible && verify_sab(out)) {
        level.method = "literal";
        certified = true;
    } else {
        // The unit-pattern pivot blocks are not generic enough for every
        // (a,b); re-draw them inside the same construction until the level
        // certifies.
        for (unsigned attempt = 0; attempt < 30 && !certified; ++attempt) {
            SplitMix64 rng(derive_seed(seed, {3, attempt}));
            RatMatrix u = random_matrix(plan.pad, 2, rng, 9);
            RatMatrix v = random_matrix(plan.pad, 2, rng, 9);
            out = apply_case_transform(plan, a, b, t.n, t.i0, child, u, v);
            if (verify_sab(out)) {
                level.method = "generic-pivot";
                level.attempts = attempt + 1;
                certified = true;
            }
        }
        if (!certified) {
            out = random_sab(a, b, derive_seed(seed, {4}), 99, 25);
            level.method = "fallback-random";
            level.attempts = out.trace.front().attempts;
            certified = true;
        }
    }
    if (!certified)
        throw CertificationError("recursive_sab: level failed certification");
    level.verified = true;

    std::vector<SabTraceLevel> trace;
    trace.push_back(level);
    trace.insert(trace.end(), chain_trace.begin(), chain_trace.end());
    out.trace = std::move(trace);
    return out;
}

XYSequence build_xy(unsigned r, const SabSequence& seq,
                    const std::vector<Rational>& epsilon_candidates) {
    if (r < 2)
        throw std::invalid_argument("build_xy: need r >= 2");
    if (seq.n != static_cast<std::size_t>(r) - 1)
        throw std::invalid_argument("build_xy: sequence must have n = r-1");
    if (!verify_sab(seq))
        throw std::invalid_argument("build_xy: sequence fails verify_sab");

    static const std::vector<Rational> default_eps = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    const std::vector<Rational>& candidates =
        epsilon_candidates.empty() ? default_eps : epsilon_candidates;

    for (const Rational& eps : candidates) {
        if (eps == 0)
            continue;
        XYSequence xy;
        xy.r = r;
        xy.a = seq.a;
        xy.b = seq.b;
        xy.epsilon = eps;
        xy.trace = seq.trace;
        // A'_{i0} is dropped, A_1..A_n renamed to A_2..A_{n+1}, A_1 = 0 and
        // B_r = 0; X_i = eps^i A_i scales rows so that all commutator
        // images become independent for a suitable eps.
        Rational power = eps;
        xy.X.push_back(RatMatrix(seq.a, 2));
        for (unsigned i = 2; i <= r; ++i) {
            power *= eps;
            xy.X.push_back(power * seq.A[i - 2]);
        }
        for (unsigned i = 1; i <= r - 1; ++i)
            xy.Y.push_back(seq.B[i - 1]);
        xy.Y.push_back(RatMatrix(2, seq.b));

        std::vector<RatMatrix> z;
        for (unsigned i = 1; i <= r; ++i)
            for (unsigned j = i + 1; j <= r; ++j)
                z.push_back(xy_commutator_image(xy, i, j));
        if (is_independent(z))
            return xy;
    }
    throw BudgetExhaustedError("build_xy: epsilon candidates exhausted");
}

RatMatrix xy_commutator_image(const XYSequence& xy, unsigned i, unsigned j) {
    if (i == 0 || j == 0 || i > xy.r || j > xy.r || i >= j)
        throw std::invalid_argument("xy_commutator_image: need 1 <= i < j <= r");
    return xy.X[i - 1] * xy.Y[j - 1] - xy.X[j - 1] * xy.Y[i - 1];
}

GradedRep assemble(const XYSequence& xy) {
    auto alg = FreeNilAlgebra::build(xy.r, 2);
    BlockProfile profile{{xy.a, 2, xy.b}};
    std::vector<std::vector<RatMatrix>> blocks;
    for (unsigned i = 0; i < xy.r; ++i)
        blocks.push_back({xy.X[i], xy.Y[i]});
    GradedRep rep = GradedRep::extend_generators(alg, std::move(profile), std::move(blocks));

    // The center image of Z_ij must be exactly the commutator image in the
    // top-right a x b block.
    const auto center = alg->center_basis_ids();
    std::size_t t = 0;
    for (unsigned i = 1; i <= xy.r; ++i)
        for (unsigned j = i + 1; j <= xy.r; ++j) {
            if (rep.corner_block(center[t]) != xy_commutator_image(xy, i, j))
                throw CertificationError("assemble: center image disagrees with X_i Y_j - X_j Y_i");
            ++t;
        }

    if (!is_homomorphism(rep).ok)
        throw CertificationError("assemble: homomorphism check failed");
    if (!is_faithful(rep).ok)
        throw CertificationError("assemble: faithfulness check failed");
    return rep;
}

GradedRep build_minimal(unsigned r, Strategy strategy, std::uint64_t seed, long entry_bound,
                        BuildInfo* info) {
    if (r < 2)
        throw std::invalid_argument("build_minimal: need r >= 2");
    if (info) {
        info->strategy = strategy;
        info->seed = seed;
        info->epsilon = 1;
        info->attempts = 0;
        info->sab_trace.clear();
    }
    GradedRep rep = [&] {
        if (r == 2) {
            auto alg = FreeNilAlgebra::build(2, 2);
            BlockProfile profile{{1, 1, 1}};
            RatMatrix one(1, 1), zero(1, 1);
            one.at(0, 0) = 1;
            std::vector<std::vector<RatMatrix>> blocks = {{one, zero}, {zero, one}};
            return GradedRep::extend_generators(alg, std::move(profile), std::move(blocks));
        }
        if (r == 3)
            return build_pi1(3);
        SqrtPair p = integer_square_roots(static_cast<unsigned long long>(r) * (r - 1) / 2);
        SabSequence seq = strategy == Strategy::random
                              ? random_sab(p.a, p.b, seed, entry_bound)
                              : recursive_sab(p.a, p.b, seed);
        XYSequence xy = build_xy(r, seq);
        if (info) {
            info->epsilon = xy.epsilon;
            info->attempts = seq.trace.empty() ? 0 : seq.trace.front().attempts;
            info->sab_trace = seq.trace;
        }
        return assemble(xy);
    }();
    if (rep.dimension() != mu_formula(r))
        throw CertificationError("build_minimal: dimension disagrees with the closed formula");
    if (r <= 3) {
        if (!is_homomorphism(rep).ok || !is_faithful(rep).ok)
            throw CertificationError("build_minimal: certification failed");
    }
    return rep;
}

nlohmann::ordered_json trace_to_json(const std::vector<SabTraceLevel>& trace) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& l : trace) {
        nlohmann::ordered_json j;
        j["a"] = l.a;
        j["b"] = l.b;
        j["n"] = l.n;
        j["i0"] = l.i0;
        j["case"] = l.case_id;
        j["method"] = l.method;
        j["attempts"] = l.attempts;
        j["child_resampled"] = l.child_resampled;
        j["verified"] = l.verified;
        j["column_property"] = l.column_property;
        j["column_property_exhaustive"] = l.column_property_exhaustive;
        out.push_back(std::move(j));
    }
    return out;
}

nlohmann::ordered_json SabSequence::to_json() const {
    nlohmann::ordered_json j;
    j["a"] = a;
    j["b"] = b;
    j["n"] = n;
    j["i0"] = i0;
    nlohmann::ordered_json as = nlohmann::ordered_json::array();
    for (const auto& m : A)
        as.push_back(matrix_to_json(m));
    j["A"] = std::move(as);
    j["A_prime"] = matrix_to_json(a_prime());
    nlohmann::ordered_json bs = nlohmann::ordered_json::array();
    for (const auto& m : B)
        bs.push_back(matrix_to_json(m));
    j["B"] = std::move(bs);
    j["trace"] = trace_to_json(trace);
    return j;
}

SabSequence SabSequence::from_json(const nlohmann::json& j) {
    SabSequence seq;
    seq.a = j.at("a").get<std::size_t>();
    seq.b = j.at("b").get<std::size_t>();
    seq.n = j.at("n").get<std::size_t>();
    seq.i0 = j.at("i0").get<std::size_t>();
    for (const auto& m : j.at("A"))
        seq.A.push_back(matrix_from_json(m));
    seq.A_prime.push_back(matrix_from_json(j.at("A_prime")));
    for (const auto& m : j.at("B"))
        seq.B.push_back(matrix_from_json(m));
    return seq;
}

} // namespace nilrep
