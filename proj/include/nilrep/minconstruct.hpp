#pragma once

#include "nilrep/rep.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace nilrep {

// The integer square roots of n: a = ceil(sqrt(n)), b = a-1 when
// a(a-1) >= n, else b = a. They satisfy ab >= n and a+b = ceil(2*sqrt(n)),
// the minimum of c+d over cd >= n.
struct SqrtPair {
    unsigned long long a, b;
};
SqrtPair integer_square_roots(unsigned long long n);

// The unique (n, i0) with m = n(n+1)/2 + i0 and 0 <= i0 <= n.
struct TriangularRep {
    unsigned long long n, i0;
};
TriangularRep triangular_rep(unsigned long long m);

// Sufficient conditions for S_{a,b} to be non-empty:
// (1) a = b or a = b+1, and (2) i0 <= b whenever a = b.
bool sab_conditions(unsigned long long a, unsigned long long b);

// How a sequence (or one recursion level) was obtained.
struct SabTraceLevel {
    std::size_t a = 0, b = 0, n = 0, i0 = 0;
    int case_id = 0;             // 0 = base/random; 1..4 = recursion case
    std::string method;          // "random", "literal", "generic-pivot", "fallback-random"
    unsigned attempts = 0;       // sampling attempts (random paths)
    bool child_resampled = false;
    bool verified = false;       // verify_sab at this level
    bool column_property = false;
    bool column_property_exhaustive = false;
};

// A member of S_{a,b}: matrices A_1..A_n, A'_{i0} (a x 2) and B_1..B_n
// (2 x b) whose triangular family of products is a basis of M_{a,b}.
struct SabSequence {
    std::size_t a = 0, b = 0, n = 0, i0 = 0;
    std::vector<RatMatrix> A;
    std::vector<RatMatrix> A_prime;  // exactly one matrix; vector to allow default construction
    std::vector<RatMatrix> B;
    std::vector<SabTraceLevel> trace;  // root level first

    const RatMatrix& a_prime() const { return A_prime.front(); }

    nlohmann::ordered_json to_json() const;
    static SabSequence from_json(const nlohmann::json& j);
};

// The triangular family {A_i B_j : j <= i} plus {A'_{i0} B_j : j <= i0},
// in row order A_1, ..., A_{i0}, A'_{i0}, A_{i0+1}, ..., A_n. Throws when
// the count differs from a*b.
std::vector<RatMatrix> sab_products(const SabSequence& seq);

// True iff the product family is a basis of M_{a,b}.
bool verify_sab(const SabSequence& seq);

struct ColumnPropertyResult {
    bool ok = false;
    bool exhaustive = true;  // false when subset sampling was used
};

// Checks that every b-element subset of the 2(n+1) columns of the
// A-matrices is linearly independent. Exhaustive while the subset count
// stays below max_exhaustive, otherwise seeded random sampling.
// subset_size overrides b: the induction consumes a child sequence with
// subsets sized by the parent's b, not the child's own.
ColumnPropertyResult verify_column_property(const SabSequence& seq,
                                            std::uint64_t seed = 1,
                                            unsigned long long max_exhaustive = 1000000,
                                            unsigned samples = 10000,
                                            std::size_t subset_size = 0);

// Samples integer entries in [-entry_bound, entry_bound] until both
// verify_sab and verify_column_property pass. Deterministic given seed.
SabSequence random_sab(std::size_t a, std::size_t b, std::uint64_t seed,
                       long entry_bound = 99, unsigned max_attempts = 25);

// Certified recursive construction following the inductive case analysis:
// compute the child size per case, obtain a child sequence, transform via
// transposition/renaming with the pivot i1 and the explicit pivot
// matrices, and certify with verify_sab at every level. Children are
// re-sampled generically when the recursively built one lacks the column
// property (the induction needs it on its input), and the explicit pivot
// blocks are re-drawn generically if the literal pattern fails
// certification; both events are recorded in the trace.
SabSequence recursive_sab(std::size_t a, std::size_t b, std::uint64_t seed = 1);

// Scaled sequences X_i = eps^i A_i (with A_1 = 0 after renaming) and
// Y_i = B_i (with B_r = 0) whose r(r-1)/2 commutator images
// X_i Y_j - X_j Y_i (i < j) are linearly independent in M_{a,b}.
struct XYSequence {
    unsigned r = 0;
    std::size_t a = 0, b = 0;
    std::vector<RatMatrix> X;  // a x 2
    std::vector<RatMatrix> Y;  // 2 x b
    Rational epsilon;
    std::vector<SabTraceLevel> trace;
};

XYSequence build_xy(unsigned r, const SabSequence& seq,
                    const std::vector<Rational>& epsilon_candidates = {});

// X_i Y_j - X_j Y_i for i < j.
RatMatrix xy_commutator_image(const XYSequence& xy, unsigned i, unsigned j);

// Assembles the type-(a,2,b) representation of L_{r,2} with generator i
// mapped to the block matrix with upper block X_i and lower block Y_i.
// Certifies homomorphism and faithfulness, and that the center image of
// Z_ij equals the commutator image above.
GradedRep assemble(const XYSequence& xy);

enum class Strategy { random, recursive };

struct BuildInfo {
    Strategy strategy = Strategy::random;
    std::uint64_t seed = 0;
    Rational epsilon;
    unsigned attempts = 0;  // sampling attempts of the top-level sequence
    std::vector<SabTraceLevel> sab_trace;
};

// Minimal-dimension certified faithful representation of L_{r,2}:
// dimension 3 for r = 2 (Heisenberg), 5 for r = 3, and
// ceil(sqrt(2r(r-1))) + 2 for r >= 4 via the full pipeline.
GradedRep build_minimal(unsigned r, Strategy strategy, std::uint64_t seed,
                        long entry_bound = 99, BuildInfo* info = nullptr);

nlohmann::ordered_json trace_to_json(const std::vector<SabTraceLevel>& trace);

} // namespace nilrep
