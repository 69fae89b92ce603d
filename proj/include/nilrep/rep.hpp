#pragma once

#include "nilrep/freenil.hpp"
#include "nilrep/matrix.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace nilrep {

// Diagonal block sizes (a_0, ..., a_k) of a strictly block-upper-triangular
// representation with only first-superdiagonal blocks populated by the
// generators.
struct BlockProfile {
    std::vector<std::size_t> dims;

    std::size_t total() const;
    std::size_t blocks() const { return dims.size(); }
};

// A representation of L_{r,k} given by generator images in block form,
// extended to all Hall basis elements by iterated commutators. Immutable
// after construction; the full basis images are cached eagerly since every
// certification pass reuses them.
class GradedRep {
public:
    // gen_blocks[i][j] is the block of generator i+1 mapping summand j+1
    // into summand j, of shape profile[j] x profile[j+1]. The extension is
    // well defined: strict block-triangularity with k+1 blocks kills all
    // (k+1)-fold products, so the generator images satisfy the defining
    // relations of L_{r,k}.
    static GradedRep extend_generators(std::shared_ptr<const FreeNilAlgebra> alg,
                                       BlockProfile profile,
                                       std::vector<std::vector<RatMatrix>> gen_blocks);

    const FreeNilAlgebra& algebra() const { return *alg_; }
    std::shared_ptr<const FreeNilAlgebra> algebra_ptr() const { return alg_; }
    const BlockProfile& profile() const { return profile_; }
    std::size_t dimension() const { return profile_.total(); }

    const RatMatrix& image(std::size_t basis_id) const { return images_.at(basis_id); }
    const std::vector<std::vector<RatMatrix>>& generator_blocks() const { return gen_blocks_; }

    // Top-right profile[0] x profile[k] corner of a basis image, where the
    // degree-k images live.
    RatMatrix corner_block(std::size_t basis_id) const;

    nlohmann::ordered_json to_json() const;
    static GradedRep from_json(const nlohmann::json& j);

    // Fault injection for the certification tests: a copy with one cached
    // basis image changed by delta at (row, col). Deliberately breaks the
    // homomorphism property; nothing outside the tests calls this.
    GradedRep with_perturbed_image(std::size_t basis_id, std::size_t row, std::size_t col,
                                   const Rational& delta) const;

private:
    GradedRep() = default;

    std::shared_ptr<const FreeNilAlgebra> alg_;
    BlockProfile profile_;
    std::vector<std::vector<RatMatrix>> gen_blocks_;
    std::vector<RatMatrix> images_;
};

struct HomCheck {
    bool ok = true;
    // offending basis pair when ok is false
    std::size_t witness_i = 0, witness_j = 0;
};

enum class FaithMode { center, full, both };

struct FaithCheck {
    bool ok = true;                   // center-criterion verdict
    std::optional<bool> full_ok;      // full-injectivity verdict when requested
    // vanishing combination over the center basis when not faithful
    std::vector<Rational> witness_combination;
    std::vector<std::string> witness_names;
};

struct RepReport {
    bool is_homomorphism = false;
    bool is_faithful = false;
    std::size_t dimension = 0;
    std::optional<std::array<std::size_t, 3>> type_triple;
    nlohmann::ordered_json witness;  // null when all checks pass

    nlohmann::ordered_json to_json() const;
};

// Exact check: [pi(b_i), pi(b_j)] = pi([b_i, b_j]) for all basis pairs.
HomCheck is_homomorphism(const GradedRep& rep);

// Faithfulness via the center criterion: the kernel is an ideal and every
// nonzero ideal of a nilpotent Lie algebra meets the center, so injectivity
// on the center suffices. FaithMode::both additionally runs the
// full-injectivity route for cross-checking; the two verdicts must agree.
// Precondition: rep passes is_homomorphism.
FaithCheck is_faithful(const GradedRep& rep, FaithMode mode = FaithMode::center);

// Runs both checks in order and assembles a report.
RepReport certify(const GradedRep& rep, bool full_cross_check = false);

// The classical faithful representation of L_{r,2} of type (r,1,r),
// dimension 2r+1: x_i down the middle column, x_{r+1-t} along the middle
// row, and the skew z-block in the top-right corner.
GradedRep build_pi0(unsigned r);

// The smaller faithful representation of L_{r,2} of type (r-1,1,r-1),
// dimension 2r-1: x_1 has no middle-row entry, x_r none in the column.
GradedRep build_pi1(unsigned r);

// Necessary conditions r <= p*min(a,b)+1 and r(r-1)/2 <= ab for a faithful
// type-(a,p,b) representation of L_{r,2}.
bool type_feasible(unsigned long long a, unsigned long long p, unsigned long long b, unsigned r);

// floor(sqrt(n)) in pure integer arithmetic.
unsigned long long isqrt_floor(unsigned long long n);
// smallest s with s*s >= n.
unsigned long long isqrt_ceil(unsigned long long n);

// ceil(2*sqrt(n-1)): the minimal faithful dimension of an abelian Lie
// algebra of dimension n.
unsigned long long schur_bound(unsigned long long n);

// mu(L_{r,2}): 3 for r=2, 5 for r=3, ceil(sqrt(2r(r-1))) + 2 for r >= 4.
unsigned long long mu_formula(unsigned r);

} // namespace nilrep
