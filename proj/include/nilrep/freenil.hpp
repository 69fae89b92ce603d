#pragma once

#include "nilrep/rational.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace nilrep {

// One Hall basis element of the free k-step nilpotent Lie algebra.
// Degree-1 elements are the generators x1..xr; higher degrees are Hall
// brackets [left, right] of earlier elements.
struct BasisElement {
    std::size_t id = 0;
    unsigned degree = 1;
    int generator = 0;             // 1-based generator index when degree == 1
    std::size_t left = 0;          // valid when degree >= 2
    std::size_t right = 0;
    std::vector<int> word;         // foliage, used for the length-lex order
    std::string name;              // bracket string, e.g. "[[x1,x2],x3]"
};

// Sparse coordinate vector over the basis.
using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

// Per-degree dimensions of L_{r,k}: the Witt numbers
// (1/d) * sum_{e|d} moebius(e) r^(d/e) for d = 1..k.
std::vector<unsigned long long> witt_graded_dims(unsigned r, unsigned k);

// The free k-step nilpotent Lie algebra L_{r,k} with a Hall basis and
// fully memoized structure constants. Immutable after construction.
//
// Hall convention: [u,v] is a basis element iff u < v in the basis order
// and, when v = [v1,v2], v1 <= u. The order is degree-major, then
// length-lex on the foliage within a degree; for k = 2 this puts the
// Z_ij = [x_i, x_j] (i < j) in (i,j)-lexicographic order.
class FreeNilAlgebra {
public:
    static std::shared_ptr<const FreeNilAlgebra> build(unsigned r, unsigned k);

    unsigned rank() const { return r_; }
    unsigned step() const { return k_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<BasisElement>& basis() const { return basis_; }
    const std::vector<std::size_t>& graded_dims() const { return graded_dims_; }

    // All basis elements of degree exactly k; for r >= 2 this is the center.
    std::vector<std::size_t> center_basis_ids() const;

    // [b_i, b_j] as a sparse coordinate vector. Exact table lookup.
    SparseVec bracket_basis(std::size_t i, std::size_t j) const;

    std::string descriptor_json() const;

private:
    FreeNilAlgebra(unsigned r, unsigned k);

    SparseVec normalize(std::size_t u, std::size_t v);
    bool is_hall_pair(std::size_t u, std::size_t v) const;

    unsigned r_, k_;
    std::vector<BasisElement> basis_;
    std::vector<std::size_t> graded_dims_;
    std::unordered_map<std::uint64_t, std::size_t> hall_index_;  // (u,v) -> id
    std::unordered_map<std::uint64_t, SparseVec> table_;         // (u,v), u < v

    std::uint64_t key(std::size_t u, std::size_t v) const {
        return static_cast<std::uint64_t>(u) * basis_capacity_ + v;
    }
    std::uint64_t basis_capacity_ = 0;
};

// Element of a FreeNilAlgebra with dense rational coordinates.
struct AlgebraElement {
    std::shared_ptr<const FreeNilAlgebra> algebra;
    std::vector<Rational> coords;

    static AlgebraElement zero(std::shared_ptr<const FreeNilAlgebra> alg);
    static AlgebraElement basis_vector(std::shared_ptr<const FreeNilAlgebra> alg, std::size_t id);
    bool is_zero() const;
};

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement operator*(const Rational& c, const AlgebraElement& x);

} // namespace nilrep
