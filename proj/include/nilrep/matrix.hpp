#pragma once

#include "nilrep/rational.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace nilrep {

// Dense row-major matrix over the rationals. Zero-dimensional shapes are
// rejected at construction. Values are immutable in spirit: all operations
// return fresh matrices.
class RatMatrix {
public:
    RatMatrix(std::size_t rows, std::size_t cols);

    static RatMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<Rational>& entries() const { return entries_; }

    bool is_zero() const;
    RatMatrix transpose() const;

    friend bool operator==(const RatMatrix& a, const RatMatrix& b);
    friend bool operator!=(const RatMatrix& a, const RatMatrix& b) { return !(a == b); }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> entries_;
};

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const Rational& c, const RatMatrix& a);

// AB - BA for square matrices of equal size.
RatMatrix commutator(const RatMatrix& a, const RatMatrix& b);

// Row-major flattening, length rows*cols.
std::vector<Rational> vectorize(const RatMatrix& a);

// Exact rank over the rationals: denominators are cleared row-wise, then
// fraction-free (Bareiss) elimination over the integers with first-nonzero
// pivoting. Entry growth stays bounded by minor sizes, which is what makes
// the ~121x121 certification ranks tractable.
std::size_t rank(const RatMatrix& a);

// Exact determinant via the same fraction-free elimination.
Rational det(const RatMatrix& a);

// True iff the vectorized family spans a space of dimension equal to the
// family size. All members must share one shape.
bool is_independent(const std::vector<RatMatrix>& family);

// Rank of a small integer matrix through 128-bit fraction-free
// elimination; nullopt on overflow. Exact whenever it answers. The
// column-subset certification runs millions of tiny ranks through this.
std::optional<std::size_t> rank_small_integer(const std::vector<std::vector<long long>>& rows,
                                              std::size_t cols);

// A nontrivial rational combination summing to zero over the vectorized
// family, when one exists. Used for faithfulness witnesses.
std::optional<std::vector<Rational>> dependent_combination(const std::vector<RatMatrix>& family);

// Shared matrix JSON form: {"rows", "cols", "entries"} with entries as
// exact "p" or "p/q" strings, row-major.
nlohmann::ordered_json matrix_to_json(const RatMatrix& m);
RatMatrix matrix_from_json(const nlohmann::json& j);

} // namespace nilrep
