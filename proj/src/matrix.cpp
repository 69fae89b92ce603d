#include "nilrep/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace nilrep {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Rational(0)) {
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("zero-dimensional matrix");
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

bool RatMatrix::is_zero() const {
    for (const auto& e : entries_)
        if (e != 0)
            return false;
    return true;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t.at(j, i) = at(i, j);
    return t;
}

bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix addition: dimension mismatch");
    RatMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c.at(i, j) = a.at(i, j) + b.at(i, j);
    return c;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix subtraction: dimension mismatch");
    RatMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c.at(i, j) = a.at(i, j) - b.at(i, j);
    return c;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix product: dimension mismatch");
    RatMatrix c(a.rows(), b.cols());
    // Representation images are sparse; skipping zero pivots keeps the
    // certification passes fast.
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const Rational& ail = a.at(i, l);
            if (ail == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const Rational& blj = b.at(l, j);
                if (blj != 0)
                    c.at(i, j) += ail * blj;
            }
        }
    }
    return c;
}

RatMatrix operator*(const Rational& c, const RatMatrix& a) {
    RatMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m.at(i, j) = c * a.at(i, j);
    return m;
}

RatMatrix commutator(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw std::invalid_argument("commutator: matrices must be square of equal size");
    return a * b - b * a;
}

std::vector<Rational> vectorize(const RatMatrix& a) {
    return a.entries();
}

namespace {

// Row-wise denominator clearing. Scaling a row by a positive integer does
// not change the rank; for the determinant the multipliers are divided
// back out by the caller.
std::vector<std::vector<Integer>> cleared_integer_rows(const RatMatrix& m,
                                                       std::vector<Integer>* multipliers) {
    std::vector<std::vector<Integer>> out(m.rows(), std::vector<Integer>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rational scaled = m.at(i, j) * Rational(l);
            out[i][j] = scaled.get_num();
        }
        if (multipliers)
            multipliers->push_back(l);
    }
    return out;
}

Integer exact_div(const Integer& a, const Integer& b) {
    if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
        throw std::logic_error("fraction-free elimination: inexact division");
    Integer q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

using int128 = __int128;

// Machine-word Bareiss core; nullopt on overflow.
std::optional<std::size_t> bareiss_rank_int128(std::vector<std::vector<int128>>& w,
                                               std::size_t rows, std::size_t cols) {
    std::size_t r = 0;
    int128 prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && w[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        if (p != r)
            w[p].swap(w[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                int128 x, y;
                if (__builtin_mul_overflow(w[i][j], w[r][c], &x) ||
                    __builtin_mul_overflow(w[i][c], w[r][j], &y) ||
                    __builtin_sub_overflow(x, y, &x))
                    return std::nullopt;
                w[i][j] = x / prev;
            }
            w[i][c] = 0;
        }
        prev = w[r][c];
        ++r;
    }
    return r;
}

std::optional<std::size_t> rank_int128(const std::vector<std::vector<Integer>>& m,
                                       std::size_t rows, std::size_t cols) {
    std::vector<std::vector<int128>> w(rows, std::vector<int128>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            if (!m[i][j].fits_slong_p())
                return std::nullopt;
            w[i][j] = m[i][j].get_si();
        }
    return bareiss_rank_int128(w, rows, cols);
}

} // namespace

std::size_t rank(const RatMatrix& a) {
    auto m = cleared_integer_rows(a, nullptr);
    const std::size_t rows = a.rows(), cols = a.cols();
    if (std::min(rows, cols) <= 16)
        if (auto fast = rank_int128(m, rows, cols))
            return *fast;
    std::size_t r = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        if (p != r)
            m[p].swap(m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                m[i][j] = exact_div(m[i][j] * m[r][c] - m[i][c] * m[r][j], prev);
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return r;
}

Rational det(const RatMatrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("determinant: matrix must be square");
    std::vector<Integer> multipliers;
    auto m = cleared_integer_rows(a, &multipliers);
    const std::size_t n = a.rows();
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k] == 0)
            ++p;
        if (p == n)
            return Rational(0);
        if (p != k) {
            m[p].swap(m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Integer scale = 1;
    for (const auto& l : multipliers)
        scale *= l;
    Rational d(sign > 0 ? m[n - 1][n - 1] : Integer(-m[n - 1][n - 1]), scale);
    d.canonicalize();
    return d;
}

namespace {

RatMatrix stack_vectorized(const std::vector<RatMatrix>& family) {
    const std::size_t r = family.front().rows(), c = family.front().cols();
    for (const auto& m : family)
        if (m.rows() != r || m.cols() != c)
            throw std::invalid_argument("family members must share one shape");
    RatMatrix stacked(family.size(), r * c);
    for (std::size_t i = 0; i < family.size(); ++i) {
        auto v = vectorize(family[i]);
        for (std::size_t j = 0; j < v.size(); ++j)
            stacked.at(i, j) = v[j];
    }
    return stacked;
}

} // namespace

bool is_independent(const std::vector<RatMatrix>& family) {
    if (family.empty())
        return true;
    return rank(stack_vectorized(family)) == family.size();
}

std::optional<std::size_t> rank_small_integer(const std::vector<std::vector<long long>>& rows,
                                              std::size_t cols) {
    std::vector<std::vector<int128>> w(rows.size(), std::vector<int128>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw std::invalid_argument("rank_small_integer: ragged rows");
        for (std::size_t j = 0; j < cols; ++j)
            w[i][j] = rows[i][j];
    }
    return bareiss_rank_int128(w, rows.size(), cols);
}

std::optional<std::vector<Rational>> dependent_combination(const std::vector<RatMatrix>& family) {
    if (family.empty())
        return std::nullopt;
    RatMatrix stacked = stack_vectorized(family);
    const std::size_t n = family.size(), w = stacked.cols();
    // Rational row reduction with combination tracking: row i carries the
    // coefficients expressing it in terms of the original family.
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(w));
    std::vector<std::vector<Rational>> combo(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < w; ++j)
            rows[i][j] = stacked.at(i, j);
        combo[i][i] = 1;
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < w && r < n; ++c) {
        std::size_t p = r;
        while (p < n && rows[p][c] == 0)
            ++p;
        if (p == n)
            continue;
        rows[p].swap(rows[r]);
        combo[p].swap(combo[r]);
        for (std::size_t i = r + 1; i < n; ++i) {
            if (rows[i][c] == 0)
                continue;
            Rational f = rows[i][c] / rows[r][c];
            for (std::size_t j = c; j < w; ++j)
                rows[i][j] -= f * rows[r][j];
            for (std::size_t j = 0; j < n; ++j)
                combo[i][j] -= f * combo[r][j];
        }
        ++r;
    }
    for (std::size_t i = r; i < n; ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < w; ++j)
            if (rows[i][j] != 0) {
                zero = false;
                break;
            }
        if (zero)
            return combo[i];
    }
    return std::nullopt;
}

nlohmann::ordered_json matrix_to_json(const RatMatrix& m) {
    nlohmann::ordered_json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t c = 0; c < m.cols(); ++c)
            entries.push_back(rational_to_string(m.at(i, c)));
    j["entries"] = std::move(entries);
    return j;
}

RatMatrix matrix_from_json(const nlohmann::json& j) {
    const std::size_t rows = j.at("rows").get<std::size_t>();
    const std::size_t cols = j.at("cols").get<std::size_t>();
    const auto& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != rows * cols)
        throw std::invalid_argument("matrix JSON: entries length must be rows*cols");
    RatMatrix m(rows, cols);
    std::size_t t = 0;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t c = 0; c < cols; ++c)
            m.at(i, c) = rational_from_string(entries[t++].get<std::string>());
    return m;
}

} // namespace nilrep
