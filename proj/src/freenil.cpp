#include "nilrep/freenil.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>

namespace nilrep {

namespace {

constexpr unsigned long long kDimGuard = 100000;

int moebius(unsigned n) {
    int mu = 1;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0)
                return 0;
            mu = -mu;
        }
    }
    if (n > 1)
        mu = -mu;
    return mu;
}

void accumulate(std::map<std::size_t, Rational>& acc, const Rational& c, const SparseVec& v) {
    for (const auto& [id, coeff] : v)
        acc[id] += c * coeff;
}

SparseVec to_sparse(const std::map<std::size_t, Rational>& acc) {
    SparseVec out;
    for (const auto& [id, coeff] : acc)
        if (coeff != 0)
            out.emplace_back(id, coeff);
    return out;
}

} // namespace

std::vector<unsigned long long> witt_graded_dims(unsigned r, unsigned k) {
    if (r < 2 || k < 1)
        throw std::invalid_argument("witt_graded_dims: need r >= 2, k >= 1");
    std::vector<unsigned long long> dims;
    for (unsigned d = 1; d <= k; ++d) {
        Integer sum = 0;
        for (unsigned e = 1; e <= d; ++e) {
            if (d % e != 0)
                continue;
            Integer p;
            mpz_ui_pow_ui(p.get_mpz_t(), r, d / e);
            sum += moebius(e) * p;
        }
        Integer w = sum / d;
        if (w > static_cast<unsigned long>(kDimGuard))
            throw std::invalid_argument("witt_graded_dims: dimension guard exceeded");
        dims.push_back(w.get_ui());
    }
    return dims;
}

std::shared_ptr<const FreeNilAlgebra> FreeNilAlgebra::build(unsigned r, unsigned k) {
    return std::shared_ptr<const FreeNilAlgebra>(new FreeNilAlgebra(r, k));
}

FreeNilAlgebra::FreeNilAlgebra(unsigned r, unsigned k) : r_(r), k_(k) {
    if (r < 2 || k < 2)
        throw std::invalid_argument("build_algebra: need r >= 2 and k >= 2");
    auto witt = witt_graded_dims(r, k);
    unsigned long long total = 0;
    for (auto w : witt)
        total += w;
    if (total > kDimGuard)
        throw std::invalid_argument("build_algebra: dimension guard exceeded");
    basis_capacity_ = total + 1;

    for (unsigned i = 1; i <= r; ++i) {
        BasisElement e;
        e.id = basis_.size();
        e.degree = 1;
        e.generator = static_cast<int>(i);
        e.word = {static_cast<int>(i)};
        e.name = "x" + std::to_string(i);
        basis_.push_back(std::move(e));
    }

    std::vector<std::size_t> degree_begin = {0, 0};  // degree d starts at degree_begin[d]
    degree_begin.push_back(basis_.size());           // degree 2 start

    for (unsigned d = 2; d <= k; ++d) {
        struct Cand {
            std::vector<int> word;
            std::size_t left, right;
        };
        std::vector<Cand> cands;
        for (unsigned du = 1; 2 * du <= d; ++du) {
            unsigned dv = d - du;
            for (std::size_t u = degree_begin[du]; u < degree_begin[du + 1]; ++u) {
                for (std::size_t v = degree_begin[dv]; v < degree_begin[dv + 1]; ++v) {
                    if (u >= v)
                        continue;
                    if (basis_[v].degree >= 2 && basis_[v].left > u)
                        continue;
                    Cand c;
                    c.word = basis_[u].word;
                    c.word.insert(c.word.end(), basis_[v].word.begin(), basis_[v].word.end());
                    c.left = u;
                    c.right = v;
                    cands.push_back(std::move(c));
                }
            }
        }
        std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            if (a.word != b.word)
                return a.word < b.word;
            if (a.left != b.left)
                return a.left < b.left;
            return a.right < b.right;
        });
        for (auto& c : cands) {
            BasisElement e;
            e.id = basis_.size();
            e.degree = d;
            e.left = c.left;
            e.right = c.right;
            e.word = std::move(c.word);
            e.name = "[" + basis_[c.left].name + "," + basis_[c.right].name + "]";
            hall_index_[key(c.left, c.right)] = e.id;
            basis_.push_back(std::move(e));
        }
        degree_begin.push_back(basis_.size());
    }

    graded_dims_.assign(k, 0);
    for (const auto& e : basis_)
        ++graded_dims_[e.degree - 1];
    for (unsigned d = 0; d < k; ++d)
        if (graded_dims_[d] != witt[d])
            throw std::logic_error("Hall basis size disagrees with the Witt numbers");

    // Memoize every basis-pair bracket up front so element brackets are
    // table lookups.
    for (std::size_t i = 0; i < basis_.size(); ++i)
        for (std::size_t j = i + 1; j < basis_.size(); ++j)
            if (basis_[i].degree + basis_[j].degree <= k)
                normalize(i, j);
}

bool FreeNilAlgebra::is_hall_pair(std::size_t u, std::size_t v) const {
    if (u >= v)
        return false;
    return basis_[v].degree == 1 || basis_[v].left <= u;
}

SparseVec FreeNilAlgebra::normalize(std::size_t u, std::size_t v) {
    if (u == v)
        return {};
    if (u > v) {
        SparseVec neg = normalize(v, u);
        for (auto& [id, c] : neg)
            c = -c;
        return neg;
    }
    if (basis_[u].degree + basis_[v].degree > k_)
        return {};
    auto it = table_.find(key(u, v));
    if (it != table_.end())
        return it->second;

    SparseVec result;
    if (is_hall_pair(u, v)) {
        result = {{hall_index_.at(key(u, v)), Rational(1)}};
    } else {
        // v = [v1,v2] with v1 > u; Jacobi rewrite
        // [u,[v1,v2]] = [[u,v1],v2] + [v1,[u,v2]].
        const std::size_t v1 = basis_[v].left, v2 = basis_[v].right;
        std::map<std::size_t, Rational> acc;
        for (const auto& [t, c] : normalize(u, v1))
            accumulate(acc, c, normalize(t, v2));
        for (const auto& [t, c] : normalize(u, v2))
            accumulate(acc, c, normalize(v1, t));
        result = to_sparse(acc);
    }
    table_[key(u, v)] = result;
    return result;
}

std::vector<std::size_t> FreeNilAlgebra::center_basis_ids() const {
    std::vector<std::size_t> ids;
    for (const auto& e : basis_)
        if (e.degree == k_)
            ids.push_back(e.id);
    return ids;
}

SparseVec FreeNilAlgebra::bracket_basis(std::size_t i, std::size_t j) const {
    if (i >= dim() || j >= dim())
        throw std::invalid_argument("bracket_basis: index out of range");
    if (i == j || basis_[i].degree + basis_[j].degree > k_)
        return {};
    auto it = table_.find(key(std::min(i, j), std::max(i, j)));
    if (it == table_.end())
        return {};
    if (i < j)
        return it->second;
    SparseVec neg = it->second;
    for (auto& [id, c] : neg)
        c = -c;
    return neg;
}

std::string FreeNilAlgebra::descriptor_json() const {
    nlohmann::ordered_json j;
    j["r"] = r_;
    j["k"] = k_;
    j["dims"] = graded_dims_;
    nlohmann::ordered_json names = nlohmann::ordered_json::array();
    for (const auto& e : basis_)
        names.push_back(e.name);
    j["basis"] = std::move(names);
    return j.dump(2);
}

AlgebraElement AlgebraElement::zero(std::shared_ptr<const FreeNilAlgebra> alg) {
    AlgebraElement e;
    e.coords.assign(alg->dim(), Rational(0));
    e.algebra = std::move(alg);
    return e;
}

AlgebraElement AlgebraElement::basis_vector(std::shared_ptr<const FreeNilAlgebra> alg, std::size_t id) {
    AlgebraElement e = zero(std::move(alg));
    e.coords.at(id) = 1;
    return e;
}

bool AlgebraElement::is_zero() const {
    for (const auto& c : coords)
        if (c != 0)
            return false;
    return true;
}

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
    if (x.algebra != y.algebra)
        throw std::invalid_argument("bracket: elements of different algebras");
    AlgebraElement out = AlgebraElement::zero(x.algebra);
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        if (x.coords[i] == 0)
            continue;
        for (std::size_t j = 0; j < y.coords.size(); ++j) {
            if (y.coords[j] == 0)
                continue;
            Rational c = x.coords[i] * y.coords[j];
            for (const auto& [id, s] : x.algebra->bracket_basis(i, j))
                out.coords[id] += c * s;
        }
    }
    return out;
}

AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y) {
    if (x.algebra != y.algebra)
        throw std::invalid_argument("sum: elements of different algebras");
    AlgebraElement out = x;
    for (std::size_t i = 0; i < out.coords.size(); ++i)
        out.coords[i] += y.coords[i];
    return out;
}

AlgebraElement operator*(const Rational& c, const AlgebraElement& x) {
    AlgebraElement out = x;
    for (auto& v : out.coords)
        v *= c;
    return out;
}

} // namespace nilrep
