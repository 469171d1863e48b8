#pragma once

// Finite modules over a chain ring R in invariant-factor normal form
//     M = R/pi^{a_1} (+) ... (+) R/pi^{a_r},   1 <= a_1 <= ... <= a_r <= k,
// and maps between them as matrices on the canonical generators.
//
// Every computation goes through one trick: R/pi^a embeds in R as pi^{k-a}R,
// so M embeds in the free module R^r.  Submodules of free modules have
// bases read off a Smith form, which gives kernels, images, quotients and
// linear solves with no quotient bookkeeping.

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ring.hpp"
#include "smith.hpp"

namespace quivinj {

class FinModule {
public:
    FinModule() = default;

    /// `exponents` must be sorted ascending with entries in [1, k].
    FinModule(BaseRing ring, std::vector<int> exponents) : ring_(std::move(ring)), exps_(std::move(exponents)) {
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            if (exps_[i] < 1 || exps_[i] > ring_.length())
                throw Error(ErrorKind::InvalidArgument, "invariant factor out of range");
            if (i > 0 && exps_[i] < exps_[i - 1])
                throw Error(ErrorKind::InvalidArgument, "invariant factors must be sorted");
        }
    }

    /// Accepts factors in any order; zero exponents are dropped.
    static FinModule from_factors(const BaseRing& ring, std::vector<int> exponents) {
        std::erase(exponents, 0);
        std::sort(exponents.begin(), exponents.end());
        return FinModule(ring, std::move(exponents));
    }
    static FinModule zero(const BaseRing& ring) { return FinModule(ring, {}); }
    static FinModule free(const BaseRing& ring, std::size_t rank) {
        return FinModule(ring, std::vector<int>(rank, ring.length()));
    }
    /// k^d over a field (or (R/pi)^d in general).
    static FinModule vector_space(const BaseRing& ring, std::size_t dim) { return FinModule(ring, std::vector<int>(dim, 1)); }

    const BaseRing& ring() const { return ring_; }
    const std::vector<int>& exponents() const { return exps_; }
    std::size_t rank() const { return exps_.size(); }
    int exponent(std::size_t i) const { return exps_[i]; }
    bool is_zero() const { return exps_.empty(); }
    /// Total length sum a_i; for fields this is the dimension.
    int length() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }

    /// |M|, saturating at UINT64_MAX.
    std::uint64_t cardinality() const { return ring_.quotient_size(length()); }

    std::string describe() const {
        if (exps_.empty()) return "0";
        std::ostringstream os;
        if (ring_.kind() == RingKind::FiniteField) {
            os << "F" << ring_.size();
            if (exps_.size() > 1) os << "^" << exps_.size();
            return os.str();
        }
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            if (i) os << " + ";
            os << "Z/" << detail::ipow(ring_.prime(), exps_[i]);
        }
        return os.str();
    }

    friend bool operator==(const FinModule& a, const FinModule& b) { return a.ring_ == b.ring_ && a.exps_ == b.exps_; }
    friend bool operator!=(const FinModule& a, const FinModule& b) { return !(a == b); }

private:
    BaseRing ring_;
    std::vector<int> exps_;
};

/// Reduces a coordinate vector into canonical form for M.
inline Vec normalize(const FinModule& M, Vec x) {
    if (x.size() != M.rank()) throw Error(ErrorKind::ShapeMismatch, "element length");
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = M.ring().reduce(detail::mod(x[i], M.ring().size()), M.exponent(i));
    return x;
}

inline bool is_zero_element(const Vec& x) {
    return std::all_of(x.begin(), x.end(), [](Elem e) { return e == 0; });
}

class ModuleMap {
public:
    ModuleMap() = default;

    /// Rows index codomain generators, columns domain generators.
    ModuleMap(FinModule domain, FinModule codomain, Matrix matrix)
        : dom_(std::move(domain)), cod_(std::move(codomain)), m_(std::move(matrix)) {
        if (dom_.ring() != cod_.ring()) throw Error(ErrorKind::ShapeMismatch, "maps must stay over one ring");
        if (m_.rows != cod_.rank() || m_.cols != dom_.rank())
            throw Error(ErrorKind::ShapeMismatch, "matrix is " + std::to_string(m_.rows) + "x" + std::to_string(m_.cols) +
                                                      ", expected " + std::to_string(cod_.rank()) + "x" +
                                                      std::to_string(dom_.rank()));
        const BaseRing& R = dom_.ring();
        for (std::size_t i = 0; i < m_.rows; ++i)
            for (std::size_t j = 0; j < m_.cols; ++j) {
                Elem e = R.reduce(detail::mod(m_(i, j), R.size()), cod_.exponent(i));
                // pi^{a_j} * e must vanish in R/pi^{b_i}
                int need = cod_.exponent(i) - dom_.exponent(j);
                if (e != 0 && R.valuation(e) < need)
                    throw Error(ErrorKind::ShapeMismatch, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                              ") violates generator annihilators");
                m_(i, j) = e;
            }
    }

    static ModuleMap identity(const FinModule& M) { return ModuleMap(M, M, Matrix::identity(M.rank())); }
    static ModuleMap zero(const FinModule& M, const FinModule& N) { return ModuleMap(M, N, Matrix(N.rank(), M.rank())); }

    const FinModule& domain() const { return dom_; }
    const FinModule& codomain() const { return cod_; }
    const Matrix& matrix() const { return m_; }
    const BaseRing& ring() const { return dom_.ring(); }
    Elem entry(std::size_t i, std::size_t j) const { return m_(i, j); }

    Vec apply(const Vec& x) const {
        if (x.size() != dom_.rank()) throw Error(ErrorKind::ShapeMismatch, "apply: element length");
        return normalize(cod_, multiply(ring(), m_, x));
    }

    bool is_zero() const {
        return std::all_of(m_.data.begin(), m_.data.end(), [](Elem e) { return e == 0; });
    }

    friend bool operator==(const ModuleMap& a, const ModuleMap& b) {
        return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.m_ == b.m_;
    }
    friend bool operator!=(const ModuleMap& a, const ModuleMap& b) { return !(a == b); }

private:
    FinModule dom_, cod_;
    Matrix m_;
};

/// g o f
inline ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
    if (f.codomain() != g.domain()) throw Error(ErrorKind::ShapeMismatch, "compose: codomain/domain differ");
    return ModuleMap(f.domain(), g.codomain(), multiply(f.ring(), g.matrix(), f.matrix()));
}

inline ModuleMap add(const ModuleMap& f, const ModuleMap& g) {
    if (f.domain() != g.domain() || f.codomain() != g.codomain()) throw Error(ErrorKind::ShapeMismatch, "add maps");
    Matrix m = f.matrix();
    for (std::size_t i = 0; i < m.data.size(); ++i) m.data[i] = f.ring().add(m.data[i], g.matrix().data[i]);
    return ModuleMap(f.domain(), f.codomain(), m);
}

inline ModuleMap negate(const ModuleMap& f) {
    Matrix m = f.matrix();
    for (auto& e : m.data) e = f.ring().neg(e);
    return ModuleMap(f.domain(), f.codomain(), m);
}

inline ModuleMap subtract(const ModuleMap& f, const ModuleMap& g) { return add(f, negate(g)); }

inline ModuleMap scale(Elem c, const ModuleMap& f) {
    Matrix m = f.matrix();
    for (auto& e : m.data) e = f.ring().mul(c, e);
    return ModuleMap(f.domain(), f.codomain(), m);
}

/// Builds a map from the images of the domain generators.
inline ModuleMap map_from_images(const FinModule& dom, const FinModule& cod, const std::vector<Vec>& images) {
    if (images.size() != dom.rank()) throw Error(ErrorKind::ShapeMismatch, "one image per generator");
    Matrix m(cod.rank(), dom.rank());
    for (std::size_t j = 0; j < images.size(); ++j) {
        if (images[j].size() != cod.rank()) throw Error(ErrorKind::ShapeMismatch, "image length");
        for (std::size_t i = 0; i < cod.rank(); ++i) m(i, j) = images[j][i];
    }
    return ModuleMap(dom, cod, m);
}

inline Vec basis_vector(const FinModule& M, std::size_t i) {
    Vec v(M.rank(), 0);
    v[i] = 1;
    return v;
}

inline Vec add(const FinModule& M, const Vec& x, const Vec& y) {
    Vec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = M.ring().add(x[i], y[i]);
    return normalize(M, z);
}

inline Vec scale(const FinModule& M, Elem c, const Vec& x) {
    Vec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = M.ring().mul(c, x[i]);
    return normalize(M, z);
}

inline Vec negate(const FinModule& M, const Vec& x) { return scale(M, M.ring().neg(1), x); }

// ---------------------------------------------------------------------------
// Enumeration

/// Calls fn(x) for every element of M in lexicographic order of coordinates.
template <class Fn>
void for_each_element(const FinModule& M, Fn&& fn, std::uint64_t budget = kDefaultBudget) {
    if (M.cardinality() > budget)
        throw BudgetExceeded("module of cardinality " + std::to_string(M.cardinality()) + " exceeds budget");
    const BaseRing& R = M.ring();
    Vec x(M.rank(), 0);
    std::vector<Elem> limit(M.rank());
    for (std::size_t i = 0; i < M.rank(); ++i) limit[i] = static_cast<Elem>(R.quotient_size(M.exponent(i)));
    while (true) {
        fn(static_cast<const Vec&>(x));
        std::size_t i = M.rank();
        while (i > 0) {
            --i;
            if (++x[i] < limit[i]) break;
            x[i] = 0;
            if (i == 0) return;
        }
        if (M.rank() == 0) return;
    }
}

inline std::vector<Vec> elements(const FinModule& M, std::uint64_t budget = kDefaultBudget) {
    std::vector<Vec> out;
    for_each_element(M, [&](const Vec& x) { out.push_back(x); }, budget);
    return out;
}

// ---------------------------------------------------------------------------
// Direct sums with the permutation into sorted normal form.

struct DirectSum {
    FinModule sum;
    std::vector<ModuleMap> injections;
    std::vector<ModuleMap> projections;
    /// position[s][i]: coordinate of generator i of summand s inside `sum`.
    std::vector<std::vector<std::size_t>> position;
};

inline DirectSum direct_sum(const BaseRing& ring, const std::vector<FinModule>& parts) {
    std::vector<std::pair<int, std::pair<std::size_t, std::size_t>>> all;
    for (std::size_t s = 0; s < parts.size(); ++s)
        for (std::size_t i = 0; i < parts[s].rank(); ++i) all.push_back({parts[s].exponent(i), {s, i}});
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<int> exps;
    DirectSum ds;
    ds.position.resize(parts.size());
    for (std::size_t s = 0; s < parts.size(); ++s) ds.position[s].resize(parts[s].rank());
    for (std::size_t pos = 0; pos < all.size(); ++pos) {
        exps.push_back(all[pos].first);
        ds.position[all[pos].second.first][all[pos].second.second] = pos;
    }
    ds.sum = FinModule(ring, exps);
    for (std::size_t s = 0; s < parts.size(); ++s) {
        Matrix inj(ds.sum.rank(), parts[s].rank()), proj(parts[s].rank(), ds.sum.rank());
        for (std::size_t i = 0; i < parts[s].rank(); ++i) {
            inj(ds.position[s][i], i) = 1;
            proj(i, ds.position[s][i]) = 1;
        }
        ds.injections.emplace_back(parts[s], ds.sum, inj);
        ds.projections.emplace_back(ds.sum, parts[s], proj);
    }
    return ds;
}

/// Block map (+)_j M_j -> (+)_i N_i from a grid of component maps blocks[i][j].
inline ModuleMap block_map(const DirectSum& dom, const DirectSum& cod, const std::vector<std::vector<ModuleMap>>& blocks) {
    Matrix m(cod.sum.rank(), dom.sum.rank());
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = 0; j < blocks[i].size(); ++j) {
            const ModuleMap& b = blocks[i][j];
            for (std::size_t r = 0; r < b.matrix().rows; ++r)
                for (std::size_t c = 0; c < b.matrix().cols; ++c) m(cod.position[i][r], dom.position[j][c]) = b.entry(r, c);
        }
    return ModuleMap(dom.sum, cod.sum, m);
}

// ---------------------------------------------------------------------------
// Embedding into free modules

namespace detail {

inline Vec embed(const FinModule& M, const Vec& x) {
    const BaseRing& R = M.ring();
    Vec y(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) y[j] = R.mul(R.pi_pow(R.length() - M.exponent(j)), x[j]);
    return y;
}

inline Vec unembed(const FinModule& M, const Vec& y) {
    const BaseRing& R = M.ring();
    Vec x(y.size());
    for (std::size_t j = 0; j < y.size(); ++j) {
        Elem e = y[j];
        if (e == 0) { x[j] = 0; continue; }
        x[j] = R.reduce(R.divide(e, R.pi_pow(R.length() - M.exponent(j))), M.exponent(j));
    }
    return x;
}

/// Normal form of the R-submodule of R^n spanned by `gens`, with one
/// ambient vector per normal-form generator.
struct FreeSubmodule {
    std::vector<int> exps;  // sorted ascending
    std::vector<Vec> basis;  // ambient vectors, aligned with exps
};

inline FreeSubmodule free_submodule(const BaseRing& R, std::size_t n, const std::vector<Vec>& gens) {
    FreeSubmodule out;
    if (gens.empty() || n == 0) return out;
    Matrix G(n, gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) G(i, j) = gens[j][i];
    RingSmithForm f = ring_smith_form(R, G);
    std::vector<std::pair<int, Vec>> items;
    for (std::size_t t = 0; t < f.rank; ++t) {
        int v = R.valuation(f.D(t, t));
        Vec c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = R.mul(f.Uinv(i, t), f.D(t, t));
        items.push_back({R.length() - v, c});
    }
    std::reverse(items.begin(), items.end());  // valuations ascend, so orders descend
    std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [e, c] : items) {
        out.exps.push_back(e);
        out.basis.push_back(std::move(c));
    }
    return out;
}

/// Right kernel of A over R, as generators.
inline std::vector<Vec> free_kernel(const BaseRing& R, const Matrix& A) {
    std::size_t m = A.cols;
    std::vector<Vec> gens;
    if (m == 0) return gens;
    RingSmithForm f = ring_smith_form(R, A);
    std::size_t r = std::min(A.rows, A.cols);
    for (std::size_t i = 0; i < m; ++i) {
        Elem coef = 1;
        if (i < r) {
            int v = R.valuation(f.D(i, i));
            coef = R.pi_pow(R.length() - v);
            if (coef == 0) continue;
        }
        Vec g(m);
        for (std::size_t l = 0; l < m; ++l) g[l] = R.mul(f.V(l, i), coef);
        gens.push_back(std::move(g));
    }
    return gens;
}

/// Some x with A x = b over R, if any.
inline std::optional<Vec> free_solve(const BaseRing& R, const Matrix& A, const Vec& b) {
    RingSmithForm f = ring_smith_form(R, A);
    Vec c = multiply(R, f.U, b);
    std::size_t r = std::min(A.rows, A.cols);
    Vec w(A.cols, 0);
    for (std::size_t i = 0; i < A.rows; ++i) {
        if (i < r) {
            if (R.valuation(c[i]) < R.valuation(f.D(i, i))) return std::nullopt;
            w[i] = c[i] == 0 ? 0 : R.divide(c[i], f.D(i, i));
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return multiply(R, f.V, w);
}

// pi^{k-b_i} * A: the map on lifted coordinates whose vanishing means A x = 0 in N.
inline Matrix lifted_matrix(const ModuleMap& f) {
    const BaseRing& R = f.ring();
    Matrix A = f.matrix();
    for (std::size_t i = 0; i < A.rows; ++i) {
        Elem s = R.pi_pow(R.length() - f.codomain().exponent(i));
        for (std::size_t j = 0; j < A.cols; ++j) A(i, j) = R.mul(s, A(i, j));
    }
    return A;
}

}  // namespace detail

struct Subobject {
    FinModule module;
    ModuleMap inclusion;  // module -> ambient, a monomorphism
};

struct Quotient {
    FinModule module;
    ModuleMap projection;  // ambient -> module, an epimorphism
};

/// Submodule of M generated by the given elements.
inline Subobject span(const FinModule& M, const std::vector<Vec>& gens) {
    std::vector<Vec> emb;
    for (const Vec& g : gens) emb.push_back(detail::embed(M, normalize(M, g)));
    auto fs = detail::free_submodule(M.ring(), M.rank(), emb);
    FinModule S(M.ring(), fs.exps);
    std::vector<Vec> images;
    for (const Vec& c : fs.basis) images.push_back(detail::unembed(M, c));
    return {S, map_from_images(S, M, images)};
}

inline Subobject image(const ModuleMap& f) {
    std::vector<Vec> gens;
    for (std::size_t j = 0; j < f.domain().rank(); ++j) gens.push_back(f.matrix().column(j));
    return span(f.codomain(), gens);
}

inline Subobject kernel(const ModuleMap& f) {
    const FinModule& M = f.domain();
    auto lifts = detail::free_kernel(f.ring(), detail::lifted_matrix(f));
    return span(M, lifts);
}

/// M / span(gens).
inline Quotient quotient(const FinModule& M, const std::vector<Vec>& gens) {
    const BaseRing& R = M.ring();
    std::size_t n = M.rank();
    Matrix P(n, n + gens.size());
    for (std::size_t i = 0; i < n; ++i) P(i, i) = R.pi_pow(M.exponent(i));
    for (std::size_t j = 0; j < gens.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) P(i, n + j) = gens[j][i];
    RingSmithForm f = ring_smith_form(R, P);
    std::vector<std::pair<int, std::size_t>> keep;
    for (std::size_t i = 0; i < n; ++i) {
        int e = R.valuation(f.D(i, i));
        if (e > 0) keep.push_back({e, i});
    }
    std::stable_sort(keep.begin(), keep.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<int> exps;
    for (auto& [e, i] : keep) exps.push_back(e);
    FinModule Q(R, exps);
    Matrix proj(Q.rank(), n);
    for (std::size_t r = 0; r < keep.size(); ++r)
        for (std::size_t c = 0; c < n; ++c) proj(r, c) = f.U(keep[r].second, c);
    return {Q, ModuleMap(M, Q, proj)};
}

inline Quotient cokernel(const ModuleMap& f) {
    std::vector<Vec> gens;
    for (std::size_t j = 0; j < f.domain().rank(); ++j) gens.push_back(f.matrix().column(j));
    return quotient(f.codomain(), gens);
}

inline bool is_mono(const ModuleMap& f) { return kernel(f).module.is_zero(); }
inline bool is_epi(const ModuleMap& f) { return cokernel(f).module.is_zero(); }
inline bool is_iso(const ModuleMap& f) { return f.domain() == f.codomain() && is_mono(f) && is_epi(f); }

/// Lexicographically least representative of x + span(gens) in M.
inline Vec lex_least(const FinModule& M, Vec x, std::vector<Vec> gens) {
    const BaseRing& R = M.ring();
    x = normalize(M, x);
    for (auto& g : gens) g = normalize(M, g);
    for (std::size_t j = 0; j < M.rank(); ++j) {
        int a = M.exponent(j);
        int best = a;
        std::size_t bi = 0;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            int v = std::min(R.valuation(gens[i][j]), a);
            if (v < best) { best = v; bi = i; }
        }
        if (best == a) continue;
        Vec pivot = gens[bi];
        Elem target = R.reduce(x[j], best);
        Elem diff = detail::mod(x[j] - target, R.size());
        if (R.kind() == RingKind::FiniteField) diff = R.sub(x[j], target);
        if (diff != 0) x = add(M, x, scale(M, R.neg(R.divide(diff, pivot[j])), pivot));
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (i == bi || gens[i][j] == 0) continue;
            gens[i] = add(M, gens[i], scale(M, R.neg(R.divide(gens[i][j], pivot[j])), pivot));
        }
        gens[bi] = scale(M, R.pi_pow(a - best), pivot);
    }
    return x;
}

/// x with f(x) = b, the lexicographically least one; nullopt when b is not in the image.
inline std::optional<Vec> linear_solve(const ModuleMap& f, const Vec& b) {
    if (b.size() != f.codomain().rank()) throw Error(ErrorKind::ShapeMismatch, "right-hand side length");
    const BaseRing& R = f.ring();
    Vec bb = detail::embed(f.codomain(), normalize(f.codomain(), b));
    auto sol = detail::free_solve(R, detail::lifted_matrix(f), bb);
    if (!sol) return std::nullopt;
    Vec x = normalize(f.domain(), *sol);
    auto lifts = detail::free_kernel(R, detail::lifted_matrix(f));
    return lex_least(f.domain(), x, lifts);
}

/// Multiplication by c on M.
inline ModuleMap scalar_map(const FinModule& M, Elem c) {
    Matrix m(M.rank(), M.rank());
    for (std::size_t i = 0; i < M.rank(); ++i) m(i, i) = c;
    return ModuleMap(M, M, m);
}

/// Some g with f(g(y)) = y for every y, or a failure reason.
struct SplitWitness {
    std::optional<ModuleMap> section;  // section (for epis) or retraction (for monos)
    std::string reason;
    bool ok() const { return section.has_value(); }
};

inline SplitWitness split_epi_witness(const ModuleMap& f) {
    if (!is_epi(f)) return {std::nullopt, "not surjective"};
    const FinModule& M = f.domain();
    const FinModule& N = f.codomain();
    std::vector<Vec> images;
    for (std::size_t i = 0; i < N.rank(); ++i) {
        // g(e_i) must lie in the pi^{b_i}-torsion of M
        Subobject torsion = kernel(scalar_map(M, M.ring().pi_pow(N.exponent(i))));
        auto y = linear_solve(compose(f, torsion.inclusion), basis_vector(N, i));
        if (!y) return {std::nullopt, "surjective but no section found"};
        images.push_back(torsion.inclusion.apply(*y));
    }
    ModuleMap g = map_from_images(N, M, images);
    if (compose(f, g) != ModuleMap::identity(N)) throw Error(ErrorKind::Internal, "section check failed");
    return {g, ""};
}

// ---------------------------------------------------------------------------
// Hom modules

/// Hom(M, N) in normal form, with conversions between elements and maps.
class HomModule {
public:
    HomModule(FinModule M, FinModule N) : dom_(std::move(M)), cod_(std::move(N)) {
        std::vector<FinModule> parts;
        for (std::size_t i = 0; i < cod_.rank(); ++i)
            for (std::size_t j = 0; j < dom_.rank(); ++j) {
                parts.push_back(FinModule(dom_.ring(), {std::min(dom_.exponent(j), cod_.exponent(i))}));
                cells_.push_back({i, j});
            }
        sum_ = direct_sum(dom_.ring(), parts);
    }

    const FinModule& module() const { return sum_.sum; }
    const FinModule& source() const { return dom_; }
    const FinModule& target() const { return cod_; }

    ModuleMap to_map(const Vec& h) const {
        const BaseRing& R = dom_.ring();
        Matrix m(cod_.rank(), dom_.rank());
        for (std::size_t c = 0; c < cells_.size(); ++c) {
            auto [i, j] = cells_[c];
            int shift = std::max(0, cod_.exponent(i) - dom_.exponent(j));
            m(i, j) = R.mul(h[sum_.position[c][0]], R.pi_pow(shift));
        }
        return ModuleMap(dom_, cod_, m);
    }

    Vec from_map(const ModuleMap& f) const {
        if (f.domain() != dom_ || f.codomain() != cod_) throw Error(ErrorKind::ShapeMismatch, "hom element");
        const BaseRing& R = dom_.ring();
        Vec h(sum_.sum.rank(), 0);
        for (std::size_t c = 0; c < cells_.size(); ++c) {
            auto [i, j] = cells_[c];
            int shift = std::max(0, cod_.exponent(i) - dom_.exponent(j));
            Elem e = f.entry(i, j);
            Elem coord = e == 0 ? 0 : R.divide(e, R.pi_pow(shift));
            h[sum_.position[c][0]] = R.reduce(coord, std::min(dom_.exponent(j), cod_.exponent(i)));
        }
        return h;
    }

private:
    FinModule dom_, cod_;
    std::vector<std::pair<std::size_t, std::size_t>> cells_;
    DirectSum sum_;
};

inline HomModule hom_module(const FinModule& M, const FinModule& N) {
    if (M.ring() != N.ring()) throw Error(ErrorKind::ShapeMismatch, "hom over different rings");
    return HomModule(M, N);
}

/// The map Hom(B, K) -> Hom(A, K), t |-> t o g.
inline ModuleMap precompose_map(const HomModule& from, const HomModule& to, const ModuleMap& g) {
    std::vector<Vec> images;
    for (std::size_t i = 0; i < from.module().rank(); ++i)
        images.push_back(to.from_map(compose(from.to_map(basis_vector(from.module(), i)), g)));
    return map_from_images(from.module(), to.module(), images);
}

/// The map Hom(K, A) -> Hom(K, B), t |-> g o t.
inline ModuleMap postcompose_map(const HomModule& from, const HomModule& to, const ModuleMap& g) {
    std::vector<Vec> images;
    for (std::size_t i = 0; i < from.module().rank(); ++i)
        images.push_back(to.from_map(compose(g, from.to_map(basis_vector(from.module(), i)))));
    return map_from_images(from.module(), to.module(), images);
}

/// t: B -> E with t o g = h, if one exists (always, when E is injective and g mono).
inline std::optional<ModuleMap> extend_along(const ModuleMap& g, const ModuleMap& h) {
    if (g.domain() != h.domain()) throw Error(ErrorKind::ShapeMismatch, "extend: domains differ");
    HomModule from = hom_module(g.codomain(), h.codomain());
    HomModule to = hom_module(g.domain(), h.codomain());
    auto t = linear_solve(precompose_map(from, to, g), to.from_map(h));
    if (!t) return std::nullopt;
    return from.to_map(*t);
}

/// r with r o f = id, or a failure reason.
inline SplitWitness split_mono_witness(const ModuleMap& f) {
    if (!is_mono(f)) return {std::nullopt, "not injective"};
    auto r = extend_along(f, ModuleMap::identity(f.domain()));
    if (!r) return {std::nullopt, "injective but no retraction found"};
    return {*r, ""};
}

// ---------------------------------------------------------------------------
// Classification, hulls, duality

struct ModuleClass {
    std::vector<int> invariants;
    bool is_injective = false;
    bool is_flat = false;
    bool is_projective = false;
    std::optional<int> injdim;  // nullopt means infinite
};

inline ModuleClass module_classify(const FinModule& M) {
    // over a self-injective chain ring: injective <=> flat <=> free
    bool free = std::all_of(M.exponents().begin(), M.exponents().end(),
                            [&](int a) { return a == M.ring().length(); });
    ModuleClass c;
    c.invariants = M.exponents();
    c.is_injective = c.is_flat = c.is_projective = free;
    if (free) c.injdim = 0;
    return c;
}

struct Hull {
    FinModule module;
    ModuleMap embedding;
};

/// Injective envelope: each R/pi^a sits in R as pi^{k-a}R.
inline Hull injective_hull(const FinModule& M) {
    const BaseRing& R = M.ring();
    FinModule E = FinModule::free(R, M.rank());
    Matrix m(M.rank(), M.rank());
    for (std::size_t i = 0; i < M.rank(); ++i) m(i, i) = R.pi_pow(R.length() - M.exponent(i));
    return {E, ModuleMap(M, E, m)};
}

/// Character module M^+ = Hom_Z(M, Q/Z), presented on the dual basis; as an
/// R-module it has the same invariant factors as M.
inline FinModule pontryagin_dual(const FinModule& M) { return M; }

/// f^+ : N^+ -> M^+, chi |-> chi o f, on dual bases.
inline ModuleMap dual_map(const ModuleMap& f) {
    const BaseRing& R = f.ring();
    const FinModule& M = f.domain();
    const FinModule& N = f.codomain();
    Matrix d(M.rank(), N.rank());
    for (std::size_t j = 0; j < M.rank(); ++j)
        for (std::size_t i = 0; i < N.rank(); ++i) {
            Elem e = f.entry(i, j);
            int shift = M.exponent(j) - N.exponent(i);
            if (shift >= 0) d(j, i) = R.mul(e, R.pi_pow(shift));
            else d(j, i) = e == 0 ? 0 : R.divide(e, R.pi_pow(-shift));
        }
    return ModuleMap(pontryagin_dual(N), pontryagin_dual(M), d);
}

/// Canonical evaluation M -> M^{++}; identity on the chosen bases.
inline ModuleMap double_dual_evaluation(const FinModule& M) { return ModuleMap::identity(M); }

/// The value chi(x) in Q/Z as numerator/denominator (denominator p^k or p).
struct Character {
    Elem numerator;
    Elem denominator;
    friend bool operator==(const Character&, const Character&) = default;
};

inline Character character_pairing(const FinModule& M, const Vec& chi, const Vec& x) {
    const BaseRing& R = M.ring();
    if (R.kind() == RingKind::FiniteField) {
        Elem s = 0;
        for (std::size_t j = 0; j < M.rank(); ++j) s = R.add(s, R.mul(chi[j], x[j]));
        return {R.trace(s), R.prime()};
    }
    Elem den = R.size();
    Elem num = 0;
    for (std::size_t j = 0; j < M.rank(); ++j)
        num = detail::mod(num + chi[j] * x[j] % den * detail::ipow(R.prime(), R.length() - M.exponent(j)), den);
    return {num, den};
}

}  // namespace quivinj
