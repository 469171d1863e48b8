#pragma once

// Base rings with decidable module theory: Z/p^k and finite fields F_q.
//
// Both are finite chain rings: every ideal is a power of a uniformizer pi
// (pi = p for Z/p^k, pi = 0 for a field), pi^k = 0, and every element is
// pi^v * unit.  All module algorithms in this library are written against
// that interface, so the two kinds share one code path.

#include <cstdint>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace quivinj {

using Elem = std::int64_t;
using Vec = std::vector<Elem>;

enum class ErrorKind {
    ShapeMismatch,
    InvalidArgument,
    UnknownVertex,
    NotATree,
    UnboundedPathSet,
    Unsupported,
    TailUnderspecified,
    NotInjective,
    NonFieldBase,
    QuiverUnknown,
    NotLeftRooted,
    Parse,
    BudgetExceeded,
    Internal,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::ShapeMismatch: return "shape mismatch";
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::UnknownVertex: return "unknown vertex";
    case ErrorKind::NotATree: return "not a tree";
    case ErrorKind::UnboundedPathSet: return "unbounded path set";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::TailUnderspecified: return "tail underspecified";
    case ErrorKind::NotInjective: return "not injective";
    case ErrorKind::NonFieldBase: return "non-field base";
    case ErrorKind::QuiverUnknown: return "quiver unknown";
    case ErrorKind::NotLeftRooted: return "quiver not left-rooted";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::BudgetExceeded: return "budget exceeded";
    case ErrorKind::Internal: return "internal error";
    }
    return "error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + (detail.empty() ? "" : ": " + detail)),
          kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string& detail) : Error(ErrorKind::BudgetExceeded, detail) {}
};

/// Default enumeration budget (candidate tuples / elements).
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 16;

namespace detail {

inline bool is_prime(Elem n) {
    if (n < 2) return false;
    for (Elem d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline Elem ipow(Elem b, int e) {
    Elem r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
}

inline Elem mod(Elem a, Elem m) {
    Elem r = a % m;
    return r < 0 ? r + m : r;
}

// Multiplication/addition tables for F_{p^n}, n > 1.  Elements are encoded as
// base-p digit strings of polynomial coefficients (constant term first).
struct GfTables {
    Elem p = 0;
    int n = 0;
    Elem q = 0;
    std::vector<Elem> add, mul, inv, negation, trace;

    GfTables(Elem p_, int n_) : p(p_), n(n_), q(ipow(p_, n_)) {
        auto digits = [&](Elem x) {
            std::vector<Elem> d(n);
            for (int i = 0; i < n; ++i) { d[i] = x % p; x /= p; }
            return d;
        };
        auto encode = [&](const std::vector<Elem>& d) {
            Elem x = 0;
            for (int i = n - 1; i >= 0; --i) x = x * p + d[i];
            return x;
        };
        std::vector<Elem> modulus = find_irreducible();
        add.assign(q * q, 0);
        mul.assign(q * q, 0);
        for (Elem a = 0; a < q; ++a) {
            auto da = digits(a);
            for (Elem b = 0; b < q; ++b) {
                auto db = digits(b);
                std::vector<Elem> s(n);
                for (int i = 0; i < n; ++i) s[i] = (da[i] + db[i]) % p;
                add[a * q + b] = encode(s);
                std::vector<Elem> prod(2 * n - 1, 0);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                // reduce by the monic modulus of degree n
                for (int d = 2 * n - 2; d >= n; --d) {
                    Elem c = prod[d];
                    if (c == 0) continue;
                    for (int i = 0; i <= n; ++i)
                        prod[d - n + i] = mod(prod[d - n + i] - c * modulus[i], p);
                }
                prod.resize(n);
                mul[a * q + b] = encode(prod);
            }
        }
        negation.assign(q, 0);
        for (Elem a = 0; a < q; ++a)
            for (Elem b = 0; b < q; ++b)
                if (add[a * q + b] == 0) { negation[a] = b; break; }
        inv.assign(q, 0);
        for (Elem a = 1; a < q; ++a)
            for (Elem b = 1; b < q; ++b)
                if (mul[a * q + b] == 1) { inv[a] = b; break; }
        trace.assign(q, 0);
        for (Elem a = 0; a < q; ++a) {
            Elem acc = 0, power = a;
            for (int i = 0; i < n; ++i) {
                acc = add[acc * q + power];
                Elem next = 1;
                for (Elem j = 0; j < p; ++j) next = mul[next * q + power];
                power = next;
            }
            trace[a] = acc;  // lies in the prime field, i.e. a digit < p
        }
    }

private:
    // Smallest monic irreducible polynomial of degree n over F_p, coefficients
    // constant term first (length n + 1).
    std::vector<Elem> find_irreducible() const {
        Elem count = ipow(p, n);
        for (Elem code = 0; code < count; ++code) {
            std::vector<Elem> f(n + 1);
            Elem c = code;
            for (int i = 0; i < n; ++i) { f[i] = c % p; c /= p; }
            f[n] = 1;
            if (irreducible(f)) return f;
        }
        throw Error(ErrorKind::Internal, "no irreducible polynomial found");
    }

    bool irreducible(const std::vector<Elem>& f) const {
        int deg = static_cast<int>(f.size()) - 1;
        for (int d = 1; d <= deg / 2; ++d) {
            Elem count = ipow(p, d);
            for (Elem code = 0; code < count; ++code) {
                std::vector<Elem> g(d + 1);
                Elem c = code;
                for (int i = 0; i < d; ++i) { g[i] = c % p; c /= p; }
                g[d] = 1;
                std::vector<Elem> r = f;
                for (int k = deg; k >= d; --k) {
                    Elem lead = r[k];
                    if (lead == 0) continue;
                    for (int i = 0; i <= d; ++i) r[k - d + i] = mod(r[k - d + i] - lead * g[i], p);
                }
                bool zero = true;
                for (int i = 0; i < d; ++i) zero = zero && r[i] == 0;
                if (zero) return false;
            }
        }
        return true;
    }
};

}  // namespace detail

enum class RingKind { ZmodPk, FiniteField };

class BaseRing {
public:
    BaseRing() : BaseRing(zmod(2, 1)) {}

    static BaseRing zmod(Elem p, int k) {
        if (!detail::is_prime(p)) throw Error(ErrorKind::InvalidArgument, "p must be prime");
        if (k < 1) throw Error(ErrorKind::InvalidArgument, "exponent must be >= 1");
        BaseRing r(RingKind::ZmodPk);
        r.p_ = p;
        r.k_ = k;
        r.degree_ = 1;
        r.size_ = detail::ipow(p, k);
        r.residue_ = p;
        return r;
    }

    static BaseRing gf(Elem q) {
        Elem p = 0;
        for (Elem d = 2; d <= q; ++d)
            if (q % d == 0) { p = d; break; }
        int n = 0;
        Elem rest = q;
        while (p > 1 && rest % p == 0) { rest /= p; ++n; }
        if (p == 0 || rest != 1) throw Error(ErrorKind::InvalidArgument, "q must be a prime power");
        if (q > 1024) throw Error(ErrorKind::Unsupported, "field order above 1024");
        BaseRing r(RingKind::FiniteField);
        r.p_ = p;
        r.k_ = 1;
        r.degree_ = n;
        r.size_ = q;
        r.residue_ = q;
        if (n > 1) r.tables_ = std::make_shared<const detail::GfTables>(p, n);
        return r;
    }

    /// Parses "zmod:<p>^<k>", "zmod:<n>" (n a prime power) or "gf:<q>".
    static BaseRing parse(std::string_view text) {
        auto colon = text.find(':');
        if (colon == std::string_view::npos) throw Error(ErrorKind::Parse, "ring descriptor: " + std::string(text));
        std::string kind(text.substr(0, colon));
        std::string rest(text.substr(colon + 1));
        try {
            if (kind == "gf") return gf(std::stoll(rest));
            if (kind == "zmod") {
                auto caret = rest.find('^');
                if (caret != std::string::npos)
                    return zmod(std::stoll(rest.substr(0, caret)), std::stoi(rest.substr(caret + 1)));
                Elem n = std::stoll(rest);
                Elem p = 0;
                for (Elem d = 2; d <= n; ++d)
                    if (n % d == 0) { p = d; break; }
                int k = 0;
                while (p > 1 && n % p == 0) { n /= p; ++k; }
                if (n != 1 || p == 0) throw Error(ErrorKind::InvalidArgument, "not a prime power");
                return zmod(p, k);
            }
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::Parse, "ring descriptor: " + std::string(text));
        }
        throw Error(ErrorKind::Parse, "ring descriptor: " + std::string(text));
    }

    std::string descriptor() const {
        std::ostringstream os;
        if (kind_ == RingKind::ZmodPk) os << "zmod:" << p_ << "^" << k_;
        else os << "gf:" << size_;
        return os.str();
    }

    RingKind kind() const { return kind_; }
    bool is_field() const { return kind_ == RingKind::FiniteField || k_ == 1; }
    bool is_quasi_frobenius() const { return true; }
    bool is_noetherian() const { return true; }
    Elem characteristic() const { return p_; }
    Elem prime() const { return p_; }
    /// Nilpotency index of the maximal ideal (pi^k = 0).
    int length() const { return k_; }
    Elem size() const { return size_; }
    /// Size of the residue field R/pi.
    Elem residue_size() const { return residue_; }

    Elem add(Elem a, Elem b) const {
        if (tables_) return tables_->add[a * size_ + b];
        return detail::mod(a + b, size_);
    }
    Elem neg(Elem a) const {
        if (tables_) return tables_->negation[a];
        return detail::mod(-a, size_);
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        if (tables_) return tables_->mul[a * size_ + b];
        return detail::mod(a * b, size_);
    }
    /// Adds c*b to a.
    Elem axpy(Elem a, Elem c, Elem b) const { return add(a, mul(c, b)); }

    /// Largest v <= k with pi^v | x; length() for zero.
    int valuation(Elem x) const {
        if (x == 0) return k_;
        if (kind_ == RingKind::FiniteField) return 0;
        int v = 0;
        while (v < k_ && x % p_ == 0) { x /= p_; ++v; }
        return v;
    }

    Elem pi_pow(int j) const {
        if (j <= 0) return 1;
        if (j >= k_) return 0;
        return detail::ipow(p_, j);
    }

    bool is_unit(Elem x) const { return valuation(x) == 0; }

    Elem unit_inverse(Elem u) const {
        if (!is_unit(u)) throw Error(ErrorKind::InvalidArgument, "element is not a unit");
        if (tables_) return tables_->inv[u];
        // extended Euclid modulo size_
        Elem a = detail::mod(u, size_), m = size_, x0 = 1, x1 = 0;
        while (m != 0) {
            Elem q = a / m;
            Elem t = a - q * m; a = m; m = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        return detail::mod(x0, size_);
    }

    /// Returns z with y*z = x.  Requires valuation(y) <= valuation(x).
    Elem divide(Elem x, Elem y) const {
        int vx = valuation(x), vy = valuation(y);
        if (vy > vx) throw Error(ErrorKind::Internal, "divide: valuation of divisor too large");
        if (x == 0) return 0;
        if (kind_ == RingKind::FiniteField) return mul(x, unit_inverse(y));
        Elem ux = x, uy = y;
        for (int i = 0; i < vx; ++i) ux /= p_;
        for (int i = 0; i < vy; ++i) uy /= p_;
        return mul(mul(pi_pow(vx - vy), ux), unit_inverse(uy));
    }

    /// Canonical representative of x in R/pi^a.
    Elem reduce(Elem x, int a) const {
        if (a >= k_) return x;
        if (a <= 0) return 0;
        return detail::mod(x, detail::ipow(p_, a));
    }

    /// |R/pi^a|.
    std::uint64_t quotient_size(int a) const {
        std::uint64_t r = 1;
        for (int i = 0; i < a; ++i) r = detail::sat_mul(r, static_cast<std::uint64_t>(residue_));
        return r;
    }

    /// Absolute trace F_q -> F_p (identity on Z/p^k, where it is unused).
    Elem trace(Elem x) const {
        if (tables_) return tables_->trace[x];
        return x;
    }

    friend bool operator==(const BaseRing& a, const BaseRing& b) {
        return a.kind_ == b.kind_ && a.p_ == b.p_ && a.k_ == b.k_ && a.size_ == b.size_;
    }
    friend bool operator!=(const BaseRing& a, const BaseRing& b) { return !(a == b); }

private:
    explicit BaseRing(RingKind kind) : kind_(kind) {}

    RingKind kind_ = RingKind::ZmodPk;
    Elem p_ = 2;
    int k_ = 1;
    int degree_ = 1;
    Elem size_ = 2;
    Elem residue_ = 2;
    std::shared_ptr<const detail::GfTables> tables_;
};

/// Dense row-major matrix of ring elements.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Elem> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<Elem>>& rows_in, std::size_t cols_hint = 0) {
        Matrix m(rows_in.size(), rows_in.empty() ? cols_hint : rows_in.front().size());
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (rows_in[i].size() != m.cols) throw Error(ErrorKind::ShapeMismatch, "ragged matrix rows");
            for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = rows_in[i][j];
        }
        return m;
    }

    Elem& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    Elem operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    Vec column(std::size_t j) const {
        Vec v(rows);
        for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
        return v;
    }

    std::vector<std::vector<Elem>> to_rows() const {
        std::vector<std::vector<Elem>> out(rows, std::vector<Elem>(cols));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) out[i][j] = (*this)(i, j);
        return out;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;
};

inline Matrix multiply(const BaseRing& R, const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw Error(ErrorKind::ShapeMismatch, "matrix product");
    Matrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t l = 0; l < a.cols; ++l) {
            Elem x = a(i, l);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c(i, j) = R.axpy(c(i, j), x, b(l, j));
        }
    return c;
}

inline Vec multiply(const BaseRing& R, const Matrix& a, const Vec& x) {
    if (a.cols != x.size()) throw Error(ErrorKind::ShapeMismatch, "matrix-vector product");
    Vec y(a.rows, 0);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) y[i] = R.axpy(y[i], a(i, j), x[j]);
    return y;
}

}  // namespace quivinj
