#pragma once

// Dense univariate polynomials, Sturm chains, real root isolation and
// Sylvester resultants.

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gyro3 {

template <class T>
class BasicPoly {
public:
    BasicPoly() = default;
    BasicPoly(std::initializer_list<T> ascending) : c_(ascending) { trim(); }
    explicit BasicPoly(std::vector<T> ascending) : c_(std::move(ascending)) { trim(); }

    static BasicPoly constant(T v) { return BasicPoly({v}); }
    static BasicPoly monomial(int k, T v = T(1))
    {
        std::vector<T> c(k + 1, T(0));
        c[k] = v;
        return BasicPoly(std::move(c));
    }
    // (x - r)
    static BasicPoly linear_root(T r) { return BasicPoly({-r, T(1)}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? -1 : int(c_.size()) - 1; }
    T coeff(int i) const { return (i >= 0 && i < int(c_.size())) ? c_[i] : T(0); }
    T leading() const { return c_.empty() ? T(0) : c_.back(); }
    const std::vector<T>& coeffs() const { return c_; }

    T operator()(T x) const
    {
        T s = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * x + *it;
        return s;
    }

    BasicPoly derivative() const
    {
        if (c_.size() <= 1) return {};
        std::vector<T> d(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = T(i) * c_[i];
        return BasicPoly(std::move(d));
    }

    T max_abs_coeff() const
    {
        T m = 0;
        for (T v : c_) m = std::max(m, std::abs(v));
        return m;
    }

    // Ratio of largest to smallest nonzero coefficient magnitude.
    T condition_ratio() const
    {
        T lo = std::numeric_limits<T>::infinity(), hi = 0;
        for (T v : c_)
            if (v != T(0)) { lo = std::min(lo, std::abs(v)); hi = std::max(hi, std::abs(v)); }
        return hi == T(0) ? T(1) : hi / lo;
    }

    BasicPoly normalized() const
    {
        T m = max_abs_coeff();
        if (m == T(0)) return *this;
        return (*this) * (T(1) / m);
    }

    // Zero out coefficients below tol * max|coeff|.
    BasicPoly chopped(T tol) const
    {
        T m = max_abs_coeff();
        std::vector<T> c = c_;
        for (T& v : c)
            if (std::abs(v) <= tol * m) v = T(0);
        return BasicPoly(std::move(c));
    }

    BasicPoly& operator+=(const BasicPoly& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    BasicPoly& operator-=(const BasicPoly& o) { return *this += o * T(-1); }
    friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
    friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }
    friend BasicPoly operator-(const BasicPoly& a) { return a * T(-1); }

    friend BasicPoly operator*(const BasicPoly& a, T s)
    {
        std::vector<T> c = a.c_;
        for (T& v : c) v *= s;
        return BasicPoly(std::move(c));
    }
    friend BasicPoly operator*(T s, const BasicPoly& a) { return a * s; }

    friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return BasicPoly(std::move(c));
    }

    BasicPoly pow(int k) const
    {
        BasicPoly r = constant(T(1));
        for (int i = 0; i < k; ++i) r = r * (*this);
        return r;
    }

    // Euclidean division: *this = q * d + r.
    std::pair<BasicPoly, BasicPoly> divmod(const BasicPoly& d) const
    {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<T> r = c_;
        int n = degree(), m = d.degree();
        if (n < m) return {BasicPoly{}, *this};
        std::vector<T> q(n - m + 1, T(0));
        for (int k = n - m; k >= 0; --k) {
            T f = r[k + m] / d.leading();
            q[k] = f;
            for (int j = 0; j <= m; ++j) r[k + j] -= f * d.c_[j];
            r[k + m] = T(0);
        }
        r.resize(m);
        return {BasicPoly(std::move(q)), BasicPoly(std::move(r))};
    }

    friend bool operator==(const BasicPoly& a, const BasicPoly& b) { return a.c_ == b.c_; }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
    }
    std::vector<T> c_;
};

using RealPoly = BasicPoly<double>;

// Tolerance below which a remainder is treated as the zero polynomial.
inline constexpr double kRemainderTol = 1e-10;

template <class T>
T cauchy_bound(const BasicPoly<T>& p)
{
    if (p.degree() < 1) return T(1);
    T m = 0;
    for (int i = 0; i < p.degree(); ++i) m = std::max(m, std::abs(p.coeff(i) / p.leading()));
    return T(1) + m;
}

template <class T>
BasicPoly<T> poly_gcd(BasicPoly<T> a, BasicPoly<T> b, T tol = T(kRemainderTol))
{
    a = a.normalized();
    b = b.normalized();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        // Compare against the dividend scale so that cancellation is caught.
        T scale = std::max(a.max_abs_coeff(), b.max_abs_coeff());
        if (r.max_abs_coeff() <= tol * scale) break;
        a = b;
        b = r.normalized();
    }
    return b.is_zero() ? a : b.normalized();
}

// p / gcd(p, p'), the polynomial with the same distinct roots and no repeats.
template <class T>
BasicPoly<T> square_free(const BasicPoly<T>& p, T tol = T(kRemainderTol))
{
    if (p.degree() < 1) return p;
    auto g = poly_gcd(p, p.derivative(), tol);
    if (g.degree() < 1) return p.normalized();
    return p.divmod(g).first.normalized();
}

template <class T>
std::vector<BasicPoly<T>> sturm_chain(const BasicPoly<T>& p, T tol = T(kRemainderTol))
{
    std::vector<BasicPoly<T>> chain;
    chain.push_back(p.normalized());
    if (p.degree() < 1) return chain;
    chain.push_back(p.derivative().normalized());
    while (chain.back().degree() > 0) {
        const auto& a = chain[chain.size() - 2];
        const auto& b = chain.back();
        auto r = a.divmod(b).second;
        T scale = std::max(a.max_abs_coeff(), b.max_abs_coeff());
        if (r.max_abs_coeff() <= tol * scale) break;
        chain.push_back((-r).normalized());
    }
    return chain;
}

template <class T>
int sign_variations(const std::vector<BasicPoly<T>>& chain, T x)
{
    int v = 0, last = 0;
    for (const auto& q : chain) {
        T y = q(x);
        int s = (y > 0) - (y < 0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

// Sign variations at +/- infinity from leading coefficients.
template <class T>
int sign_variations_at_infinity(const std::vector<BasicPoly<T>>& chain, bool positive)
{
    int v = 0, last = 0;
    for (const auto& q : chain) {
        T lc = q.leading();
        int s = (lc > 0) - (lc < 0);
        if (!positive && (q.degree() % 2 == 1)) s = -s;
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

namespace detail {
template <class T>
T nudge_off_root(const BasicPoly<T>& q, T a, T b)
{
    T x = a;
    T step = std::max(std::abs(a), T(1)) * T(64) * std::numeric_limits<T>::epsilon();
    T scale = q.max_abs_coeff();
    for (int i = 0; i < 60 && std::abs(q(x)) <= std::numeric_limits<T>::epsilon() * scale; ++i) {
        x = a + step;
        step *= 2;
        if (x >= b) break;
    }
    return x;
}
} // namespace detail

// Number of distinct real roots in (a, b].
template <class T>
int sturm_count(const BasicPoly<T>& p, T a, T b, T tol = T(kRemainderTol))
{
    if (p.is_zero()) throw std::domain_error("sturm_count of the zero polynomial");
    if (!(a < b)) throw std::domain_error("sturm_count requires a < b");
    if (p.degree() < 1) return 0;
    auto q = square_free(p, tol);
    auto chain = sturm_chain(q, tol);
    bool a_inf = std::isinf(a), b_inf = std::isinf(b);
    if (!a_inf) a = detail::nudge_off_root(q, a, b);
    int va = a_inf ? sign_variations_at_infinity(chain, a > 0) : sign_variations(chain, a);
    int vb = b_inf ? sign_variations_at_infinity(chain, b > 0) : sign_variations(chain, b);
    return va - vb;
}

template <class T>
int sturm_count_all(const BasicPoly<T>& p, T tol = T(kRemainderTol))
{
    T inf = std::numeric_limits<T>::infinity();
    return sturm_count(p, -inf, inf, tol);
}

struct RefinedRoot {
    double value = 0;
    int multiplicity = 1;
    double residual = 0;  // |p(value)|
    bool converged = true;
    double lo = 0, hi = 0;  // final bracket
};

struct RootReport {
    double a = 0, b = 0;
    int count = 0;
    std::vector<RefinedRoot> roots;
    std::string warning;
};

namespace detail {

template <class T>
T safe_newton(const BasicPoly<T>& q, T lo, T hi, T tol, bool& converged)
{
    auto dq = q.derivative();
    T flo = q(lo), fhi = q(hi);
    if (flo == T(0)) return lo;
    if (fhi == T(0)) return hi;
    if ((flo > 0) == (fhi > 0)) {
        // No sign change; can happen for a tangential root left by round-off.
        converged = false;
        return (lo + hi) / 2;
    }
    if (flo > 0) std::swap(lo, hi);  // q(lo) < 0
    T x = (lo + hi) / 2;
    T dx_old = std::abs(hi - lo), dx = dx_old;
    T f = q(x), df = dq(x);
    for (int it = 0; it < 200; ++it) {
        bool out = (((x - hi) * df - f) * ((x - lo) * df - f) > 0) || (std::abs(2 * f) > std::abs(dx_old * df));
        dx_old = dx;
        if (out) {
            dx = (hi - lo) / 2;
            x = lo + dx;
        } else {
            dx = f / df;
            x -= dx;
        }
        if (std::abs(dx) <= tol * std::max(T(1), std::abs(x))) return x;
        f = q(x);
        df = dq(x);
        if (f < 0) lo = x; else hi = x;
        if (f == T(0)) return x;
    }
    converged = false;
    return x;
}

template <class T>
void isolate(const std::vector<BasicPoly<T>>& chain, T a, T b, int va, int vb, int depth,
             std::vector<std::pair<T, T>>& out)
{
    int n = va - vb;
    if (n <= 0) return;
    if (n == 1 || depth > 200 || !(b - a > std::numeric_limits<T>::epsilon() * std::max(T(1), std::abs(a)))) {
        for (int i = 0; i < n; ++i) out.emplace_back(a, b);
        return;
    }
    T m = (a + b) / 2;
    int vm = sign_variations(chain, m);
    isolate(chain, a, m, va, vm, depth + 1, out);
    isolate(chain, m, b, vm, vb, depth + 1, out);
}

template <class T>
int multiplicity_in(const BasicPoly<T>& p, T lo, T hi, T tol)
{
    int mult = 1;
    BasicPoly<T> g = poly_gcd(p, p.derivative(), tol);
    while (g.degree() >= 1 && mult < p.degree()) {
        if (sturm_count(g, lo, hi, tol) < 1) break;
        ++mult;
        g = poly_gcd(g, g.derivative(), tol);
    }
    return mult;
}

} // namespace detail

// Isolate every distinct root in (a, b] and refine to |dx| <= tol.
// Infinite endpoints are replaced by the Cauchy bound.
template <class T>
RootReport isolate_and_refine(const BasicPoly<T>& p, T a, T b, T tol = T(1e-14), T rem_tol = T(kRemainderTol))
{
    if (p.is_zero()) throw std::domain_error("isolate_and_refine of the zero polynomial");
    RootReport rep;
    T bound = cauchy_bound(p);
    if (std::isinf(a) || a < -bound) a = -bound;
    if (std::isinf(b) || b > bound) b = bound;
    rep.a = double(a);
    rep.b = double(b);
    if (!(a < b) || p.degree() < 1) return rep;
    if (p.condition_ratio() > T(1e12)) rep.warning = "coefficient magnitude ratio exceeds 1e12";
    auto q = square_free(p, rem_tol);
    auto chain = sturm_chain(q, rem_tol);
    a = detail::nudge_off_root(q, a, b);
    std::vector<std::pair<T, T>> brackets;
    detail::isolate(chain, a, b, sign_variations(chain, a), sign_variations(chain, b), 0, brackets);
    for (auto [lo, hi] : brackets) {
        RefinedRoot r;
        bool ok = true;
        T x = detail::safe_newton(q, lo, hi, tol, ok);
        r.value = double(x);
        r.converged = ok;
        r.lo = double(lo);
        r.hi = double(hi);
        r.multiplicity = detail::multiplicity_in(p, lo, hi, rem_tol);
        r.residual = double(std::abs(p(x)));
        rep.roots.push_back(r);
    }
    rep.count = int(rep.roots.size());
    return rep;
}

// Determinant by fraction-free (Bareiss) elimination with row pivoting.
template <class T>
T bareiss_determinant(std::vector<std::vector<T>> M)
{
    const int n = int(M.size());
    if (n == 0) return T(1);
    T sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(M[i][k]) > std::abs(M[piv][k])) piv = i;
        if (M[piv][k] == T(0)) return T(0);
        if (piv != k) { std::swap(M[piv], M[k]); sign = -sign; }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
            M[i][k] = 0;
        }
        prev = M[k][k];
    }
    return sign * M[n - 1][n - 1];
}

template <class T>
std::vector<std::vector<T>> sylvester_matrix(const BasicPoly<T>& p, const BasicPoly<T>& q)
{
    int m = p.degree(), n = q.degree();
    int N = m + n;
    std::vector<std::vector<T>> S(N, std::vector<T>(N, T(0)));
    for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j) S[r][r + j] = p.coeff(m - j);
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j) S[n + r][r + j] = q.coeff(n - j);
    return S;
}

template <class T>
T resultant(const BasicPoly<T>& p, const BasicPoly<T>& q)
{
    if (p.is_zero() || q.is_zero()) throw std::domain_error("resultant of the zero polynomial");
    if (p.degree() < 1 && q.degree() < 1) return T(1);
    return bareiss_determinant(sylvester_matrix(p, q));
}

template <class T>
T discriminant(const BasicPoly<T>& p)
{
    int n = p.degree();
    if (n < 1) throw std::domain_error("discriminant needs degree >= 1");
    if (n == 1) return T(1);
    T s = ((n * (n - 1) / 2) % 2 == 0) ? T(1) : T(-1);
    return s * resultant(p, p.derivative()) / p.leading();
}

} // namespace gyro3
