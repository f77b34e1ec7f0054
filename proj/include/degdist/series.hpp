#pragma once

#include "degdist/errors.hpp"
#include "degdist/real.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace degdist {

template <class T>
class Series;

template <class T>
struct is_series : std::false_type {};
template <class T>
struct is_series<Series<T>> : std::true_type {};
template <class T>
inline constexpr bool is_series_v = is_series<T>::value;

// Scalar field underneath any nesting of Series.
template <class T>
struct base_scalar {
    using type = T;
};
template <class T>
struct base_scalar<Series<T>> {
    using type = typename base_scalar<T>::type;
};
template <class T>
using base_scalar_t = typename base_scalar<T>::type;

// Per-domain hooks used by the generic recurrences.
template <class T>
struct CoefTraits;

template <>
struct CoefTraits<Real> {
    static Real zero_like(const Real&) { return Real(0); }
    static Real lift(const Real&, const Real& x) { return x; }
    static bool is_zero(const Real& x) { return x.is_zero(); }
    static void mul_add(Real& acc, const Real& a, const Real& b) {
        mpfr_fma(acc.backend().data(), a.backend().data(), b.backend().data(), acc.backend().data(),
                 MPFR_RNDN);
    }
    static Real exp0(const Real& x) { return exp(x); }
    static Real log0(const Real& x) {
        if (x <= 0) throw DomainError("series log: non-positive constant term");
        return log(x);
    }
    static Real sqrt0(const Real& x) {
        if (x < 0) throw DomainError("series sqrt: negative constant term");
        return sqrt(x);
    }
    static Real pow0(const Real& x, const Rational& p) {
        if (x <= 0) throw DomainError("series pow: non-positive constant term");
        return pow(x, to_real(p));
    }
    static Real max_abs(const Real& x) { return abs(x); }
    static std::string str(const Real& x) { return fmt(x, 12); }
};

template <>
struct CoefTraits<Rational> {
    static Rational zero_like(const Rational&) { return Rational(0); }
    static Rational lift(const Rational&, const Rational& x) { return x; }
    static bool is_zero(const Rational& x) { return x.is_zero(); }
    static void mul_add(Rational& acc, const Rational& a, const Rational& b) {
        if (a.is_zero() || b.is_zero()) return;
        acc += a * b;
    }
    static Rational exp0(const Rational& x) {
        if (!x.is_zero()) throw DomainError("rational exp needs zero constant term");
        return Rational(1);
    }
    static Rational log0(const Rational& x) {
        if (x != 1) throw DomainError("rational log needs constant term 1");
        return Rational(0);
    }
    static Rational sqrt0(const Rational& x) {
        if (x < 0) throw DomainError("rational sqrt: negative constant term");
        BigInt n = numerator(x), d = denominator(x);
        BigInt sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
        if (sn * sn != n || sd * sd != d)
            throw DomainError("rational sqrt: constant term is not a perfect square");
        return Rational(sn, sd);
    }
    static Rational pow0(const Rational& x, const Rational& p) {
        if (x == 1) return Rational(1);
        if (denominator(p) == 1) {
            Rational r = 1;
            long e = static_cast<long>(numerator(p));
            for (long i = 0; i < (e < 0 ? -e : e); ++i) r *= x;
            return e < 0 ? Rational(1) / r : r;
        }
        if (denominator(p) == 2) {
            Rational s = sqrt0(x);
            return pow0(s, Rational(numerator(p)));
        }
        throw DomainError("rational pow: constant term must be 1 for this exponent");
    }
    static Real max_abs(const Rational& x) { return abs(to_real(x)); }
    static std::string str(const Rational& x) { return x.str(); }
};

template <class T>
class Series {
public:
    using coef_type = T;

    Series() = default;

    // All-zero series of the given order; `proto` fixes the shape of nested
    // coefficients.
    Series(std::string var, int order, const T& proto = T(0))
        : var_(std::move(var)), c_(static_cast<std::size_t>(order + 1), CoefTraits<T>::zero_like(proto)) {
        if (order < 0) throw DomainError("series order must be non-negative");
    }

    Series(std::string var, std::vector<T> coeffs) : var_(std::move(var)), c_(std::move(coeffs)) {
        if (c_.empty()) throw DomainError("series needs at least one coefficient");
    }

    static Series constant(const std::string& var, int order, const T& c) {
        Series s(var, order, c);
        s.c_[0] = c;
        return s;
    }

    // The variable itself: 0 + 1*var.
    static Series variable(const std::string& var, int order, const T& proto = T(0)) {
        Series s(var, order, proto);
        if (order >= 1) s.c_[1] = CoefTraits<T>::zero_like(proto) + 1;
        return s;
    }

    const std::string& var() const { return var_; }
    int order() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<T>& coeffs() const { return c_; }
    std::vector<T>& coeffs() { return c_; }
    const T& operator[](int i) const { return c_.at(static_cast<std::size_t>(i)); }
    T& operator[](int i) { return c_.at(static_cast<std::size_t>(i)); }
    T zero() const { return CoefTraits<T>::zero_like(c_[0]); }

    Series truncate(int n) const {
        if (n > order()) throw DomainError("truncate: cannot extend a series");
        return Series(var_, std::vector<T>(c_.begin(), c_.begin() + n + 1));
    }

    // Lowest index with a coefficient not exactly zero (order+1 if none).
    int valuation() const {
        for (int i = 0; i <= order(); ++i)
            if (!CoefTraits<T>::is_zero(c_[i])) return i;
        return order() + 1;
    }

    Series operator-() const {
        Series r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    Series& operator+=(const Series& b) { return *this = *this + b; }
    Series& operator-=(const Series& b) { return *this = *this - b; }
    Series& operator*=(const Series& b) { return *this = *this * b; }

private:
    std::string var_;
    std::vector<T> c_;
};

template <class T>
struct CoefTraits<Series<T>> {
    using S = Series<T>;
    static S zero_like(const S& p) { return S(p.var(), p.order(), p[0]); }
    static S lift(const S& p, const base_scalar_t<T>& x) {
        return S::constant(p.var(), p.order(), CoefTraits<T>::lift(p[0], x));
    }
    static bool is_zero(const S& x) {
        for (const auto& c : x.coeffs())
            if (!CoefTraits<T>::is_zero(c)) return false;
        return true;
    }
    static void mul_add(S& acc, const S& a, const S& b);
    static S exp0(const S& x);
    static S log0(const S& x);
    static S sqrt0(const S& x);
    static S pow0(const S& x, const Rational& p);
    static Real max_abs(const S& x) {
        Real m = 0;
        for (const auto& c : x.coeffs()) m = std::max(m, CoefTraits<T>::max_abs(c));
        return m;
    }
    static std::string str(const S& x);
};

template <class T>
using BiSeries = Series<Series<T>>;

namespace detail {

template <class T>
void same_var(const Series<T>& a, const Series<T>& b) {
    if (a.var() != b.var())
        throw VariableMismatch("series variable mismatch: '" + a.var() + "' vs '" + b.var() + "'");
}

}  // namespace detail

template <class T>
Series<T> operator+(const Series<T>& a, const Series<T>& b) {
    detail::same_var(a, b);
    int n = std::min(a.order(), b.order());
    std::vector<T> c(n + 1);
    for (int i = 0; i <= n; ++i) c[i] = a[i] + b[i];
    return Series<T>(a.var(), std::move(c));
}

template <class T>
Series<T> operator-(const Series<T>& a, const Series<T>& b) {
    detail::same_var(a, b);
    int n = std::min(a.order(), b.order());
    std::vector<T> c(n + 1);
    for (int i = 0; i <= n; ++i) c[i] = a[i] - b[i];
    return Series<T>(a.var(), std::move(c));
}

template <class T>
Series<T> operator*(const Series<T>& a, const Series<T>& b) {
    detail::same_var(a, b);
    int n = std::min(a.order(), b.order());
    Series<T> r(a.var(), n, a[0]);
    int va = a.valuation(), vb = b.valuation();
    for (int i = va; i <= n; ++i) {
        if (CoefTraits<T>::is_zero(a[i])) continue;
        for (int j = vb; i + j <= n; ++j) CoefTraits<T>::mul_add(r[i + j], a[i], b[j]);
    }
    return r;
}

template <class T>
void CoefTraits<Series<T>>::mul_add(Series<T>& acc, const Series<T>& a, const Series<T>& b) {
    if (is_zero(a) || is_zero(b)) return;
    int n = std::min({acc.order(), a.order(), b.order()});
    if (n < acc.order()) acc = acc.truncate(n);
    int va = a.valuation(), vb = b.valuation();
    for (int i = va; i <= n; ++i) {
        if (CoefTraits<T>::is_zero(a[i])) continue;
        for (int j = vb; i + j <= n; ++j) CoefTraits<T>::mul_add(acc[i + j], a[i], b[j]);
    }
}

// Coefficient-wise scalar operations (scalar = coefficient type).
template <class T>
Series<T> operator*(const Series<T>& a, const T& s) {
    Series<T> r = a;
    for (auto& c : r.coeffs()) c = c * s;
    return r;
}
template <class T>
Series<T> operator*(const T& s, const Series<T>& a) {
    Series<T> r = a;
    for (auto& c : r.coeffs()) c = s * c;
    return r;
}
template <class T>
Series<T> operator/(const Series<T>& a, const T& s) {
    Series<T> r = a;
    for (auto& c : r.coeffs()) c = c / s;
    return r;
}
template <class T>
Series<T> operator+(const Series<T>& a, const T& s) {
    Series<T> r = a;
    r[0] = r[0] + s;
    return r;
}
template <class T>
Series<T> operator+(const T& s, const Series<T>& a) {
    return a + s;
}
template <class T>
Series<T> operator-(const Series<T>& a, const T& s) {
    Series<T> r = a;
    r[0] = r[0] - s;
    return r;
}
template <class T>
Series<T> operator-(const T& s, const Series<T>& a) {
    Series<T> r = -a;
    r[0] = r[0] + s;
    return r;
}

// Base-scalar operations for nested series (e.g. BiSeries<Real> times Real).
template <class T, class S,
          class = std::enable_if_t<is_series_v<T> && std::is_same_v<S, base_scalar_t<T>>>>
Series<T> operator*(const Series<T>& a, const S& s) {
    Series<T> r = a;
    for (auto& c : r.coeffs()) c = c * s;
    return r;
}
template <class T, class S,
          class = std::enable_if_t<is_series_v<T> && std::is_same_v<S, base_scalar_t<T>>>>
Series<T> operator*(const S& s, const Series<T>& a) {
    return a * s;
}
template <class T, class S,
          class = std::enable_if_t<is_series_v<T> && std::is_same_v<S, base_scalar_t<T>>>>
Series<T> operator/(const Series<T>& a, const S& s) {
    Series<T> r = a;
    for (auto& c : r.coeffs()) c = c / s;
    return r;
}
template <class T, class S,
          class = std::enable_if_t<is_series_v<T> && std::is_same_v<S, base_scalar_t<T>>>>
Series<T> operator+(const Series<T>& a, const S& s) {
    Series<T> r = a;
    r[0] = r[0] + s;
    return r;
}
template <class T, class S,
          class = std::enable_if_t<is_series_v<T> && std::is_same_v<S, base_scalar_t<T>>>>
Series<T> operator+(const S& s, const Series<T>& a) {
    return a + s;
}
template <class T, class S,
          class = std::enable_if_t<is_series_v<T> && std::is_same_v<S, base_scalar_t<T>>>>
Series<T> operator-(const Series<T>& a, const S& s) {
    Series<T> r = a;
    r[0] = r[0] - s;
    return r;
}
template <class T, class S,
          class = std::enable_if_t<is_series_v<T> && std::is_same_v<S, base_scalar_t<T>>>>
Series<T> operator-(const S& s, const Series<T>& a) {
    Series<T> r = -a;
    r[0] = r[0] + s;
    return r;
}

// Integer literals.
template <class T>
Series<T> operator*(const Series<T>& a, long s) {
    Series<T> r = a;
    for (auto& c : r.coeffs()) c = c * s;
    return r;
}
template <class T>
Series<T> operator*(long s, const Series<T>& a) {
    return a * s;
}
template <class T>
Series<T> operator/(const Series<T>& a, long s) {
    Series<T> r = a;
    for (auto& c : r.coeffs()) c = c / s;
    return r;
}
template <class T>
Series<T> operator+(const Series<T>& a, long s) {
    Series<T> r = a;
    r[0] = r[0] + s;
    return r;
}
template <class T>
Series<T> operator+(long s, const Series<T>& a) {
    return a + s;
}
template <class T>
Series<T> operator-(const Series<T>& a, long s) {
    Series<T> r = a;
    r[0] = r[0] - s;
    return r;
}
template <class T>
Series<T> operator-(long s, const Series<T>& a) {
    Series<T> r = -a;
    r[0] = r[0] + s;
    return r;
}

template <class T>
Series<T> inv(const Series<T>& b) {
    if (CoefTraits<T>::is_zero(b[0]))
        throw DivisionByZeroValuation("series division: zero constant term");
    int n = b.order();
    Series<T> q(b.var(), n, b[0]);
    T b0inv = (CoefTraits<T>::zero_like(b[0]) + 1) / b[0];
    q[0] = b0inv;
    for (int i = 1; i <= n; ++i) {
        T acc = CoefTraits<T>::zero_like(b[0]);
        for (int k = 1; k <= i; ++k) CoefTraits<T>::mul_add(acc, b[k], q[i - k]);
        q[i] = -(acc * b0inv);
    }
    return q;
}

template <class T>
Series<T> operator/(const Series<T>& a, const Series<T>& b) {
    detail::same_var(a, b);
    if (CoefTraits<T>::is_zero(b[0]))
        throw DivisionByZeroValuation("series division: zero constant term");
    int n = std::min(a.order(), b.order());
    Series<T> q(a.var(), n, a[0]);
    T b0inv = (CoefTraits<T>::zero_like(b[0]) + 1) / b[0];
    for (int i = 0; i <= n; ++i) {
        T acc = a[i];
        for (int k = 1; k <= i; ++k) {
            if (CoefTraits<T>::is_zero(b[k])) continue;
            acc = acc - b[k] * q[i - k];
        }
        q[i] = acc * b0inv;
    }
    return q;
}

template <class T>
Series<T> operator/(const T& s, const Series<T>& b) {
    return Series<T>::constant(b.var(), b.order(), s) / b;
}
template <class T, class S,
          class = std::enable_if_t<is_series_v<T> && std::is_same_v<S, base_scalar_t<T>>>>
Series<T> operator/(const S& s, const Series<T>& b) {
    return Series<T>::constant(b.var(), b.order(), CoefTraits<T>::lift(b[0], s)) / b;
}
template <class T>
Series<T> operator/(long s, const Series<T>& b) {
    return Series<T>::constant(b.var(), b.order(), CoefTraits<T>::zero_like(b[0]) + s) / b;
}

template <class T>
Series<T> exp(const Series<T>& a) {
    int n = a.order();
    Series<T> e(a.var(), n, a[0]);
    e[0] = CoefTraits<T>::exp0(a[0]);
    for (int i = 1; i <= n; ++i) {
        T acc = a.zero();
        for (int k = 1; k <= i; ++k) {
            if (CoefTraits<T>::is_zero(a[k])) continue;
            CoefTraits<T>::mul_add(acc, a[k] * static_cast<long>(k), e[i - k]);
        }
        e[i] = acc / static_cast<long>(i);
    }
    return e;
}

template <class T>
Series<T> log(const Series<T>& a) {
    int n = a.order();
    Series<T> l(a.var(), n, a[0]);
    l[0] = CoefTraits<T>::log0(a[0]);
    T a0inv = (a.zero() + 1) / a[0];
    for (int i = 1; i <= n; ++i) {
        T acc = a.zero();
        for (int k = 1; k < i; ++k) CoefTraits<T>::mul_add(acc, l[k] * static_cast<long>(k), a[i - k]);
        l[i] = (a[i] - acc / static_cast<long>(i)) * a0inv;
    }
    return l;
}

template <class T>
Series<T> sqrt(const Series<T>& a) {
    int n = a.order();
    Series<T> s(a.var(), n, a[0]);
    s[0] = CoefTraits<T>::sqrt0(a[0]);
    if (CoefTraits<T>::is_zero(s[0])) throw DomainError("series sqrt: zero constant term");
    T inv2s0 = (a.zero() + 1) / (s[0] * 2L);
    for (int i = 1; i <= n; ++i) {
        T acc = a.zero();
        for (int k = 1; k < i; ++k) CoefTraits<T>::mul_add(acc, s[k], s[i - k]);
        s[i] = (a[i] - acc) * inv2s0;
    }
    return s;
}

// a^p for rational p (J.C.P. Miller recurrence).
template <class T>
Series<T> pow(const Series<T>& a, const Rational& p) {
    if (CoefTraits<T>::is_zero(a[0])) throw DomainError("series pow: zero constant term");
    int n = a.order();
    Series<T> b(a.var(), n, a[0]);
    b[0] = CoefTraits<T>::pow0(a[0], p);
    T a0inv = (a.zero() + 1) / a[0];
    const long pn = static_cast<long>(numerator(p)), pd = static_cast<long>(denominator(p));
    for (int i = 1; i <= n; ++i) {
        T acc = a.zero();
        for (int k = 1; k <= i; ++k) {
            long w = (pn + pd) * k - pd * i;  // ((p+1)k - i) * pd
            if (w == 0 || CoefTraits<T>::is_zero(a[k])) continue;
            CoefTraits<T>::mul_add(acc, a[k] * w, b[i - k]);
        }
        b[i] = acc * a0inv / (static_cast<long>(i) * pd);
    }
    return b;
}

template <class T>
Series<T> pow(const Series<T>& a, int k) {
    if (k < 0) return inv(pow(a, -k));
    Series<T> r = Series<T>::constant(a.var(), a.order(), a.zero() + 1);
    Series<T> base = a;
    while (k > 0) {
        if (k & 1) r = r * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return r;
}

template <class T>
Series<T> derivative(const Series<T>& a) {
    int n = a.order();
    if (n == 0) return Series<T>(a.var(), 0, a[0]);
    std::vector<T> c(n);
    for (int i = 1; i <= n; ++i) c[i - 1] = a[i] * static_cast<long>(i);
    return Series<T>(a.var(), std::move(c));
}

// Antiderivative with zero constant; the result has order one higher.
template <class T>
Series<T> integrate(const Series<T>& a) {
    int n = a.order();
    Series<T> r(a.var(), n + 1, a[0]);
    for (int i = 0; i <= n; ++i) r[i + 1] = a[i] / static_cast<long>(i + 1);
    return r;
}

// Multiply by var^k keeping the order.
template <class T>
Series<T> shift_up(const Series<T>& a, int k) {
    Series<T> r(a.var(), a.order(), a[0]);
    for (int i = k; i <= a.order(); ++i) r[i] = a[i - k];
    return r;
}

// Divide by var^k. Coefficients below k must vanish up to `tol` (exactly for
// rationals); the result has order reduced by k.
template <class T>
Series<T> shift_down(const Series<T>& a, int k, const Real& tol = Real(0)) {
    if (k > a.order()) throw DivisionByZeroValuation("shift_down beyond order");
    for (int i = 0; i < k; ++i) {
        if constexpr (std::is_same_v<base_scalar_t<T>, Rational>) {
            if (!CoefTraits<T>::is_zero(a[i]))
                throw DivisionByZeroValuation("shift_down: nonzero low coefficient");
        } else {
            if (CoefTraits<T>::max_abs(a[i]) > tol)
                throw DivisionByZeroValuation("shift_down: low coefficient " +
                                              fmt(CoefTraits<T>::max_abs(a[i]), 3) + " exceeds tolerance");
        }
    }
    std::vector<T> c(a.coeffs().begin() + k, a.coeffs().end());
    return Series<T>(a.var(), std::move(c));
}

// a / b where both vanish to order v at 0.
template <class T>
Series<T> divide_valuation(const Series<T>& a, const Series<T>& b, int v, const Real& tol = Real(0)) {
    return shift_down(a, v, tol) / shift_down(b, v, tol);
}

template <class T>
Series<T> set_order(const Series<T>& a, int n) {
    if (n <= a.order()) return a.truncate(n);
    Series<T> r(a.var(), n, a[0]);
    for (int i = 0; i <= a.order(); ++i) r[i] = a[i];
    return r;
}

// outer(inner(x)). The result lives in inner's variable and has the order of
// the inner series. Outer coefficients may be of a richer type than inner's.
template <class T, class S>
Series<T> compose(const Series<T>& outer, const Series<S>& inner, bool outer_is_polynomial = false) {
    if (!CoefTraits<S>::is_zero(inner[0]) && !outer_is_polynomial)
        throw NonzeroValuation("compose: inner series has a nonzero constant term");
    int n = inner.order();
    Series<T> r(inner.var(), n, outer[0]);
    Series<S> p = Series<S>::constant(inner.var(), n, inner.zero() + 1);
    int top = outer_is_polynomial ? outer.order() : std::min(outer.order(), n);
    for (int j = 0; j <= top; ++j) {
        if (!CoefTraits<T>::is_zero(outer[j])) {
            for (int i = 0; i <= n; ++i)
                if (!CoefTraits<S>::is_zero(p[i])) r[i] = r[i] + outer[j] * p[i];
        }
        if (j < top) p = p * inner;
    }
    return r;
}

// Sum of coefficients times powers of x (Horner).
template <class T, class V>
auto evaluate(const Series<T>& a, const V& x) {
    auto acc = a[a.order()];
    for (int i = a.order() - 1; i >= 0; --i) acc = acc * x + a[i];
    return acc;
}

template <class T>
Real max_abs_diff(const Series<T>& a, const Series<T>& b) {
    return CoefTraits<Series<T>>::max_abs(a.truncate(std::min(a.order(), b.order())) -
                                          b.truncate(std::min(a.order(), b.order())));
}

template <class T>
bool exactly_equal(const Series<T>& a, const Series<T>& b) {
    if (a.order() != b.order()) return false;
    return CoefTraits<Series<T>>::is_zero(a - b);
}

// Leading coefficients on which a and b agree (exactly, or within tol).
template <class T>
int agreeing_prefix(const Series<T>& a, const Series<T>& b, const Real& tol) {
    int n = std::min(a.order(), b.order());
    for (int i = 0; i <= n; ++i) {
        T d = a[i] - b[i];
        bool same;
        if constexpr (std::is_same_v<base_scalar_t<T>, Rational>)
            same = CoefTraits<T>::is_zero(d);
        else
            same = CoefTraits<T>::max_abs(d) <= tol * (1 + CoefTraits<T>::max_abs(a[i]));
        if (!same) return i;
    }
    return n + 1;
}

// Solves y = phi(y) by iteration from `init`. In strict mode each iteration
// must fix at least one more leading coefficient; otherwise the iteration
// only has to settle within max_iter steps (used for nested unknowns that
// contract in an inner variable).
template <class T, class F>
Series<T> fixed_point(F&& phi, Series<T> init, int max_iter = -1, bool strict = true,
                      const Real& tol = Real(0)) {
    int n = init.order();
    if (max_iter < 0) max_iter = n + 2;
    int settled = -1;
    Series<T> y = std::move(init);
    for (int it = 0; it < max_iter; ++it) {
        Series<T> next = phi(y);
        if (next.order() != n) next = set_order(next, n);
        int pre = agreeing_prefix(next, y, tol);
        if (pre > n) return next;
        if (strict && pre <= settled)
            throw NotContracting("fixed_point: iteration " + std::to_string(it) +
                                 " did not fix a new coefficient");
        settled = std::max(settled, pre);
        y = std::move(next);
    }
    if (agreeing_prefix(phi(y), y, tol) > n) return y;
    throw NotContracting("fixed_point: no convergence within " + std::to_string(max_iter) + " iterations");
}

// Newton iteration on series for G(y) = 0 when G is not contracting.
// G must accept a BiSeries<T> (a dual number in "eps"). The tolerance is
// relative to the size of the coefficients.
template <class T, class G>
Series<T> newton_series(G&& g, Series<T> y, const Real& tol, int max_iter = 40) {
    for (int it = 0; it < max_iter; ++it) {
        BiSeries<T> dual(std::string("eps"), 1, y);
        dual[0] = y;
        dual[1] = Series<T>::constant(y.var(), y.order(), y.zero() + 1);
        BiSeries<T> gv = g(dual);
        Series<T> step = gv[0] / gv[1];
        y = y - step;
        if (CoefTraits<Series<T>>::max_abs(step) <= tol * (1 + CoefTraits<Series<T>>::max_abs(y))) return y;
    }
    throw NoConvergence("newton_series: no convergence");
}

template <class T>
Series<T> CoefTraits<Series<T>>::exp0(const Series<T>& x) {
    return exp(x);
}
template <class T>
Series<T> CoefTraits<Series<T>>::log0(const Series<T>& x) {
    return log(x);
}
template <class T>
Series<T> CoefTraits<Series<T>>::sqrt0(const Series<T>& x) {
    return sqrt(x);
}
template <class T>
Series<T> CoefTraits<Series<T>>::pow0(const Series<T>& x, const Rational& p) {
    return pow(x, p);
}

template <class T>
std::string CoefTraits<Series<T>>::str(const Series<T>& x) {
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (int i = 0; i <= x.order(); ++i) {
        if (CoefTraits<T>::is_zero(x[i])) continue;
        if (!first) os << " + ";
        first = false;
        os << CoefTraits<T>::str(x[i]);
        if (i > 0) os << "*" << x.var() << "^" << i;
    }
    if (first) os << "0";
    os << " + O(" << x.var() << "^" << x.order() + 1 << "))";
    return os.str();
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Series<T>& s) {
    return os << CoefTraits<Series<T>>::str(s);
}

// Lift a base scalar into the shape of `proto` (identity for scalars).
template <class V>
V lift_like(const V& proto, const base_scalar_t<V>& x) {
    if constexpr (is_series_v<V>)
        return CoefTraits<V>::lift(proto, x);
    else
        return x;
}

}  // namespace degdist
