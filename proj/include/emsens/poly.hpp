#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace emsens {

/// Truncated polynomial in a perturbation delta: v = sum c_m * delta^m, m <= M.
/// Ring operations truncate at M, so coefficient m of any expression equals
/// the m-th derivative of that expression divided by m!. Used as the scalar
/// type of the forward-mode FDTD oracle.
template <typename T = double>
class Poly {
public:
    Poly() : c_(1, T{}) {}
    explicit Poly(int order) : c_(static_cast<std::size_t>(order) + 1, T{}) {
        if (order < 0) throw std::invalid_argument("Poly: order must be >= 0");
    }

    static Poly constant(T x, int order) {
        Poly p(order);
        p.c_[0] = x;
        return p;
    }
    /// x0 + delta, the seed for differentiating with respect to delta.
    static Poly variable(T x0, int order) {
        Poly p(order);
        p.c_[0] = x0;
        if (order >= 1) p.c_[1] = T{1};
        return p;
    }

    [[nodiscard]] int order() const { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] const T& operator[](int m) const { return c_[static_cast<std::size_t>(m)]; }
    T& operator[](int m) { return c_[static_cast<std::size_t>(m)]; }
    [[nodiscard]] T value() const { return c_[0]; }

    /// m-th derivative with respect to delta: m! * c_m.
    [[nodiscard]] T derivative(int m) const {
        if (m < 0 || m > order()) throw std::out_of_range("Poly::derivative: order out of range");
        T r = c_[static_cast<std::size_t>(m)];
        for (int i = 2; i <= m; ++i) r *= static_cast<double>(i);
        return r;
    }

    Poly& operator+=(const Poly& o) {
        match(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        match(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Poly& operator*=(const Poly& o) {
        match(o);
        const std::size_t n = c_.size();
        std::vector<T> out(n, T{});
        for (std::size_t i = 0; i < n; ++i) {
            if (c_[i] == T{}) continue;
            for (std::size_t j = 0; i + j < n; ++j) out[i + j] += c_[i] * o.c_[j];
        }
        c_ = std::move(out);
        return *this;
    }
    Poly& operator*=(T s) {
        for (auto& v : c_) v *= s;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
    friend Poly operator*(Poly a, T s) { return a *= s; }
    friend Poly operator*(T s, Poly a) { return a *= s; }
    friend Poly operator-(Poly a) {
        for (auto& v : a.c_) v = -v;
        return a;
    }

    /// Multiplicative inverse under truncation; requires c_0 != 0.
    [[nodiscard]] Poly reciprocal() const {
        if (c_[0] == T{}) throw std::domain_error("Poly::reciprocal: zero constant term");
        Poly r(order());
        r.c_[0] = T{1} / c_[0];
        for (int m = 1; m <= order(); ++m) {
            T acc{};
            for (int j = 1; j <= m; ++j) acc += c_[static_cast<std::size_t>(j)] * r.c_[static_cast<std::size_t>(m - j)];
            r.c_[static_cast<std::size_t>(m)] = -acc / c_[0];
        }
        return r;
    }

private:
    void match(const Poly& o) const {
        if (o.c_.size() != c_.size()) throw std::invalid_argument("Poly: mixed truncation orders");
    }
    std::vector<T> c_;
};

inline bool all_finite(double x) { return std::isfinite(x); }
template <typename T>
inline bool all_finite(const std::complex<T>& x) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
}
template <typename T>
inline bool all_finite(const Poly<T>& p) {
    for (int m = 0; m <= p.order(); ++m)
        if (!all_finite(p[m])) return false;
    return true;
}

}  // namespace emsens
