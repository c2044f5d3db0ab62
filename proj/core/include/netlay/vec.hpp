#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace netlay {

// Small fixed-dimension vector for 2D/3D simulation state.
template <int D>
struct Vec {
    static_assert(D >= 1 && D <= 3);
    std::array<double, D> c{};

    double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

    Vec& operator+=(const Vec& o) {
        for (int k = 0; k < D; ++k) c[k] += o.c[k];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (int k = 0; k < D; ++k) c[k] -= o.c[k];
        return *this;
    }
    Vec& operator*=(double s) {
        for (int k = 0; k < D; ++k) c[k] *= s;
        return *this;
    }

    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(Vec a, double s) { return a *= s; }
    friend Vec operator*(double s, Vec a) { return a *= s; }

    friend bool operator==(const Vec& a, const Vec& b) { return a.c == b.c; }
};

template <int D>
inline double dot(const Vec<D>& a, const Vec<D>& b) {
    double s = 0.0;
    for (int k = 0; k < D; ++k) s += a.c[k] * b.c[k];
    return s;
}

template <int D>
inline double norm2(const Vec<D>& a) {
    return dot(a, a);
}

template <int D>
inline double norm(const Vec<D>& a) {
    return std::sqrt(norm2(a));
}

template <int D>
inline bool is_finite(const Vec<D>& a) {
    for (int k = 0; k < D; ++k)
        if (!std::isfinite(a.c[k])) return false;
    return true;
}

using Vec2 = Vec<2>;
using Vec3 = Vec<3>;

} // namespace netlay
