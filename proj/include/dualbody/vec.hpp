#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dualbody {

// Small fixed-capacity vector for points and directions in R^n, n <= kMaxDim.
// The geometric pipelines support n = 2 and n = 3; closed-form body oracles
// and Monte Carlo work for any n up to the capacity.
inline constexpr int kMaxDim = 6;

struct Vec {
    int n = 0;
    std::array<double, kMaxDim> c{};

    Vec() = default;
    explicit Vec(int dim) : n(dim) {
        if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("Vec: bad dimension");
    }
    Vec(double x, double y) : n(2) { c[0] = x; c[1] = y; }
    Vec(double x, double y, double z) : n(3) { c[0] = x; c[1] = y; c[2] = z; }

    double& operator[](int i) { return c[static_cast<size_t>(i)]; }
    double operator[](int i) const { return c[static_cast<size_t>(i)]; }

    Vec& operator+=(const Vec& o) { for (int i = 0; i < n; ++i) c[i] += o.c[i]; return *this; }
    Vec& operator-=(const Vec& o) { for (int i = 0; i < n; ++i) c[i] -= o.c[i]; return *this; }
    Vec& operator*=(double s) { for (int i = 0; i < n; ++i) c[i] *= s; return *this; }

    friend Vec operator+(Vec a, const Vec& b) { a += b; return a; }
    friend Vec operator-(Vec a, const Vec& b) { a -= b; return a; }
    friend Vec operator*(double s, Vec a) { a *= s; return a; }
    friend Vec operator*(Vec a, double s) { a *= s; return a; }
    friend Vec operator-(Vec a) { a *= -1.0; return a; }
};

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (int i = 0; i < a.n; ++i) s += a.c[i] * b.c[i];
    return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

inline Vec cross3(const Vec& a, const Vec& b) {
    return Vec(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]);
}

inline Vec unit_vec(int n, int axis) {
    Vec v(n);
    v[axis] = 1.0;
    return v;
}

// Unit-norm direction on S^{n-1}.  Construction renormalizes and rejects
// inputs that are not within 1e-12 of unit length unless `normalize` is set.
struct Dir {
    Vec v;

    Dir() = default;
    explicit Dir(const Vec& w, bool normalize = true) : v(w) {
        double r = norm2(w);
        if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("Dir: zero or non-finite vector");
        if (normalize) {
            v *= 1.0 / r;
        } else if (std::abs(r - 1.0) > 1e-12) {
            throw std::invalid_argument("Dir: not unit length (|r-1| = " + std::to_string(std::abs(r - 1.0)) + ")");
        }
    }

    int dim() const { return v.n; }
    double operator[](int i) const { return v[i]; }
};

inline Dir dir2(double theta) { return Dir(Vec(std::cos(theta), std::sin(theta)), false); }

inline double angle_of(const Vec& v) { return std::atan2(v[1], v[0]); }

inline Vec rot90ccw(const Vec& a) { return Vec(-a[1], a[0]); }

// Dense square matrix for n = 2,3 linear maps (rotations, diagonal scalings).
struct Mat {
    int n = 0;
    std::array<double, kMaxDim * kMaxDim> a{};

    Mat() = default;
    explicit Mat(int dim) : n(dim) {}

    double& at(int i, int j) { return a[static_cast<size_t>(i * n + j)]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i * n + j)]; }

    static Mat identity(int dim) {
        Mat m(dim);
        for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
        return m;
    }
    static Mat diagonal(const Vec& d) {
        Mat m(d.n);
        for (int i = 0; i < d.n; ++i) m.at(i, i) = d[i];
        return m;
    }
    static Mat rotation2(double theta) {
        Mat m(2);
        m.at(0, 0) = std::cos(theta); m.at(0, 1) = -std::sin(theta);
        m.at(1, 0) = std::sin(theta); m.at(1, 1) = std::cos(theta);
        return m;
    }

    Vec apply(const Vec& x) const {
        Vec y(n);
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += at(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

    Mat transpose() const {
        Mat m(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = at(j, i);
        return m;
    }

    Mat multiply(const Mat& o) const {
        Mat m(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (int k = 0; k < n; ++k) s += at(i, k) * o.at(k, j);
                m.at(i, j) = s;
            }
        return m;
    }

    double det() const {
        if (n == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
        if (n == 3)
            return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1))
                 - at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0))
                 + at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
        throw std::invalid_argument("Mat::det: only n = 2,3");
    }

    Mat inverse() const {
        double d = det();
        if (std::abs(d) < 1e-300) throw std::invalid_argument("Mat::inverse: singular");
        Mat m(n);
        if (n == 2) {
            m.at(0, 0) = at(1, 1) / d;  m.at(0, 1) = -at(0, 1) / d;
            m.at(1, 0) = -at(1, 0) / d; m.at(1, 1) = at(0, 0) / d;
            return m;
        }
        if (n == 3) {
            m.at(0, 0) = (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) / d;
            m.at(0, 1) = (at(0, 2) * at(2, 1) - at(0, 1) * at(2, 2)) / d;
            m.at(0, 2) = (at(0, 1) * at(1, 2) - at(0, 2) * at(1, 1)) / d;
            m.at(1, 0) = (at(1, 2) * at(2, 0) - at(1, 0) * at(2, 2)) / d;
            m.at(1, 1) = (at(0, 0) * at(2, 2) - at(0, 2) * at(2, 0)) / d;
            m.at(1, 2) = (at(0, 2) * at(1, 0) - at(0, 0) * at(1, 2)) / d;
            m.at(2, 0) = (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0)) / d;
            m.at(2, 1) = (at(0, 1) * at(2, 0) - at(0, 0) * at(2, 1)) / d;
            m.at(2, 2) = (at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0)) / d;
            return m;
        }
        throw std::invalid_argument("Mat::inverse: only n = 2,3");
    }
};

// Orthonormal completion of u: columns span the hyperplane orthogonal to u.
// n = 2 gives one vector, n = 3 gives two.
inline std::array<Vec, 2> orthonormal_frame(const Dir& u) {
    int n = u.dim();
    if (n == 2) {
        return {rot90ccw(u.v), Vec(2)};
    }
    if (n == 3) {
        int k = 0;
        for (int i = 1; i < 3; ++i)
            if (std::abs(u[i]) < std::abs(u[k])) k = i;
        Vec w1 = cross3(u.v, unit_vec(3, k));
        w1 *= 1.0 / norm2(w1);
        Vec w2 = cross3(u.v, w1);
        return {w1, w2};
    }
    throw std::invalid_argument("orthonormal_frame: only n = 2,3");
}

}  // namespace dualbody
