#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ivs {

// Point or direction in R^2 / R^3. Fixed capacity, runtime dimension.
class Vec {
public:
    Vec() = default;
    Vec(double x, double y) : v_{x, y, 0.0}, n_(2) {}
    Vec(double x, double y, double z) : v_{x, y, z}, n_(3) {}

    static Vec zero(int n) {
        Vec out;
        out.n_ = check_dim(n);
        return out;
    }
    static Vec from(const std::vector<double>& xs) {
        Vec out;
        out.n_ = check_dim(static_cast<int>(xs.size()));
        for (int i = 0; i < out.n_; ++i) out.v_[i] = xs[i];
        return out;
    }

    int dim() const { return n_; }
    double operator[](int i) const { return v_[static_cast<size_t>(i)]; }
    double& operator[](int i) { return v_[static_cast<size_t>(i)]; }

    Vec operator+(const Vec& o) const { return map2(o, [](double a, double b) { return a + b; }); }
    Vec operator-(const Vec& o) const { return map2(o, [](double a, double b) { return a - b; }); }
    Vec operator*(double s) const {
        Vec out = *this;
        for (int i = 0; i < n_; ++i) out.v_[i] *= s;
        return out;
    }
    Vec& operator+=(const Vec& o) { return *this = *this + o; }

    double dot(const Vec& o) const {
        require_same(o);
        double s = 0.0;
        for (int i = 0; i < n_; ++i) s += v_[i] * o.v_[i];
        return s;
    }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
    Vec normalized() const {
        const double len = norm();
        if (len == 0.0) throw std::invalid_argument("cannot normalize zero vector");
        return *this * (1.0 / len);
    }

    bool operator==(const Vec& o) const {
        if (n_ != o.n_) return false;
        for (int i = 0; i < n_; ++i)
            if (v_[i] != o.v_[i]) return false;
        return true;
    }

    std::vector<double> to_vector() const { return std::vector<double>(v_.begin(), v_.begin() + n_); }

private:
    template <class F>
    Vec map2(const Vec& o, F f) const {
        require_same(o);
        Vec out = *this;
        for (int i = 0; i < n_; ++i) out.v_[i] = f(v_[i], o.v_[i]);
        return out;
    }
    void require_same(const Vec& o) const {
        if (n_ != o.n_) throw std::invalid_argument("vector dimension mismatch");
    }
    static int check_dim(int n) {
        if (n < 1 || n > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
        return n;
    }

    std::array<double, 3> v_{0.0, 0.0, 0.0};
    int n_ = 0;
};

inline Vec operator*(double s, const Vec& v) { return v * s; }
inline double dist(const Vec& a, const Vec& b) { return (a - b).norm(); }

// Square matrix of order 2 or 3, row-major.
class Mat {
public:
    Mat() = default;
    explicit Mat(int n) : n_(n) {
        if (n < 1 || n > 3) throw std::invalid_argument("matrix order must be 1, 2 or 3");
    }
    static Mat identity(int n) {
        Mat m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return n_; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i * n_ + j)]; }
    double& operator()(int i, int j) { return a_[static_cast<size_t>(i * n_ + j)]; }

    Vec apply(const Vec& x) const {
        Vec y = Vec::zero(n_);
        for (int i = 0; i < n_; ++i) {
            double s = 0.0;
            for (int j = 0; j < n_; ++j) s += (*this)(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }
    Vec apply_transpose(const Vec& x) const {
        Vec y = Vec::zero(n_);
        for (int j = 0; j < n_; ++j) {
            double s = 0.0;
            for (int i = 0; i < n_; ++i) s += (*this)(i, j) * x[i];
            y[j] = s;
        }
        return y;
    }
    Mat transpose_times_self() const {  // A^T A
        Mat g(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                double s = 0.0;
                for (int k = 0; k < n_; ++k) s += (*this)(k, i) * (*this)(k, j);
                g(i, j) = s;
            }
        return g;
    }

    double det() const {
        switch (n_) {
            case 1:
                return (*this)(0, 0);
            case 2:
                return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0);
            default: {
                const Mat& m = *this;
                return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                       m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                       m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
            }
        }
    }

    // LU with partial pivoting; nullopt when a pivot vanishes.
    std::optional<Vec> solve(const Vec& b) const {
        Mat lu = *this;
        Vec rhs = b;
        std::array<int, 3> perm{0, 1, 2};
        for (int col = 0; col < n_; ++col) {
            int piv = col;
            for (int r = col + 1; r < n_; ++r)
                if (std::abs(lu(r, col)) > std::abs(lu(piv, col))) piv = r;
            if (lu(piv, col) == 0.0) return std::nullopt;
            if (piv != col) {
                for (int j = 0; j < n_; ++j) std::swap(lu(piv, j), lu(col, j));
                std::swap(rhs[piv], rhs[col]);
                std::swap(perm[static_cast<size_t>(piv)], perm[static_cast<size_t>(col)]);
            }
            for (int r = col + 1; r < n_; ++r) {
                const double f = lu(r, col) / lu(col, col);
                lu(r, col) = 0.0;
                for (int j = col + 1; j < n_; ++j) lu(r, j) -= f * lu(col, j);
                rhs[r] -= f * rhs[col];
            }
        }
        Vec x = Vec::zero(n_);
        for (int i = n_ - 1; i >= 0; --i) {
            double s = rhs[i];
            for (int j = i + 1; j < n_; ++j) s -= lu(i, j) * x[j];
            x[i] = s / lu(i, i);
        }
        return x;
    }

private:
    std::array<double, 9> a_{};
    int n_ = 0;
};

// Axis-aligned box in R^2 / R^3.
struct Box {
    Vec lo;
    Vec hi;

    int dim() const { return lo.dim(); }
    Vec center() const { return (lo + hi) * 0.5; }
    double diameter() const { return dist(lo, hi); }
    bool nondegenerate() const {
        if (lo.dim() != hi.dim() || lo.dim() == 0) return false;
        for (int i = 0; i < lo.dim(); ++i)
            if (!(lo[i] < hi[i])) return false;
        return true;
    }
    bool contains(const Vec& p, double tol = 0.0) const {
        for (int i = 0; i < lo.dim(); ++i)
            if (p[i] < lo[i] - tol || p[i] > hi[i] + tol) return false;
        return true;
    }
    // Shrinks toward the center by the given factor in every axis.
    Box scaled(double factor) const {
        const Vec c = center();
        return Box{c + (lo - c) * factor, c + (hi - c) * factor};
    }
};

// Deterministic 64-bit mix, used wherever reproducible pseudo-randomness is
// needed inside the library (perturbations, ray retries, pivot orders).
inline uint64_t splitmix64(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform double in [-1, 1), deterministic across platforms.
inline double unit_noise(uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * (2.0 / 9007199254740992.0) - 1.0;
}

}  // namespace ivs
