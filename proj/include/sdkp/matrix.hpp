#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace sdkp {

using cplx = std::complex<double>;

// Dense 5x5 complex matrix, the natural size for the spin-0 DKP multiplet
// (scalar slot + four vector slots).  Value type, row-major storage.
class Mat5 {
  public:
    Mat5() = default;

    cplx& operator()(std::size_t r, std::size_t c) { return a_[r * 5 + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * 5 + c]; }

    static Mat5 zero() { return Mat5{}; }

    static Mat5 identity() {
        Mat5 m;
        for (std::size_t i = 0; i < 5; ++i) m(i, i) = 1.0;
        return m;
    }

    Mat5& operator+=(const Mat5& o) {
        for (std::size_t i = 0; i < 25; ++i) a_[i] += o.a_[i];
        return *this;
    }
    Mat5& operator-=(const Mat5& o) {
        for (std::size_t i = 0; i < 25; ++i) a_[i] -= o.a_[i];
        return *this;
    }
    Mat5& operator*=(cplx s) {
        for (std::size_t i = 0; i < 25; ++i) a_[i] *= s;
        return *this;
    }

    friend Mat5 operator+(Mat5 a, const Mat5& b) { return a += b; }
    friend Mat5 operator-(Mat5 a, const Mat5& b) { return a -= b; }
    friend Mat5 operator*(Mat5 a, cplx s) { return a *= s; }
    friend Mat5 operator*(cplx s, Mat5 a) { return a *= s; }
    friend Mat5 operator*(Mat5 a, double s) { return a *= cplx(s); }
    friend Mat5 operator*(double s, Mat5 a) { return a *= cplx(s); }
    friend Mat5 operator-(Mat5 a) { return a *= cplx(-1.0); }

    friend Mat5 operator*(const Mat5& a, const Mat5& b) {
        Mat5 r;
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t k = 0; k < 5; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{}) continue;
                for (std::size_t j = 0; j < 5; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    cplx trace() const {
        cplx t{};
        for (std::size_t i = 0; i < 5; ++i) t += (*this)(i, i);
        return t;
    }

    Mat5 adjoint() const {
        Mat5 r;
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) r(i, j) = std::conj((*this)(j, i));
        return r;
    }

    // Largest entry magnitude; the norm used by every residual check.
    double max_abs() const {
        double m = 0.0;
        for (const cplx& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    friend bool operator==(const Mat5& a, const Mat5& b) { return a.a_ == b.a_; }

  private:
    std::array<cplx, 25> a_{};
};

// Column 5-vector over the same multiplet.  Row vectors (barred spinors) are
// represented by the same type; context decides which side they multiply on.
class Vec5 {
  public:
    Vec5() = default;

    cplx& operator[](std::size_t i) { return a_[i]; }
    const cplx& operator[](std::size_t i) const { return a_[i]; }

    Vec5& operator*=(cplx s) {
        for (cplx& v : a_) v *= s;
        return *this;
    }
    friend Vec5 operator*(Vec5 v, cplx s) { return v *= s; }
    friend Vec5 operator*(cplx s, Vec5 v) { return v *= s; }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    friend bool operator==(const Vec5& a, const Vec5& b) { return a.a_ == b.a_; }

  private:
    std::array<cplx, 5> a_{};
};

inline Vec5 operator*(const Mat5& m, const Vec5& v) {
    Vec5 r;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) r[i] += m(i, j) * v[j];
    return r;
}

// Row vector times matrix.
inline Vec5 operator*(const Vec5& v, const Mat5& m) {
    Vec5 r;
    for (std::size_t j = 0; j < 5; ++j)
        for (std::size_t i = 0; i < 5; ++i) r[j] += v[i] * m(i, j);
    return r;
}

// Plain contraction, no conjugation; conjugation lives in the barred spinor.
inline cplx dot(const Vec5& row, const Vec5& col) {
    cplx s{};
    for (std::size_t i = 0; i < 5; ++i) s += row[i] * col[i];
    return s;
}

// row . M . col
inline cplx bilinear(const Vec5& row, const Mat5& m, const Vec5& col) {
    return dot(row, m * col);
}

// col ⊗ row
inline Mat5 outer(const Vec5& col, const Vec5& row) {
    Mat5 r;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) r(i, j) = col[i] * row[j];
    return r;
}

}  // namespace sdkp
