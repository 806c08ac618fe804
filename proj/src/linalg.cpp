#include "otreg/linalg.hpp"

#include <sstream>

namespace otreg {

namespace {

void check_size(int n) {
    if (n < 1 || n > kMaxDim) {
        throw DomainError("dimension must be in 1.." + std::to_string(kMaxDim) + ", got " +
                          std::to_string(n));
    }
}

}  // namespace

Vec::Vec(int n, double fill) : n_(n) {
    check_size(n);
    std::fill_n(data_.begin(), n, fill);
}

Vec::Vec(std::initializer_list<double> values) : n_(static_cast<int>(values.size())) {
    check_size(n_);
    std::copy(values.begin(), values.end(), data_.begin());
}

Vec::Vec(std::span<const double> values) : n_(static_cast<int>(values.size())) {
    check_size(n_);
    std::copy(values.begin(), values.end(), data_.begin());
}

Vec Vec::unit(int n, int axis) {
    Vec e(n);
    e[axis] = 1.0;
    return e;
}

bool Vec::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.begin() + n_, [](double x) { return std::isfinite(x); });
}

double Vec::squared_norm() const noexcept { return dot(*this, *this); }

double Vec::norm() const noexcept {
    // hypot-style scaling is unnecessary at these magnitudes.
    return std::sqrt(squared_norm());
}

double Vec::max_abs() const noexcept {
    double m = 0.0;
    for (int i = 0; i < n_; ++i) m = std::max(m, std::abs(data_[i]));
    return m;
}

Vec& Vec::operator+=(const Vec& rhs) noexcept {
    for (int i = 0; i < n_; ++i) data_[i] += rhs.data_[i];
    return *this;
}

Vec& Vec::operator-=(const Vec& rhs) noexcept {
    for (int i = 0; i < n_; ++i) data_[i] -= rhs.data_[i];
    return *this;
}

Vec& Vec::operator*=(double s) noexcept {
    for (int i = 0; i < n_; ++i) data_[i] *= s;
    return *this;
}

Vec& Vec::operator/=(double s) noexcept {
    for (int i = 0; i < n_; ++i) data_[i] /= s;
    return *this;
}

bool operator==(const Vec& a, const Vec& b) noexcept {
    return a.n_ == b.n_ && std::equal(a.data_.begin(), a.data_.begin() + a.n_, b.data_.begin());
}

Vec operator+(Vec a, const Vec& b) noexcept { return a += b; }
Vec operator-(Vec a, const Vec& b) noexcept { return a -= b; }
Vec operator-(Vec a) noexcept { return a *= -1.0; }
Vec operator*(Vec a, double s) noexcept { return a *= s; }
Vec operator*(double s, Vec a) noexcept { return a *= s; }
Vec operator/(Vec a, double s) noexcept { return a /= s; }

double dot(const Vec& a, const Vec& b) noexcept {
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double distance(const Vec& a, const Vec& b) noexcept { return (a - b).norm(); }

void require_dim(const Vec& v, int n, const char* what) {
    if (v.size() != n) {
        throw DomainError(std::string(what) + ": expected dimension " + std::to_string(n) +
                          ", got " + std::to_string(v.size()));
    }
}

std::string to_string(const Vec& v) {
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (int i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ')';
    return os.str();
}

Mat::Mat(int n, double fill) : n_(n) {
    check_size(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) (*this)(i, j) = fill;
}

Mat::Mat(std::initializer_list<std::initializer_list<double>> rows)
    : n_(static_cast<int>(rows.size())) {
    check_size(n_);
    int i = 0;
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != n_) throw DomainError("Mat: ragged initializer");
        int j = 0;
        for (double x : r) (*this)(i, j++) = x;
        ++i;
    }
}

Mat Mat::identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::outer(const Vec& a, const Vec& b) {
    Mat m(a.size());
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j) m(i, j) = a[i] * b[j];
    return m;
}

Mat Mat::diagonal(const Vec& d) {
    Mat m(d.size());
    for (int i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Vec Mat::row(int i) const {
    Vec r(n_);
    for (int j = 0; j < n_; ++j) r[j] = (*this)(i, j);
    return r;
}

Vec Mat::col(int j) const {
    Vec c(n_);
    for (int i = 0; i < n_; ++i) c[i] = (*this)(i, j);
    return c;
}

bool Mat::all_finite() const noexcept {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (!std::isfinite((*this)(i, j))) return false;
    return true;
}

double Mat::max_abs() const noexcept {
    double m = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) m = std::max(m, std::abs((*this)(i, j)));
    return m;
}

Mat Mat::transpose() const {
    Mat t(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

namespace {

struct LU {
    Mat a;
    std::array<int, kMaxDim> perm{};
    double det = 1.0;
};

LU decompose(const Mat& m) {
    const int n = m.size();
    LU lu{m, {}, 1.0};
    for (int i = 0; i < n; ++i) lu.perm[i] = i;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(lu.a(i, k)) > std::abs(lu.a(piv, k))) piv = i;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(lu.a(k, j), lu.a(piv, j));
            std::swap(lu.perm[k], lu.perm[piv]);
            lu.det = -lu.det;
        }
        const double d = lu.a(k, k);
        lu.det *= d;
        if (d == 0.0) continue;
        for (int i = k + 1; i < n; ++i) {
            lu.a(i, k) /= d;
            for (int j = k + 1; j < n; ++j) lu.a(i, j) -= lu.a(i, k) * lu.a(k, j);
        }
    }
    return lu;
}

Vec lu_solve(const LU& lu, const Vec& b) {
    const int n = b.size();
    Vec x(n);
    for (int i = 0; i < n; ++i) {
        double s = b[lu.perm[i]];
        for (int j = 0; j < i; ++j) s -= lu.a(i, j) * x[j];
        x[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = x[i];
        for (int j = i + 1; j < n; ++j) s -= lu.a(i, j) * x[j];
        x[i] = s / lu.a(i, i);
    }
    return x;
}

}  // namespace

double Mat::det() const { return decompose(*this).det; }

Mat Mat::inverse(double threshold) const {
    const LU lu = decompose(*this);
    if (!(std::abs(lu.det) > threshold)) {
        throw SingularMatrix("matrix is singular (|det| = " + std::to_string(std::abs(lu.det)) + ")");
    }
    Mat inv(n_);
    for (int j = 0; j < n_; ++j) {
        const Vec c = lu_solve(lu, Vec::unit(n_, j));
        for (int i = 0; i < n_; ++i) inv(i, j) = c[i];
    }
    return inv;
}

Vec Mat::solve(const Vec& rhs, double threshold) const {
    const LU lu = decompose(*this);
    if (!(std::abs(lu.det) > threshold)) {
        throw SingularMatrix("matrix is singular (|det| = " + std::to_string(std::abs(lu.det)) + ")");
    }
    return lu_solve(lu, rhs);
}

double Mat::form(const Vec& a, const Vec& b) const { return dot(a, (*this) * b); }

Mat& Mat::operator+=(const Mat& rhs) noexcept {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) (*this)(i, j) += rhs(i, j);
    return *this;
}

Mat& Mat::operator-=(const Mat& rhs) noexcept {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) (*this)(i, j) -= rhs(i, j);
    return *this;
}

Mat& Mat::operator*=(double s) noexcept {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) (*this)(i, j) *= s;
    return *this;
}

bool operator==(const Mat& a, const Mat& b) noexcept {
    if (a.n_ != b.n_) return false;
    for (int i = 0; i < a.n_; ++i)
        for (int j = 0; j < a.n_; ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

Mat operator+(Mat a, const Mat& b) noexcept { return a += b; }
Mat operator-(Mat a, const Mat& b) noexcept { return a -= b; }
Mat operator-(Mat a) noexcept { return a *= -1.0; }

Mat operator*(Mat a, double s) noexcept { return a *= s; }
Mat operator*(double s, Mat a) noexcept { return a *= s; }

Mat operator*(const Mat& a, const Mat& b) noexcept {
    const int n = a.size();
    Mat c(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) c(i, j) += a(i, k) * b(k, j);
    return c;
}

Vec operator*(const Mat& a, const Vec& v) noexcept {
    const int n = a.size();
    Vec r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i] += a(i, j) * v[j];
    return r;
}

std::string to_string(const Mat& m) {
    std::ostringstream os;
    os.precision(17);
    os << '[';
    for (int i = 0; i < m.size(); ++i) os << (i ? ", " : "") << to_string(m.row(i));
    os << ']';
    return os.str();
}

}  // namespace otreg
