#pragma once

// Fixed-capacity vectors and matrices for dimensions 1..4.

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "otreg/errors.hpp"

namespace otreg {

inline constexpr int kMaxDim = 4;

class Vec {
public:
    Vec() = default;
    explicit Vec(int n, double fill = 0.0);
    Vec(std::initializer_list<double> values);
    explicit Vec(std::span<const double> values);

    static Vec zero(int n) { return Vec(n); }
    static Vec unit(int n, int axis);

    int size() const noexcept { return n_; }
    double& operator[](int i) noexcept { return data_[static_cast<std::size_t>(i)]; }
    double operator[](int i) const noexcept { return data_[static_cast<std::size_t>(i)]; }

    std::span<const double> values() const noexcept {
        return {data_.data(), static_cast<std::size_t>(n_)};
    }
    std::vector<double> to_vector() const { return {data_.begin(), data_.begin() + n_}; }

    bool all_finite() const noexcept;
    double norm() const noexcept;
    double squared_norm() const noexcept;
    double max_abs() const noexcept;

    Vec& operator+=(const Vec& rhs) noexcept;
    Vec& operator-=(const Vec& rhs) noexcept;
    Vec& operator*=(double s) noexcept;
    Vec& operator/=(double s) noexcept;

    friend bool operator==(const Vec& a, const Vec& b) noexcept;

private:
    std::array<double, kMaxDim> data_{};
    int n_ = 0;
};

Vec operator+(Vec a, const Vec& b) noexcept;
Vec operator-(Vec a, const Vec& b) noexcept;
Vec operator-(Vec a) noexcept;
Vec operator*(Vec a, double s) noexcept;
Vec operator*(double s, Vec a) noexcept;
Vec operator/(Vec a, double s) noexcept;

double dot(const Vec& a, const Vec& b) noexcept;
double distance(const Vec& a, const Vec& b) noexcept;

// Throws DomainError on dimension mismatch or n outside 1..kMaxDim.
void require_dim(const Vec& v, int n, const char* what);

std::string to_string(const Vec& v);

class Mat {
public:
    Mat() = default;
    explicit Mat(int n, double fill = 0.0);
    Mat(std::initializer_list<std::initializer_list<double>> rows);

    static Mat identity(int n);
    static Mat zero(int n) { return Mat(n); }
    static Mat outer(const Vec& a, const Vec& b);
    static Mat diagonal(const Vec& d);

    int size() const noexcept { return n_; }
    double& operator()(int i, int j) noexcept { return data_[index(i, j)]; }
    double operator()(int i, int j) const noexcept { return data_[index(i, j)]; }

    Vec row(int i) const;
    Vec col(int j) const;

    bool all_finite() const noexcept;
    double max_abs() const noexcept;
    Mat transpose() const;

    // LU with partial pivoting.
    double det() const;
    // Throws SingularMatrix when |det| <= threshold.
    Mat inverse(double threshold = 1e-14) const;
    Vec solve(const Vec& rhs, double threshold = 1e-14) const;

    // Quadratic form a^T M b.
    double form(const Vec& a, const Vec& b) const;

    Mat& operator+=(const Mat& rhs) noexcept;
    Mat& operator-=(const Mat& rhs) noexcept;
    Mat& operator*=(double s) noexcept;

    friend bool operator==(const Mat& a, const Mat& b) noexcept;

private:
    static constexpr std::size_t index(int i, int j) noexcept {
        return static_cast<std::size_t>(i * kMaxDim + j);
    }

    std::array<double, kMaxDim * kMaxDim> data_{};
    int n_ = 0;
};

Mat operator+(Mat a, const Mat& b) noexcept;
Mat operator-(Mat a, const Mat& b) noexcept;
Mat operator-(Mat a) noexcept;
Mat operator*(Mat a, double s) noexcept;
Mat operator*(double s, Mat a) noexcept;
Mat operator*(const Mat& a, const Mat& b) noexcept;
Vec operator*(const Mat& a, const Vec& v) noexcept;

std::string to_string(const Mat& m);

}  // namespace otreg
