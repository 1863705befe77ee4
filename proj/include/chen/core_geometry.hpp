#pragma once

// Complex linear algebra over C^3 / C^4 with the flat Kaehler structure.
//
// A vector of C^m is identified with R^{2m} through the interleaved layout
// (re_1, im_1, ..., re_m, im_m). The complex structure J is multiplication
// by i and the Riemannian metric is the real part of the Hermitian form.

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace chen {

using Complex = std::complex<double>;

class AmbientVector {
public:
    static constexpr std::size_t kMaxDim = 4;

    AmbientVector() = default;
    explicit AmbientVector(std::size_t dim);
    AmbientVector(std::initializer_list<Complex> values);

    static AmbientVector zero(std::size_t dim) { return AmbientVector(dim); }
    static AmbientVector basis(std::size_t dim, std::size_t k);

    std::size_t dim() const noexcept { return dim_; }

    Complex& operator[](std::size_t k) { return data_[k]; }
    const Complex& operator[](std::size_t k) const { return data_[k]; }

    std::span<const Complex> components() const noexcept { return {data_.data(), dim_}; }

    /// Interleaved real coordinates (re_1, im_1, ..., re_m, im_m).
    std::vector<double> to_real() const;
    static AmbientVector from_real(std::span<const double> interleaved);

    /// Complex structure: componentwise multiplication by i.
    AmbientVector J() const;

    double norm_sq() const noexcept;
    double norm() const noexcept;
    /// Largest component modulus.
    double max_abs() const noexcept;

    AmbientVector& operator+=(const AmbientVector& other);
    AmbientVector& operator-=(const AmbientVector& other);
    AmbientVector& operator*=(Complex s) noexcept;
    AmbientVector& operator*=(double s) noexcept;

private:
    std::array<Complex, kMaxDim> data_{};
    std::size_t dim_ = 0;
};

AmbientVector operator+(AmbientVector a, const AmbientVector& b);
AmbientVector operator-(AmbientVector a, const AmbientVector& b);
AmbientVector operator-(AmbientVector a);
AmbientVector operator*(Complex s, AmbientVector v);
AmbientVector operator*(double s, AmbientVector v);
AmbientVector operator*(AmbientVector v, double s);
AmbientVector operator/(AmbientVector v, double s);

/// sum_k u_k conj(v_k); conjugate-linear in the second slot.
Complex hermitian_inner(const AmbientVector& u, const AmbientVector& v);

/// Re <u, v>, the Euclidean inner product on R^{2m}.
double real_inner(const AmbientVector& u, const AmbientVector& v);

struct OrthonormalFrame {
    std::vector<AmbientVector> vectors;
    /// max |<v_i, v_j>_R - delta_ij|
    double gram_residual = 0.0;
    /// Row i holds the coefficients of vectors[i] in terms of the inputs
    /// handed to gram_schmidt (lower triangular).
    std::vector<std::vector<double>> coefficients;

    std::size_t size() const noexcept { return vectors.size(); }
};

double gram_residual(std::span<const AmbientVector> vectors);

/// Real Gram-Schmidt (two passes per vector). Throws DegenerateInputError
/// naming the failing pivot when a residual norm drops below
/// `relative_tolerance` times the largest input norm.
OrthonormalFrame gram_schmidt(std::span<const AmbientVector> vectors,
                              double relative_tolerance = 1e-8);

/// Component of v that is real-orthogonal to every frame vector.
AmbientVector project_orthogonal(const AmbientVector& v, const OrthonormalFrame& frame);

/// Determinant of the real Gram matrix of the given vectors viewed in R^{2m}.
double real_gram_determinant(std::span<const AmbientVector> vectors);

}  // namespace chen
