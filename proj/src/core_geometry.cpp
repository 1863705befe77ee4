#include "chen/core_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chen/errors.hpp"

namespace chen {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Usage: return "usage";
        case ErrorKind::DegenerateInput: return "degenerate-input";
        case ErrorKind::Boundary: return "boundary";
        case ErrorKind::Singularity: return "singularity";
        case ErrorKind::Divergence: return "divergence";
        case ErrorKind::Range: return "range";
        case ErrorKind::NotLagrangian: return "not-lagrangian";
        case ErrorKind::Frame: return "frame";
        case ErrorKind::ImmersionFailure: return "immersion-failure";
        case ErrorKind::Parse: return "parse";
    }
    return "unknown";
}

namespace {

void require_same_dim(const AmbientVector& a, const AmbientVector& b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::Usage, "dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                          std::to_string(b.dim()));
    }
}

}  // namespace

AmbientVector::AmbientVector(std::size_t dim) : dim_(dim) {
    if (dim > kMaxDim) {
        throw Error(ErrorKind::Usage, "AmbientVector supports at most 4 complex components");
    }
}

AmbientVector::AmbientVector(std::initializer_list<Complex> values) : AmbientVector(values.size()) {
    std::copy(values.begin(), values.end(), data_.begin());
}

AmbientVector AmbientVector::basis(std::size_t dim, std::size_t k) {
    AmbientVector v(dim);
    v[k] = 1.0;
    return v;
}

std::vector<double> AmbientVector::to_real() const {
    std::vector<double> out;
    out.reserve(2 * dim_);
    for (std::size_t k = 0; k < dim_; ++k) {
        out.push_back(data_[k].real());
        out.push_back(data_[k].imag());
    }
    return out;
}

AmbientVector AmbientVector::from_real(std::span<const double> interleaved) {
    if (interleaved.size() % 2 != 0) {
        throw Error(ErrorKind::Usage, "interleaved coordinates must come in (re, im) pairs");
    }
    AmbientVector v(interleaved.size() / 2);
    for (std::size_t k = 0; k < v.dim(); ++k) {
        v[k] = Complex(interleaved[2 * k], interleaved[2 * k + 1]);
    }
    return v;
}

AmbientVector AmbientVector::J() const {
    AmbientVector out(dim_);
    // i*(x + iy) = -y + ix, written out so that J(J(v)) == -v bit for bit.
    for (std::size_t k = 0; k < dim_; ++k) {
        out.data_[k] = Complex(-data_[k].imag(), data_[k].real());
    }
    return out;
}

double AmbientVector::norm_sq() const noexcept {
    double s = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) s += std::norm(data_[k]);
    return s;
}

double AmbientVector::norm() const noexcept { return std::sqrt(norm_sq()); }

double AmbientVector::max_abs() const noexcept {
    double m = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) m = std::max(m, std::abs(data_[k]));
    return m;
}

AmbientVector& AmbientVector::operator+=(const AmbientVector& other) {
    require_same_dim(*this, other);
    for (std::size_t k = 0; k < dim_; ++k) data_[k] += other.data_[k];
    return *this;
}

AmbientVector& AmbientVector::operator-=(const AmbientVector& other) {
    require_same_dim(*this, other);
    for (std::size_t k = 0; k < dim_; ++k) data_[k] -= other.data_[k];
    return *this;
}

AmbientVector& AmbientVector::operator*=(Complex s) noexcept {
    for (std::size_t k = 0; k < dim_; ++k) data_[k] *= s;
    return *this;
}

AmbientVector& AmbientVector::operator*=(double s) noexcept {
    for (std::size_t k = 0; k < dim_; ++k) data_[k] *= s;
    return *this;
}

AmbientVector operator+(AmbientVector a, const AmbientVector& b) { return a += b; }
AmbientVector operator-(AmbientVector a, const AmbientVector& b) { return a -= b; }
AmbientVector operator-(AmbientVector a) { return a *= -1.0; }
AmbientVector operator*(Complex s, AmbientVector v) { return v *= s; }
AmbientVector operator*(double s, AmbientVector v) { return v *= s; }
AmbientVector operator*(AmbientVector v, double s) { return v *= s; }
AmbientVector operator/(AmbientVector v, double s) { return v *= (1.0 / s); }

Complex hermitian_inner(const AmbientVector& u, const AmbientVector& v) {
    require_same_dim(u, v);
    Complex s = 0.0;
    for (std::size_t k = 0; k < u.dim(); ++k) s += u[k] * std::conj(v[k]);
    return s;
}

double real_inner(const AmbientVector& u, const AmbientVector& v) {
    require_same_dim(u, v);
    double s = 0.0;
    for (std::size_t k = 0; k < u.dim(); ++k) {
        s += u[k].real() * v[k].real() + u[k].imag() * v[k].imag();
    }
    return s;
}

double gram_residual(std::span<const AmbientVector> vectors) {
    double r = 0.0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        for (std::size_t j = i; j < vectors.size(); ++j) {
            const double target = (i == j) ? 1.0 : 0.0;
            r = std::max(r, std::abs(real_inner(vectors[i], vectors[j]) - target));
        }
    }
    return r;
}

OrthonormalFrame gram_schmidt(std::span<const AmbientVector> vectors, double relative_tolerance) {
    OrthonormalFrame frame;
    const std::size_t n = vectors.size();
    if (n == 0) return frame;

    double largest = 0.0;
    for (const auto& v : vectors) {
        if (v.dim() != vectors[0].dim()) {
            throw Error(ErrorKind::Usage, "gram_schmidt: inputs have different dimensions");
        }
        largest = std::max(largest, v.norm());
    }
    const double pivot_floor = relative_tolerance * largest;

    for (std::size_t i = 0; i < n; ++i) {
        AmbientVector w = vectors[i];
        std::vector<double> coeff(n, 0.0);
        coeff[i] = 1.0;
        // Second pass removes what the first leaves behind in finite precision.
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < frame.vectors.size(); ++j) {
                const double p = real_inner(w, frame.vectors[j]);
                w -= p * frame.vectors[j];
                for (std::size_t k = 0; k <= j; ++k) coeff[k] -= p * frame.coefficients[j][k];
            }
        }
        const double nrm = w.norm();
        if (!(nrm > pivot_floor) || largest == 0.0) {
            throw DegenerateInputError(i, "gram_schmidt: rank deficiency at pivot " +
                                              std::to_string(i));
        }
        w *= 1.0 / nrm;
        for (auto& c : coeff) c /= nrm;
        frame.vectors.push_back(w);
        frame.coefficients.push_back(std::move(coeff));
    }
    frame.gram_residual = gram_residual(frame.vectors);
    return frame;
}

AmbientVector project_orthogonal(const AmbientVector& v, const OrthonormalFrame& frame) {
    AmbientVector out = v;
    for (const auto& e : frame.vectors) out -= real_inner(out, e) * e;
    return out;
}

double real_gram_determinant(std::span<const AmbientVector> vectors) {
    const std::size_t n = vectors.size();
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = real_inner(vectors[i], vectors[j]);
    }
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
        }
        if (a[piv * n + c] == 0.0) return 0.0;
        if (piv != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
            det = -det;
        }
        det *= a[c * n + c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a[r * n + c] / a[c * n + c];
            for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
        }
    }
    return det;
}

}  // namespace chen
