#pragma once

#include "halo/rational.hpp"

#include <initializer_list>
#include <optional>
#include <vector>

namespace halo {

/// Dense rational matrix with exact arithmetic.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    RatMatrix(std::initializer_list<std::initializer_list<Rat>> rows);

    static RatMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rat& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RatMatrix transpose() const;
    RatMatrix operator*(const RatMatrix& o) const;
    RatMatrix operator+(const RatMatrix& o) const;
    RatMatrix operator-(const RatMatrix& o) const;
    RatMatrix scaled(const Rat& c) const;
    std::vector<Rat> apply(const std::vector<Rat>& v) const;

    bool operator==(const RatMatrix& o) const = default;

    bool is_symmetric() const;
    bool is_integral() const;
    bool is_zero() const;

    Rat det() const;
    std::optional<RatMatrix> inverse() const;

    /// Basis of the integer kernel lattice (primitive, spans ker over Z).
    std::vector<std::vector<Int>> integer_kernel_basis() const;

    /// An integer solution x of (*this) x = rhs, when one exists. The matrix
    /// must be integral.
    std::optional<std::vector<Int>> integer_solve(const std::vector<Int>& rhs) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> data_;
};

/// Exact positive semidefiniteness of a symmetric rational matrix
/// (Schur-complement pivoting on positive diagonal entries).
bool is_psd(const RatMatrix& m);

/// Exact positive definiteness (Sylvester: all leading principal minors > 0).
bool is_pd(const RatMatrix& m);

/// True iff lambda_max(G) <= 1 for G symmetric PSD-shaped input, decided
/// exactly via positive semidefiniteness of I - G. Rejects non-symmetric
/// input.
bool psd_leq_one(const RatMatrix& g);

}  // namespace halo
