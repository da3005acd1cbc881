#include "halo/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace halo {

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rat>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw std::invalid_argument("RatMatrix: ragged rows");
        for (const auto& v : row) data_.push_back(v);
    }
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("RatMatrix: shape mismatch in *");
    RatMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (at(i, k) == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("RatMatrix: shape mismatch in +");
    RatMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
    return r;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("RatMatrix: shape mismatch in -");
    RatMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
    return r;
}

RatMatrix RatMatrix::scaled(const Rat& c) const {
    RatMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * c;
    return r;
}

std::vector<Rat> RatMatrix::apply(const std::vector<Rat>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("RatMatrix: shape mismatch in apply");
    std::vector<Rat> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
    return out;
}

bool RatMatrix::is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

bool RatMatrix::is_integral() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const Rat& v) { return is_integer(v); });
}

bool RatMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rat& v) { return v == 0; });
}

Rat RatMatrix::det() const {
    if (!is_square()) throw std::invalid_argument("RatMatrix: det of non-square");
    RatMatrix m = *this;
    Rat d = 1;
    const std::size_t n = rows_;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m.at(pivot, col) == 0) ++pivot;
        if (pivot == n) return Rat(0);
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(pivot, j), m.at(col, j));
            d = -d;
        }
        d *= m.at(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m.at(i, col) == 0) continue;
            Rat f = m.at(i, col) / m.at(col, col);
            for (std::size_t j = col; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return d;
}

std::optional<RatMatrix> RatMatrix::inverse() const {
    if (!is_square()) throw std::invalid_argument("RatMatrix: inverse of non-square");
    const std::size_t n = rows_;
    RatMatrix m = *this;
    RatMatrix inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m.at(pivot, col) == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m.at(pivot, j), m.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        }
        Rat p = m.at(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            m.at(col, j) /= p;
            inv.at(col, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m.at(i, col) == 0) continue;
            Rat f = m.at(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                m.at(i, j) -= f * m.at(col, j);
                inv.at(i, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

namespace {

// Column-style integer elimination: returns (H, U) with H = A * U, U
// unimodular, and H in a column echelon form. Columns of U matching zero
// columns of H form a basis of the integer kernel lattice.
struct ColumnEchelon {
    std::vector<std::vector<Int>> h;  // rows x cols
    std::vector<std::vector<Int>> u;  // cols x cols
};

ColumnEchelon column_echelon(const RatMatrix& a) {
    if (!a.is_integral()) throw std::invalid_argument("column_echelon: matrix not integral");
    const std::size_t rows = a.rows(), cols = a.cols();
    ColumnEchelon ce;
    ce.h.assign(rows, std::vector<Int>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) ce.h[i][j] = numerator(a.at(i, j));
    ce.u.assign(cols, std::vector<Int>(cols, 0));
    for (std::size_t j = 0; j < cols; ++j) ce.u[j][j] = 1;

    auto col_op = [&](std::size_t dst, std::size_t src, const Int& f) {
        // column dst -= f * column src
        for (std::size_t i = 0; i < rows; ++i) ce.h[i][dst] -= f * ce.h[i][src];
        for (std::size_t i = 0; i < cols; ++i) ce.u[i][dst] -= f * ce.u[i][src];
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        for (std::size_t i = 0; i < rows; ++i) std::swap(ce.h[i][x], ce.h[i][y]);
        for (std::size_t i = 0; i < cols; ++i) std::swap(ce.u[i][x], ce.u[i][y]);
    };

    std::size_t lead = 0;
    for (std::size_t row = 0; row < rows && lead < cols; ++row) {
        // Reduce the row's tail to a single nonzero entry via gcd steps.
        while (true) {
            std::size_t nonzero = cols;
            Int best_abs = 0;
            for (std::size_t j = lead; j < cols; ++j) {
                Int v = boost::multiprecision::abs(ce.h[row][j]);
                if (v != 0 && (nonzero == cols || v < best_abs)) {
                    nonzero = j;
                    best_abs = v;
                }
            }
            if (nonzero == cols) break;  // row is zero past lead
            if (nonzero != lead) col_swap(lead, nonzero);
            bool reduced_all = true;
            for (std::size_t j = lead + 1; j < cols; ++j) {
                if (ce.h[row][j] == 0) continue;
                Int q = ce.h[row][j] / ce.h[row][lead];
                col_op(j, lead, q);
                if (ce.h[row][j] != 0) reduced_all = false;
            }
            if (reduced_all) {
                ++lead;
                break;
            }
        }
    }
    return ce;
}

}  // namespace

std::vector<std::vector<Int>> RatMatrix::integer_kernel_basis() const {
    // Clear denominators row by row; the rational kernel is unchanged and the
    // integer kernel lattice of the cleared matrix coincides with ours.
    RatMatrix cleared = *this;
    for (std::size_t i = 0; i < rows_; ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < cols_; ++j) l = lcm(l, denominator(cleared.at(i, j)));
        for (std::size_t j = 0; j < cols_; ++j) cleared.at(i, j) *= Rat(l);
    }
    auto ce = column_echelon(cleared);
    std::vector<std::vector<Int>> basis;
    for (std::size_t j = 0; j < cols_; ++j) {
        bool zero = true;
        for (std::size_t i = 0; i < rows_; ++i)
            if (ce.h[i][j] != 0) { zero = false; break; }
        if (!zero) continue;
        std::vector<Int> v(cols_);
        bool nontrivial = false;
        for (std::size_t i = 0; i < cols_; ++i) {
            v[i] = ce.u[i][j];
            if (v[i] != 0) nontrivial = true;
        }
        if (nontrivial) basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Int>> RatMatrix::integer_solve(const std::vector<Int>& rhs) const {
    if (rhs.size() != rows_) throw std::invalid_argument("integer_solve: shape mismatch");
    auto ce = column_echelon(*this);
    // Solve H y = rhs by greedy elimination over the echelon columns, then
    // x = U y.
    std::vector<Int> residual = rhs;
    std::vector<Int> y(cols_, 0);
    for (std::size_t j = 0; j < cols_; ++j) {
        // Find the top nonzero row of column j.
        std::size_t top = rows_;
        for (std::size_t i = 0; i < rows_; ++i)
            if (ce.h[i][j] != 0) { top = i; break; }
        if (top == rows_) continue;
        if (residual[top] % ce.h[top][j] != 0) {
            // The echelon structure forces this entry to be resolved here.
            return std::nullopt;
        }
        Int q = residual[top] / ce.h[top][j];
        y[j] = q;
        for (std::size_t i = 0; i < rows_; ++i) residual[i] -= q * ce.h[i][j];
    }
    for (std::size_t i = 0; i < rows_; ++i)
        if (residual[i] != 0) return std::nullopt;
    std::vector<Int> x(cols_, 0);
    for (std::size_t i = 0; i < cols_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) x[i] += ce.u[i][j] * y[j];
    return x;
}

bool is_psd(const RatMatrix& m) {
    if (!m.is_symmetric()) throw std::invalid_argument("is_psd: non-symmetric input");
    const std::size_t n = m.rows();
    RatMatrix w = m;
    std::vector<bool> active(n, true);
    std::size_t remaining = n;
    while (remaining > 0) {
        std::size_t pivot = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            if (w.at(i, i) < 0) return false;
            if (w.at(i, i) > 0 && pivot == n) pivot = i;
        }
        if (pivot == n) {
            // All active diagonal entries vanish: PSD forces the active
            // block to be zero.
            for (std::size_t i = 0; i < n; ++i) {
                if (!active[i]) continue;
                for (std::size_t j = 0; j < n; ++j)
                    if (active[j] && w.at(i, j) != 0) return false;
            }
            return true;
        }
        const Rat p = w.at(pivot, pivot);
        active[pivot] = false;
        --remaining;
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i] || w.at(i, pivot) == 0) continue;
            const Rat f = w.at(i, pivot) / p;
            for (std::size_t j = 0; j < n; ++j) {
                if (!active[j]) continue;
                w.at(i, j) -= f * w.at(pivot, j);
            }
        }
    }
    return true;
}

bool is_pd(const RatMatrix& m) {
    if (!m.is_symmetric()) throw std::invalid_argument("is_pd: non-symmetric input");
    const std::size_t n = m.rows();
    // Sylvester criterion via in-place LDL^T without pivoting; a zero or
    // negative pivot means some leading principal minor is <= 0.
    RatMatrix w = m;
    for (std::size_t k = 0; k < n; ++k) {
        if (w.at(k, k) <= 0) return false;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (w.at(i, k) == 0) continue;
            const Rat f = w.at(i, k) / w.at(k, k);
            for (std::size_t j = k; j < n; ++j) w.at(i, j) -= f * w.at(k, j);
        }
    }
    return true;
}

bool psd_leq_one(const RatMatrix& g) {
    if (!g.is_symmetric()) throw std::invalid_argument("psd_leq_one: non-symmetric input");
    return is_psd(RatMatrix::identity(g.rows()) - g);
}

}  // namespace halo
