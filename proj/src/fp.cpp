#include "qts/fp.hpp"

#include <algorithm>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qts {

namespace {

// Work thresholds below which the serial path is used even when OpenMP is
// available; the categorical fixtures are tiny and fork/join would dominate.
constexpr std::size_t kParallelRrefMinCells = 1u << 14;
constexpr std::size_t kParallelMulMinOps = 1u << 16;

u32 mul_mod(u32 a, u32 b, u32 p) { return static_cast<u32>((static_cast<u64>(a) * b) % p); }

u32 sub_mod(u32 a, u32 b, u32 p) { return a >= b ? a - b : a + p - b; }

u32 add_mod(u32 a, u32 b, u32 p) {
    u32 s = a + b;
    return s >= p ? s - p : s;
}

// Eliminates column `col` from row `target` using the normalized pivot row.
void eliminate_row(std::vector<u32>& data, std::size_t cols, u32 p, std::size_t pivot_row,
                   std::size_t target, std::size_t col) {
    u32 factor = data[target * cols + col];
    if (factor == 0)
        return;
    const u32* src = data.data() + pivot_row * cols;
    u32* dst = data.data() + target * cols;
    for (std::size_t j = col; j < cols; ++j)
        dst[j] = sub_mod(dst[j], mul_mod(factor, src[j], p), p);
}

RrefResult rref_impl(const Matrix& a, bool allow_parallel) {
    RrefResult out;
    const std::size_t m = a.rows(), n = a.cols();
    const u32 p = a.modulus();
    std::vector<u32> data = a.entries();

    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < n && pivot_row < m; ++col) {
        std::size_t sel = pivot_row;
        while (sel < m && data[sel * n + col] == 0)
            ++sel;
        if (sel == m)
            continue;
        if (sel != pivot_row)
            for (std::size_t j = 0; j < n; ++j)
                std::swap(data[sel * n + j], data[pivot_row * n + j]);
        u32 inv = inverse_mod(data[pivot_row * n + col], p);
        if (inv != 1)
            for (std::size_t j = col; j < n; ++j)
                data[pivot_row * n + j] = mul_mod(data[pivot_row * n + j], inv, p);

        bool parallel = allow_parallel && m * (n - col) >= kParallelRrefMinCells;
#ifdef _OPENMP
        if (parallel) {
#pragma omp parallel for schedule(static)
            for (long long i = 0; i < static_cast<long long>(m); ++i) {
                if (static_cast<std::size_t>(i) != pivot_row)
                    eliminate_row(data, n, p, pivot_row, static_cast<std::size_t>(i), col);
            }
        } else
#else
        (void)parallel;
#endif
        {
            for (std::size_t i = 0; i < m; ++i)
                if (i != pivot_row)
                    eliminate_row(data, n, p, pivot_row, i, col);
        }

        out.pivot_cols.push_back(col);
        ++pivot_row;
    }
    out.rank = out.pivot_cols.size();
    out.r = Matrix(m, n, p);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.r.set(i, j, data[i * n + j]);
    return out;
}

Matrix multiply_impl(const Matrix& a, const Matrix& b, bool allow_parallel) {
    if (a.cols() != b.rows() || a.modulus() != b.modulus())
        throw ValidationError("matrix multiply: shape or modulus mismatch (" +
                              std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " * " +
                              std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
    const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
    const u32 p = a.modulus();
    Matrix out(m, n, p);
    if (m == 0 || n == 0 || k == 0)
        return out;

    auto row_product = [&](std::size_t i) {
        for (std::size_t l = 0; l < k; ++l) {
            u32 av = a(i, l);
            if (av == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j) {
                u32 cur = out(i, j);
                out.set(i, j, add_mod(cur, mul_mod(av, b(l, j), p), p));
            }
        }
    };

#ifdef _OPENMP
    if (allow_parallel && m * n * k >= kParallelMulMinOps) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(m); ++i)
            row_product(static_cast<std::size_t>(i));
        return out;
    }
#else
    (void)allow_parallel;
#endif
    for (std::size_t i = 0; i < m; ++i)
        row_product(i);
    return out;
}

}  // namespace

bool is_prime(u32 p) {
    if (p < 2)
        return false;
    for (u32 d = 2; static_cast<u64>(d) * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

u32 inverse_mod(u32 a, u32 p) {
    a %= p;
    if (a == 0)
        throw ValidationError("inverse_mod: zero is not invertible");
    // extended Euclid
    long long t = 0, new_t = 1;
    long long r = p, new_r = a;
    while (new_r != 0) {
        long long q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (t < 0)
        t += p;
    return static_cast<u32>(t);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, u32 p) : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {
    if (!is_prime(p))
        throw ValidationError("modulus must be prime, got " + std::to_string(p));
}

Matrix Matrix::identity(std::size_t n, u32 p) {
    Matrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i, 1);
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<u32>>& rows, u32 p) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows[0].size();
    Matrix m(r, c, p);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c)
            throw ValidationError("from_rows: ragged rows");
        for (std::size_t j = 0; j < c; ++j)
            m.set(i, j, rows[i][j]);
    }
    return m;
}

Matrix Matrix::column(const std::vector<u32>& entries, u32 p) {
    Matrix m(entries.size(), 1, p);
    for (std::size_t i = 0; i < entries.size(); ++i)
        m.set(i, 0, entries[i]);
    return m;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](u32 v) { return v == 0; });
}

bool Matrix::is_identity() const {
    if (rows_ != cols_)
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1u : 0u))
                return false;
    return true;
}

bool Matrix::is_invertible() const { return rows_ == cols_ && rank(*this) == rows_; }

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || p_ != rhs.p_)
        throw ValidationError("matrix add: shape or modulus mismatch");
    Matrix out(rows_, cols_, p_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] = add_mod(data_[i], rhs.data_[i], p_);
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || p_ != rhs.p_)
        throw ValidationError("matrix sub: shape or modulus mismatch");
    Matrix out(rows_, cols_, p_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] = sub_mod(data_[i], rhs.data_[i], p_);
    return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const { return multiply_impl(*this, rhs, true); }

Matrix Matrix::scaled(u32 c) const {
    Matrix out(rows_, cols_, p_);
    c %= p_;
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] = mul_mod(data_[i], c, p_);
    return out;
}

Matrix Matrix::negated() const { return scaled(p_ - 1); }

Matrix Matrix::transposed() const {
    Matrix out(cols_, rows_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out.set(j, i, (*this)(i, j));
    return out;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& idx) const {
    Matrix out(rows_, idx.size(), p_);
    for (std::size_t j = 0; j < idx.size(); ++j) {
        if (idx[j] >= cols_)
            throw ValidationError("select_columns: index out of range");
        for (std::size_t i = 0; i < rows_; ++i)
            out.set(i, j, (*this)(i, idx[j]));
    }
    return out;
}

Matrix Matrix::hstack(const std::vector<Matrix>& blocks, std::size_t rows, u32 p) {
    std::size_t total = 0;
    for (const auto& b : blocks) {
        if (b.rows() != rows || b.modulus() != p)
            throw ValidationError("hstack: row count or modulus mismatch");
        total += b.cols();
    }
    Matrix out(rows, total, p);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                out.set(i, off + j, b(i, j));
        off += b.cols();
    }
    return out;
}

Matrix Matrix::vstack(const std::vector<Matrix>& blocks, std::size_t cols, u32 p) {
    std::size_t total = 0;
    for (const auto& b : blocks) {
        if (b.cols() != cols || b.modulus() != p)
            throw ValidationError("vstack: column count or modulus mismatch");
        total += b.rows();
    }
    Matrix out(total, cols, p);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < cols; ++j)
                out.set(off + i, j, b(i, j));
        off += b.rows();
    }
    return out;
}

Matrix Matrix::block_diag(const std::vector<Matrix>& blocks, u32 p) {
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        if (b.modulus() != p)
            throw ValidationError("block_diag: modulus mismatch");
        r += b.rows();
        c += b.cols();
    }
    Matrix out(r, c, p);
    std::size_t ro = 0, co = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                out.set(ro + i, co + j, b(i, j));
        ro += b.rows();
        co += b.cols();
    }
    return out;
}

std::string Matrix::str() const {
    std::ostringstream os;
    os << rows_ << "x" << cols_ << " mod " << p_;
    if (rows_ == 0 || cols_ == 0)
        return os.str();
    os << " [";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j)
            os << (j ? " " : "") << (*this)(i, j);
    }
    os << "]";
    return os.str();
}

RrefResult rref_with_pivots(const Matrix& a) { return rref_impl(a, true); }

std::size_t rank(const Matrix& a) { return rref_with_pivots(a).rank; }

Matrix kernel_basis(const Matrix& a) {
    RrefResult rr = rref_with_pivots(a);
    const std::size_t n = a.cols();
    const u32 p = a.modulus();
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : rr.pivot_cols)
        is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j])
            free_cols.push_back(j);
    Matrix k(n, free_cols.size(), p);
    for (std::size_t idx = 0; idx < free_cols.size(); ++idx) {
        std::size_t f = free_cols[idx];
        k.set(f, idx, 1);
        for (std::size_t i = 0; i < rr.rank; ++i) {
            u32 v = rr.r(i, f);
            if (v != 0)
                k.set(rr.pivot_cols[i], idx, p - v);
        }
    }
    return k;
}

std::optional<Matrix> solve_linear(const Matrix& a, const Matrix& rhs) {
    if (a.rows() != rhs.rows() || a.modulus() != rhs.modulus())
        throw ValidationError("solve_linear: shape or modulus mismatch");
    const std::size_t n = a.cols();
    const u32 p = a.modulus();
    Matrix aug = Matrix::hstack({a, rhs}, a.rows(), p);
    RrefResult rr = rref_with_pivots(aug);
    for (std::size_t c : rr.pivot_cols)
        if (c >= n)
            return std::nullopt;
    Matrix x(n, rhs.cols(), p);
    for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i)
        for (std::size_t j = 0; j < rhs.cols(); ++j)
            x.set(rr.pivot_cols[i], j, rr.r(i, n + j));
    return x;
}

Matrix inverse(const Matrix& a) {
    if (a.rows() != a.cols())
        throw ValidationError("inverse: matrix not square");
    auto x = solve_linear(a, Matrix::identity(a.rows(), a.modulus()));
    if (!x)
        throw ValidationError("inverse: matrix is singular");
    return *x;
}

CokernelData cokernel(const Matrix& a) {
    const std::size_t n = a.rows();
    const u32 p = a.modulus();
    RrefResult rr = rref_with_pivots(a);
    Matrix image = a.select_columns(rr.pivot_cols);
    const std::size_t r = image.cols();

    // Greedily extend the image basis by standard basis vectors: the pivots of
    // [image | I_n] that land in the identity block are the complement.
    Matrix probe = Matrix::hstack({image, Matrix::identity(n, p)}, n, p);
    RrefResult pr = rref_with_pivots(probe);
    std::vector<std::size_t> comp;
    for (std::size_t c : pr.pivot_cols)
        if (c >= r)
            comp.push_back(c - r);

    Matrix section(n, comp.size(), p);
    for (std::size_t j = 0; j < comp.size(); ++j)
        section.set(comp[j], j, 1);

    Matrix basis = Matrix::hstack({image, section}, n, p);
    Matrix basis_inv = inverse(basis);
    Matrix proj(n - r, n, p);
    for (std::size_t i = 0; i < n - r; ++i)
        for (std::size_t j = 0; j < n; ++j)
            proj.set(i, j, basis_inv(r + i, j));
    return CokernelData{std::move(proj), std::move(section), std::move(image), std::move(comp)};
}

namespace reference {

RrefResult rref_with_pivots(const Matrix& a) { return rref_impl(a, false); }

Matrix multiply(const Matrix& a, const Matrix& b) { return multiply_impl(a, b, false); }

}  // namespace reference

}  // namespace qts
