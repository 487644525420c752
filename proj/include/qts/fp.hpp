#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qts {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

/// Base class for everything this library throws.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input: bad shapes, non-prime modulus, broken invariants in data files.
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

/// A post-hoc certificate did not hold (e.g. a tower stage failed its window test).
struct CertificateError : Error {
    explicit CertificateError(const std::string& msg) : Error(msg) {}
};

bool is_prime(u32 p);

u32 inverse_mod(u32 a, u32 p);

/// Dense matrix over the prime field F_p, row-major.
///
/// Shapes with zero rows or zero columns are first-class citizens: they show
/// up constantly as maps in and out of zero representations, and every
/// operation below is total on them.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0), p_(2) {}
    Matrix(std::size_t rows, std::size_t cols, u32 p);

    static Matrix identity(std::size_t n, u32 p);
    static Matrix zero(std::size_t rows, std::size_t cols, u32 p) { return Matrix(rows, cols, p); }
    static Matrix from_rows(const std::vector<std::vector<u32>>& rows, u32 p);
    /// Single column from a flat vector.
    static Matrix column(const std::vector<u32>& entries, u32 p);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    u32 modulus() const { return p_; }

    u32 operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, u32 v) { data_[i * cols_ + j] = v % p_; }

    const std::vector<u32>& entries() const { return data_; }

    bool operator==(const Matrix& other) const = default;

    bool is_zero() const;
    bool is_identity() const;
    bool is_invertible() const;

    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix scaled(u32 c) const;
    Matrix negated() const;
    Matrix transposed() const;

    /// Columns i with i in idx, in the given order.
    Matrix select_columns(const std::vector<std::size_t>& idx) const;

    static Matrix hstack(const std::vector<Matrix>& blocks, std::size_t rows, u32 p);
    static Matrix vstack(const std::vector<Matrix>& blocks, std::size_t cols, u32 p);
    static Matrix block_diag(const std::vector<Matrix>& blocks, u32 p);

    std::string str() const;

private:
    std::size_t rows_, cols_;
    u32 p_;
    std::vector<u32> data_;
};

struct RrefResult {
    Matrix r;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
};

/// Reduced row-echelon form over F_p. Row space is preserved and the result
/// is unique, so rref(rref(A)) == rref(A).
RrefResult rref_with_pivots(const Matrix& a);

std::size_t rank(const Matrix& a);

/// Columns form a basis of {x : Ax = 0}; column count = cols(A) - rank(A).
Matrix kernel_basis(const Matrix& a);

/// Solves A x = b for each column b of rhs. Free variables are set to zero so
/// the answer is deterministic. Returns nullopt when any column is
/// inconsistent. Throws ValidationError on shape mismatch.
std::optional<Matrix> solve_linear(const Matrix& a, const Matrix& rhs);

Matrix inverse(const Matrix& a);

/// Cokernel presentation of the column space of `a` inside F_p^rows:
/// proj * a == 0, proj is surjective with proj * section == identity, and
/// [image_basis | section] is a basis of the ambient space.
struct CokernelData {
    Matrix proj;     // (n - r) x n
    Matrix section;  // n x (n - r), columns are standard basis vectors
    Matrix image_basis;  // n x r, the pivot columns of `a`
    std::vector<std::size_t> complement_cols;
};

CokernelData cokernel(const Matrix& a);

/// Serial reference kernels. The OpenMP paths above must agree with these
/// bit-for-bit; tests and the fp_bench tool compare them.
namespace reference {
RrefResult rref_with_pivots(const Matrix& a);
Matrix multiply(const Matrix& a, const Matrix& b);
}  // namespace reference

}  // namespace qts
