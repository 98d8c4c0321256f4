#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace karcat {

// Thrown when a theorem-backed assertion fails at runtime: either the input
// data was corrupted (negative controls) or there is a genuine bug.
class CheckFailure : public std::runtime_error {
public:
    explicit CheckFailure(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw CheckFailure(msg);
}

inline void expect_arg(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// Arithmetic in F_p for a prime p <= 97. Residues are kept in [0, p).
class PrimeField {
public:
    explicit PrimeField(int p);

    int modulus() const { return p_; }
    int reduce(long long a) const {
        long long r = a % p_;
        return static_cast<int>(r < 0 ? r + p_ : r);
    }
    int add(int a, int b) const { return (a + b) % p_; }
    int sub(int a, int b) const { return (a - b + p_) % p_; }
    int mul(int a, int b) const { return (a * b) % p_; }
    int neg(int a) const { return (p_ - a) % p_; }
    int inv(int a) const;

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

private:
    int p_;
};

// Dense row-major matrix over F_p. 0xn and nx0 shapes are legal.
class Matrix {
public:
    Matrix(PrimeField f, int rows, int cols);
    static Matrix identity(PrimeField f, int n);
    static Matrix from_rows(PrimeField f, const std::vector<std::vector<int>>& rows,
                            int cols_hint = -1);
    static Matrix column(PrimeField f, const std::vector<int>& entries);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const PrimeField& field() const { return field_; }

    int operator()(int r, int c) const { return data_[r * cols_ + c]; }
    int& at(int r, int c) { return data_[r * cols_ + c]; }
    const std::vector<int>& data() const { return data_; }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(int c) const;
    Matrix negated() const { return scaled(field_.neg(1)); }
    Matrix transpose() const;

    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }
    bool is_zero() const;
    bool is_identity() const;

    Matrix block(int r0, int c0, int nrows, int ncols) const;
    void set_block(int r0, int c0, const Matrix& m);
    static Matrix hstack(const Matrix& a, const Matrix& b);
    static Matrix vstack(const Matrix& a, const Matrix& b);
    static Matrix diag_sum(const Matrix& a, const Matrix& b);

    Matrix col(int j) const { return block(0, j, rows_, 1); }
    // Row-major flattening of all entries as a single column vector.
    Matrix vec() const;

private:
    PrimeField field_;
    int rows_, cols_;
    std::vector<int> data_;
};

struct RrefResult {
    Matrix reduced;
    std::vector<int> pivots;  // pivot column indices, ascending
};

// Unique reduced row-echelon form; the canonical form behind every basis and
// splitting choice in this library.
RrefResult rref(const Matrix& m);
int rank(const Matrix& m);

// Columns form the canonical kernel basis (free variables in RREF order).
Matrix kernel_basis(const Matrix& m);

// Solves a*x = b for each column of b, free variables set to 0 under the
// RREF pivot ordering. Empty result means the system is inconsistent.
std::optional<Matrix> solve_canonical(const Matrix& a, const Matrix& b);

// Canonical coset representative of v modulo the column space of basis:
// pivot coordinates of rref(basis^T) are eliminated. v may have several
// columns; each is reduced independently.
Matrix coset_reduce(const Matrix& v, const Matrix& basis);

std::optional<Matrix> invert(const Matrix& m);

// Standard basis vectors completing the columns of sub to a basis of
// F_p^ambient_dim, chosen greedily in index order.
Matrix complement_basis(const Matrix& sub, int ambient_dim);

// Canonical basis of the column space: transposed nonzero rows of
// rref(m^T), so the result depends only on the space.
Matrix column_space_basis(const Matrix& m);

// One linear equation system over several unknown matrices ("slots").
// Equations have the form  sum_k  sign_k * U_k * X_{slot_k} * V_k  =  RHS.
class LinearSystem {
public:
    LinearSystem(PrimeField f, int total_unknowns);

    struct Slot {
        int offset;
        int rows, cols;
    };
    struct Term {
        Slot slot;
        std::optional<Matrix> left;   // defaults to identity
        std::optional<Matrix> right;  // defaults to identity
        int sign = 1;
    };

    void add_equation(const std::vector<Term>& terms, const Matrix& rhs);
    // rhs = 0 convenience
    void add_homogeneous(const std::vector<Term>& terms, int rhs_rows, int rhs_cols);
    // Raw linear rows: coeffs * x[offset .. offset+coeffs.cols()) = rhs.
    void add_raw(const Matrix& coeffs, const Matrix& rhs, int offset = 0);

    std::optional<Matrix> solve() const;   // canonical particular solution
    Matrix kernel() const;                 // columns span the solution kernel

private:
    PrimeField field_;
    int unknowns_;
    std::vector<std::vector<int>> rows_;
    std::vector<int> rhs_;
};

}  // namespace karcat
