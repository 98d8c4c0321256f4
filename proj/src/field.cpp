#include "field.hpp"

#include <algorithm>

namespace karcat {

PrimeField::PrimeField(int p) : p_(p) {
    expect_arg(p >= 2 && p <= 97, "field modulus must lie in [2, 97]");
    for (int d = 2; d * d <= p; ++d)
        expect_arg(p % d != 0, "field modulus must be prime");
}

int PrimeField::inv(int a) const {
    expect_arg(a % p_ != 0, "division by zero in F_p");
    // extended Euclid
    int t = 0, new_t = 1, r = p_, new_r = a % p_;
    while (new_r != 0) {
        int q = r / new_r;
        int tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    return reduce(t);
}

Matrix::Matrix(PrimeField f, int rows, int cols)
    : field_(f), rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0) {
    expect_arg(rows >= 0 && cols >= 0, "negative matrix shape");
}

Matrix Matrix::identity(PrimeField f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(PrimeField f, const std::vector<std::vector<int>>& rows, int cols_hint) {
    int r = static_cast<int>(rows.size());
    int c = cols_hint >= 0 ? cols_hint : (r > 0 ? static_cast<int>(rows[0].size()) : 0);
    Matrix m(f, r, c);
    for (int i = 0; i < r; ++i) {
        expect_arg(static_cast<int>(rows[i].size()) == c, "ragged matrix rows");
        for (int j = 0; j < c; ++j) m.at(i, j) = f.reduce(rows[i][j]);
    }
    return m;
}

Matrix Matrix::column(PrimeField f, const std::vector<int>& entries) {
    Matrix m(f, static_cast<int>(entries.size()), 1);
    for (size_t i = 0; i < entries.size(); ++i) m.at(static_cast<int>(i), 0) = f.reduce(entries[i]);
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    expect_arg(cols_ == o.rows_ && field_ == o.field_, "shape mismatch in matrix product");
    Matrix r(field_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            int a = (*this)(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j)
                r.at(i, j) = field_.reduce(r(i, j) + static_cast<long long>(a) * o(k, j));
        }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    expect_arg(rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_, "shape mismatch in sum");
    Matrix r(field_, rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.add(data_[i], o.data_[i]);
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    expect_arg(rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_, "shape mismatch in difference");
    Matrix r(field_, rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.sub(data_[i], o.data_[i]);
    return r;
}

Matrix Matrix::scaled(int c) const {
    Matrix r(field_, rows_, cols_);
    int cc = field_.reduce(c);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.mul(data_[i], cc);
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = (*this)(i, j);
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](int x) { return x == 0; });
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    return *this == identity(field_, rows_);
}

Matrix Matrix::block(int r0, int c0, int nrows, int ncols) const {
    expect_arg(r0 >= 0 && c0 >= 0 && r0 + nrows <= rows_ && c0 + ncols <= cols_, "block out of range");
    Matrix r(field_, nrows, ncols);
    for (int i = 0; i < nrows; ++i)
        for (int j = 0; j < ncols; ++j) r.at(i, j) = (*this)(r0 + i, c0 + j);
    return r;
}

void Matrix::set_block(int r0, int c0, const Matrix& m) {
    expect_arg(r0 + m.rows() <= rows_ && c0 + m.cols() <= cols_, "block out of range");
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) at(r0 + i, c0 + j) = m(i, j);
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
    expect_arg(a.rows() == b.rows(), "hstack row mismatch");
    Matrix r(a.field(), a.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(0, a.cols(), b);
    return r;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
    expect_arg(a.cols() == b.cols(), "vstack column mismatch");
    Matrix r(a.field(), a.rows() + b.rows(), a.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), 0, b);
    return r;
}

Matrix Matrix::diag_sum(const Matrix& a, const Matrix& b) {
    Matrix r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), a.cols(), b);
    return r;
}

Matrix Matrix::vec() const {
    Matrix r(field_, rows_ * cols_, 1);
    for (int i = 0; i < rows_ * cols_; ++i) r.at(i, 0) = data_[i];
    return r;
}

RrefResult rref(const Matrix& m) {
    Matrix r = m;
    const PrimeField& f = m.field();
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < r.cols() && row < r.rows(); ++col) {
        int pr = -1;
        for (int i = row; i < r.rows(); ++i)
            if (r(i, col) != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != row)
            for (int j = 0; j < r.cols(); ++j) std::swap(r.at(row, j), r.at(pr, j));
        int s = f.inv(r(row, col));
        for (int j = 0; j < r.cols(); ++j) r.at(row, j) = f.mul(r(row, j), s);
        for (int i = 0; i < r.rows(); ++i) {
            if (i == row || r(i, col) == 0) continue;
            int c = r(i, col);
            for (int j = 0; j < r.cols(); ++j)
                r.at(i, j) = f.sub(r(i, j), f.mul(c, r(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return {r, pivots};
}

int rank(const Matrix& m) { return static_cast<int>(rref(m).pivots.size()); }

Matrix kernel_basis(const Matrix& m) {
    auto rr = rref(m);
    const PrimeField& f = m.field();
    std::vector<int> free_cols;
    {
        size_t pi = 0;
        for (int c = 0; c < m.cols(); ++c) {
            if (pi < rr.pivots.size() && rr.pivots[pi] == c) {
                ++pi;
            } else {
                free_cols.push_back(c);
            }
        }
    }
    Matrix basis(f, m.cols(), static_cast<int>(free_cols.size()));
    for (size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        basis.at(fc, static_cast<int>(k)) = 1;
        for (size_t r = 0; r < rr.pivots.size(); ++r)
            basis.at(rr.pivots[r], static_cast<int>(k)) = f.neg(rr.reduced(static_cast<int>(r), fc));
    }
    return basis;
}

std::optional<Matrix> solve_canonical(const Matrix& a, const Matrix& b) {
    expect_arg(a.rows() == b.rows(), "solve: rhs row mismatch");
    auto rr = rref(Matrix::hstack(a, b));
    for (int p : rr.pivots)
        if (p >= a.cols()) return std::nullopt;
    Matrix x(a.field(), a.cols(), b.cols());
    for (size_t r = 0; r < rr.pivots.size(); ++r)
        for (int j = 0; j < b.cols(); ++j)
            x.at(rr.pivots[r], j) = rr.reduced(static_cast<int>(r), a.cols() + j);
    return x;
}

Matrix coset_reduce(const Matrix& v, const Matrix& basis) {
    expect_arg(v.rows() == basis.rows() || basis.cols() == 0, "coset_reduce dimension mismatch");
    auto rr = rref(basis.transpose());
    const PrimeField& f = v.field();
    Matrix out = v;
    for (size_t r = 0; r < rr.pivots.size(); ++r) {
        int pc = rr.pivots[r];
        for (int j = 0; j < out.cols(); ++j) {
            int c = out(pc, j);
            if (c == 0) continue;
            for (int i = 0; i < out.rows(); ++i)
                out.at(i, j) = f.sub(out(i, j), f.mul(c, rr.reduced(static_cast<int>(r), i)));
        }
    }
    return out;
}

std::optional<Matrix> invert(const Matrix& m) {
    expect_arg(m.rows() == m.cols(), "invert: matrix not square");
    auto rr = rref(Matrix::hstack(m, Matrix::identity(m.field(), m.rows())));
    // all pivots must fall in the m-part
    for (int i = 0; i < m.rows(); ++i)
        if (i >= static_cast<int>(rr.pivots.size()) || rr.pivots[i] != i) return std::nullopt;
    return rr.reduced.block(0, m.cols(), m.rows(), m.cols());
}

Matrix complement_basis(const Matrix& sub, int ambient_dim) {
    expect_arg(sub.rows() == ambient_dim || sub.cols() == 0, "complement_basis dimension mismatch");
    expect_arg(rank(sub) == sub.cols(), "complement_basis: dependent columns");
    Matrix cur = sub.cols() == 0 ? Matrix(sub.field(), ambient_dim, 0) : sub;
    Matrix out(sub.field(), ambient_dim, 0);
    int r = cur.cols();
    for (int j = 0; j < ambient_dim && r < ambient_dim; ++j) {
        Matrix e(sub.field(), ambient_dim, 1);
        e.at(j, 0) = 1;
        Matrix cand = Matrix::hstack(cur, e);
        if (rank(cand) > r) {
            cur = cand;
            out = Matrix::hstack(out, e);
            ++r;
        }
    }
    return out;
}

Matrix column_space_basis(const Matrix& m) {
    auto rr = rref(m.transpose());
    int r = static_cast<int>(rr.pivots.size());
    return rr.reduced.block(0, 0, r, m.rows()).transpose();
}

LinearSystem::LinearSystem(PrimeField f, int total_unknowns)
    : field_(f), unknowns_(total_unknowns) {}

void LinearSystem::add_equation(const std::vector<Term>& terms, const Matrix& rhs) {
    for (int r = 0; r < rhs.rows(); ++r) {
        for (int c = 0; c < rhs.cols(); ++c) {
            std::vector<int> row(unknowns_, 0);
            for (const Term& t : terms) {
                // entry (r,c) of U * X * V picks up U(r,i)*V(j,c) at X(i,j)
                for (int i = 0; i < t.slot.rows; ++i) {
                    int u = t.left ? (*t.left)(r, i) : (i == r ? 1 : 0);
                    if (u == 0) continue;
                    for (int j = 0; j < t.slot.cols; ++j) {
                        int v = t.right ? (*t.right)(j, c) : (j == c ? 1 : 0);
                        if (v == 0) continue;
                        int coeff = field_.mul(u, v);
                        if (t.sign < 0) coeff = field_.neg(coeff);
                        int idx = t.slot.offset + i * t.slot.cols + j;
                        row[idx] = field_.add(row[idx], coeff);
                    }
                }
            }
            rows_.push_back(std::move(row));
            rhs_.push_back(rhs(r, c));
        }
    }
}

void LinearSystem::add_homogeneous(const std::vector<Term>& terms, int rhs_rows, int rhs_cols) {
    add_equation(terms, Matrix(field_, rhs_rows, rhs_cols));
}

void LinearSystem::add_raw(const Matrix& coeffs, const Matrix& rhs, int offset) {
    expect_arg(coeffs.rows() == rhs.rows() && rhs.cols() == 1, "raw row shape mismatch");
    expect_arg(offset + coeffs.cols() <= unknowns_, "raw row offset out of range");
    for (int i = 0; i < coeffs.rows(); ++i) {
        std::vector<int> row(unknowns_, 0);
        for (int j = 0; j < coeffs.cols(); ++j) row[offset + j] = coeffs(i, j);
        rows_.push_back(std::move(row));
        rhs_.push_back(rhs(i, 0));
    }
}

std::optional<Matrix> LinearSystem::solve() const {
    Matrix a(field_, static_cast<int>(rows_.size()), unknowns_);
    Matrix b(field_, static_cast<int>(rows_.size()), 1);
    for (size_t i = 0; i < rows_.size(); ++i) {
        for (int j = 0; j < unknowns_; ++j) a.at(static_cast<int>(i), j) = rows_[i][j];
        b.at(static_cast<int>(i), 0) = rhs_[i];
    }
    return solve_canonical(a, b);
}

Matrix LinearSystem::kernel() const {
    Matrix a(field_, static_cast<int>(rows_.size()), unknowns_);
    for (size_t i = 0; i < rows_.size(); ++i)
        for (int j = 0; j < unknowns_; ++j) a.at(static_cast<int>(i), j) = rows_[i][j];
    return kernel_basis(a);
}

}  // namespace karcat
