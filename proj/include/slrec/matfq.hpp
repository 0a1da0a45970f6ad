#pragma once

// Dense matrices and subspaces over GF(q).
//
// Vectors are rows and matrices act on the right. A base change L stores the
// new basis vectors as its rows; a matrix A becomes L * A * L^{-1} in the new
// coordinates. All indices are 0-based.

#include <optional>
#include <vector>

#include "slrec/gfq.hpp"

namespace slrec {

class Matrix {
public:
    Matrix() = default;
    Matrix(FieldPtr F, int rows, int cols) : F_(std::move(F)), r_(rows), c_(cols), a_(std::size_t(rows) * cols, 0) {}

    static Matrix identity(FieldPtr F, int n);
    static Matrix zero(FieldPtr F, int rows, int cols) { return Matrix(std::move(F), rows, cols); }
    /// I + lambda * e_{i,j}, i != j.
    static Matrix elementary(FieldPtr F, int n, int i, int j, Elt lambda);
    static Matrix from_rows(FieldPtr F, const std::vector<std::vector<Elt>>& rows);

    const FieldPtr& field_ptr() const { return F_; }
    const Field& field() const { return *F_; }
    int rows() const { return r_; }
    int cols() const { return c_; }
    bool square() const { return r_ == c_; }

    Elt& operator()(int i, int j) { return a_[std::size_t(i) * c_ + j]; }
    Elt operator()(int i, int j) const { return a_[std::size_t(i) * c_ + j]; }
    Elt* row(int i) { return a_.data() + std::size_t(i) * c_; }
    const Elt* row(int i) const { return a_.data() + std::size_t(i) * c_; }
    std::vector<Elt> row_vec(int i) const { return {row(i), row(i) + c_}; }
    const std::vector<Elt>& data() const { return a_; }
    std::vector<Elt>& data() { return a_; }

    bool is_identity() const;
    bool is_zero() const;
    std::size_t nnz() const;

    friend bool operator==(const Matrix& A, const Matrix& B) {
        return A.r_ == B.r_ && A.c_ == B.c_ && A.a_ == B.a_;
    }

private:
    FieldPtr F_;
    int r_ = 0, c_ = 0;
    std::vector<Elt> a_;
};

/// Computational kernels. The `_omp` variants parallelize over rows with
/// OpenMP; the `_serial` variants are the reference implementations.
namespace kernels {

Matrix mul_serial(const Matrix& A, const Matrix& B);
Matrix mul_omp(const Matrix& A, const Matrix& B);
/// Reduces M in place to reduced row echelon form and returns pivot columns.
std::vector<int> rref_serial(Matrix& M);
std::vector<int> rref_omp(Matrix& M);

}  // namespace kernels

/// Product with a cost-based choice between the dense kernel and a path that
/// iterates over the nonzeros of a sparse factor.
Matrix mul(const Matrix& A, const Matrix& B);
Matrix add(const Matrix& A, const Matrix& B);
Matrix sub(const Matrix& A, const Matrix& B);
Matrix scale(const Matrix& A, Elt c);
Matrix transpose(const Matrix& A);
Matrix inverse(const Matrix& A);
Elt det(const Matrix& A);
Matrix pow(const Matrix& A, u128 e);
/// A^{-1} for invertible A, also for negative exponents.
Matrix pow_signed(const Matrix& A, long long e);
int rank(const Matrix& A);
std::vector<int> rref(Matrix& M);
Matrix vstack(const Matrix& A, const Matrix& B);
/// Rows [r0, r1) and columns [c0, c1).
Matrix submatrix(const Matrix& A, int r0, int r1, int c0, int c1);
/// diag(A, I_{n - dim A}).
Matrix embed(const Matrix& A, int n);
/// Row vector times matrix.
std::vector<Elt> vec_mul(const std::vector<Elt>& v, const Matrix& A);
Poly charpoly(const Matrix& A);
Matrix companion(FieldPtr F, const Poly& P);
/// P(A) for a polynomial P.
Matrix poly_eval(const Matrix& A, const Poly& P);

class Subspace {
public:
    Subspace() = default;
    /// Echelonizes the span of the given rows.
    static Subspace span(const Matrix& rows);
    static Subspace zero(FieldPtr F, int ambient);
    static Subspace full(FieldPtr F, int ambient);

    int ambient() const { return basis_.cols(); }
    int dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }
    const FieldPtr& field_ptr() const { return basis_.field_ptr(); }

    bool contains_vector(const std::vector<Elt>& v) const;
    /// Coordinates of v in the echelon basis, or nullopt if v is not in the space.
    std::optional<std::vector<Elt>> coords(const std::vector<Elt>& v) const;

    friend bool operator==(const Subspace& U, const Subspace& W) { return U.basis_ == W.basis_; }

private:
    Matrix basis_;
    std::vector<int> pivots_;
};

/// (row space of A, {v : v A = 0}), both echelonized.
std::pair<Subspace, Subspace> image_and_kernel(const Matrix& A);
Subspace subspace_sum(const Subspace& U, const Subspace& W);
Subspace subspace_intersect(const Subspace& U, const Subspace& W);
bool subspace_equal(const Subspace& U, const Subspace& W);
/// True iff W is a subspace of U.
bool subspace_contains(const Subspace& U, const Subspace& W);

/// For each row t of T, a row x with x * A = t; nullopt if some t is not
/// in the row space of A.
std::optional<Matrix> solve_left(const Matrix& A, const Matrix& T);

/// Completes independent rows to an invertible matrix, drawing new rows from
/// `preferred` first and then from the standard basis.
Matrix extend_to_basis(const Matrix& partial, const std::optional<Subspace>& preferred = std::nullopt);
/// L * A * L^{-1}.
Matrix conjugate(const Matrix& A, const Matrix& L);
/// Action of A on an invariant subspace W in W's echelon basis.
Matrix restrict_to(const Matrix& A, const Subspace& W);
bool irreducible_on(const Matrix& A, const Subspace& W);

}  // namespace slrec
