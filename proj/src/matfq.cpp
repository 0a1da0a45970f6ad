#include "slrec/matfq.hpp"

#include <algorithm>
#include <cmath>

namespace slrec {

Matrix Matrix::identity(FieldPtr F, int n) {
    Matrix I(std::move(F), n, n);
    for (int i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

Matrix Matrix::elementary(FieldPtr F, int n, int i, int j, Elt lambda) {
    Matrix E = identity(std::move(F), n);
    E(i, j) = lambda;
    return E;
}

Matrix Matrix::from_rows(FieldPtr F, const std::vector<std::vector<Elt>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    Matrix M(std::move(F), r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw ShapeMismatch("ragged rows");
        for (int j = 0; j < c; ++j) M(i, j) = rows[i][j];
    }
    return M;
}

bool Matrix::is_identity() const {
    if (r_ != c_) return false;
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j)
            if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
}

bool Matrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](Elt x) { return x == 0; });
}

std::size_t Matrix::nnz() const {
    return static_cast<std::size_t>(std::count_if(a_.begin(), a_.end(), [](Elt x) { return x != 0; }));
}

namespace {

void check_mul(const Matrix& A, const Matrix& B) {
    if (A.cols() != B.rows()) throw ShapeMismatch("product of incompatible shapes");
}

// out = A.row(i) * B, skipping zero entries of the row.
void row_times(const Matrix& A, int i, const Matrix& B, Elt* out, std::vector<std::uint64_t>& acc) {
    const Field& F = A.field();
    const int n = B.cols(), K = A.cols();
    const Elt* a = A.row(i);
    if (F.is_prime_field()) {
        std::fill(acc.begin(), acc.end(), 0);
        const std::uint64_t p = F.p();
        for (int k = 0; k < K; ++k) {
            const std::uint64_t x = a[k];
            if (!x) continue;
            const Elt* b = B.row(k);
            for (int j = 0; j < n; ++j) acc[j] += x * b[j];
        }
        for (int j = 0; j < n; ++j) out[j] = static_cast<Elt>(acc[j] % p);
        return;
    }
    std::fill(out, out + n, 0);
    for (int k = 0; k < K; ++k) {
        const Elt x = a[k];
        if (!x) continue;
        const Elt* b = B.row(k);
        for (int j = 0; j < n; ++j)
            if (b[j]) out[j] = F.add(out[j], F.mul(x, b[j]));
    }
}

// dst -= c * src over columns [from, n).
void row_axpy(const Field& F, Elt* dst, const Elt* src, Elt c, int from, int n) {
    if (!c) return;
    const Elt nc = F.neg(c);
    for (int j = from; j < n; ++j)
        if (src[j]) dst[j] = F.add(dst[j], F.mul(nc, src[j]));
}

void row_scale(const Field& F, Elt* r, Elt c, int from, int n) {
    for (int j = from; j < n; ++j) r[j] = F.mul(r[j], c);
}

template <bool Parallel>
std::vector<int> rref_impl(Matrix& M) {
    const Field& F = M.field();
    const int R = M.rows(), C = M.cols();
    std::vector<int> pivots;
    int lead = 0;
    for (int col = 0; col < C && lead < R; ++col) {
        int pr = -1;
        for (int i = lead; i < R; ++i)
            if (M(i, col)) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != lead) std::swap_ranges(M.row(pr), M.row(pr) + C, M.row(lead));
        row_scale(F, M.row(lead), F.inv(M(lead, col)), col, C);
        const Elt* src = M.row(lead);
        if constexpr (Parallel) {
#pragma omp parallel for schedule(static) if (static_cast<long long>(R) * C > 4096)
            for (int i = 0; i < R; ++i)
                if (i != lead && M(i, col)) row_axpy(F, M.row(i), src, M(i, col), col, C);
        } else {
            for (int i = 0; i < R; ++i)
                if (i != lead && M(i, col)) row_axpy(F, M.row(i), src, M(i, col), col, C);
        }
        pivots.push_back(col);
        ++lead;
    }
    return pivots;
}

}  // namespace

namespace kernels {

Matrix mul_serial(const Matrix& A, const Matrix& B) {
    check_mul(A, B);
    Matrix C(A.field_ptr(), A.rows(), B.cols());
    std::vector<std::uint64_t> acc(B.cols());
    for (int i = 0; i < A.rows(); ++i) row_times(A, i, B, C.row(i), acc);
    return C;
}

Matrix mul_omp(const Matrix& A, const Matrix& B) {
    check_mul(A, B);
    Matrix C(A.field_ptr(), A.rows(), B.cols());
    const int R = A.rows();
#pragma omp parallel if (static_cast<long long>(R) * A.cols() * B.cols() > 32768)
    {
        std::vector<std::uint64_t> acc(B.cols());
#pragma omp for schedule(static)
        for (int i = 0; i < R; ++i) row_times(A, i, B, C.row(i), acc);
    }
    return C;
}

std::vector<int> rref_serial(Matrix& M) { return rref_impl<false>(M); }
std::vector<int> rref_omp(Matrix& M) { return rref_impl<true>(M); }

}  // namespace kernels

Matrix mul(const Matrix& A, const Matrix& B) {
    check_mul(A, B);
    const std::size_t na = A.nnz(), nb = B.nnz();
    const std::size_t row_cost = na * static_cast<std::size_t>(B.cols());
    const std::size_t col_cost = nb * static_cast<std::size_t>(A.rows());
    if (col_cost * 2 >= row_cost) return kernels::mul_omp(A, B);
    // Scatter each nonzero B(k,j) into column j of the result.
    const Field& F = A.field();
    Matrix C(A.field_ptr(), A.rows(), B.cols());
    std::vector<int> nzrows;
    for (int k = 0; k < B.rows(); ++k) {
        const Elt* b = B.row(k);
        nzrows.clear();
        for (int i = 0; i < A.rows(); ++i)
            if (A(i, k)) nzrows.push_back(i);
        if (nzrows.empty()) continue;
        for (int j = 0; j < B.cols(); ++j) {
            if (!b[j]) continue;
            for (int i : nzrows) C(i, j) = F.add(C(i, j), F.mul(A(i, k), b[j]));
        }
    }
    return C;
}

Matrix add(const Matrix& A, const Matrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw ShapeMismatch("sum of different shapes");
    Matrix C = A;
    const Field& F = A.field();
    for (std::size_t k = 0; k < C.data().size(); ++k) C.data()[k] = F.add(A.data()[k], B.data()[k]);
    return C;
}

Matrix sub(const Matrix& A, const Matrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw ShapeMismatch("difference of different shapes");
    Matrix C = A;
    const Field& F = A.field();
    for (std::size_t k = 0; k < C.data().size(); ++k) C.data()[k] = F.sub(A.data()[k], B.data()[k]);
    return C;
}

Matrix scale(const Matrix& A, Elt c) {
    Matrix C = A;
    for (auto& x : C.data()) x = A.field().mul(x, c);
    return C;
}

Matrix transpose(const Matrix& A) {
    Matrix T(A.field_ptr(), A.cols(), A.rows());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) T(j, i) = A(i, j);
    return T;
}

Matrix inverse(const Matrix& A) {
    if (!A.square()) throw ShapeMismatch("inverse of non-square matrix");
    const int n = A.rows();
    const Field& F = A.field();
    // Monomial matrices invert by transposing and inverting entries.
    {
        bool monomial = true;
        std::vector<int> where(n, -1);
        for (int i = 0; i < n && monomial; ++i) {
            int cnt = 0;
            for (int j = 0; j < n; ++j)
                if (A(i, j)) {
                    ++cnt;
                    where[i] = j;
                }
            if (cnt != 1) monomial = false;
        }
        if (monomial) {
            Matrix R(A.field_ptr(), n, n);
            std::vector<bool> seen(n, false);
            for (int i = 0; i < n; ++i) {
                if (seen[where[i]]) throw Singular("matrix is singular");
                seen[where[i]] = true;
                R(where[i], i) = F.inv(A(i, where[i]));
            }
            return R;
        }
    }
    Matrix aug(A.field_ptr(), n, 2 * n);
    for (int i = 0; i < n; ++i) {
        std::copy(A.row(i), A.row(i) + n, aug.row(i));
        aug(i, n + i) = 1;
    }
    auto piv = kernels::rref_omp(aug);
    if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw Singular("matrix is singular");
    return submatrix(aug, 0, n, n, 2 * n);
}

Elt det(const Matrix& A0) {
    if (!A0.square()) throw ShapeMismatch("det of non-square matrix");
    Matrix A = A0;
    const Field& F = A.field();
    const int n = A.rows();
    Elt d = 1;
    for (int col = 0; col < n; ++col) {
        int pr = -1;
        for (int i = col; i < n; ++i)
            if (A(i, col)) {
                pr = i;
                break;
            }
        if (pr < 0) return 0;
        if (pr != col) {
            std::swap_ranges(A.row(pr), A.row(pr) + n, A.row(col));
            d = F.neg(d);
        }
        const Elt pv = A(col, col);
        d = F.mul(d, pv);
        const Elt pinv = F.inv(pv);
        for (int i = col + 1; i < n; ++i)
            if (A(i, col)) row_axpy(F, A.row(i), A.row(col), F.mul(A(i, col), pinv), col, n);
    }
    return d;
}

Matrix pow(const Matrix& A, u128 e) {
    if (!A.square()) throw ShapeMismatch("power of non-square matrix");
    Matrix R = Matrix::identity(A.field_ptr(), A.rows());
    Matrix B = A;
    while (e) {
        if (e & 1) R = mul(R, B);
        e >>= 1;
        if (e) B = mul(B, B);
    }
    return R;
}

Matrix pow_signed(const Matrix& A, long long e) {
    if (e >= 0) return pow(A, static_cast<u128>(e));
    return pow(inverse(A), static_cast<u128>(-e));
}

std::vector<int> rref(Matrix& M) { return kernels::rref_omp(M); }

int rank(const Matrix& A) {
    Matrix M = A;
    return static_cast<int>(rref(M).size());
}

Matrix vstack(const Matrix& A, const Matrix& B) {
    if (A.cols() != B.cols()) throw ShapeMismatch("vstack of different widths");
    Matrix C(A.field_ptr() ? A.field_ptr() : B.field_ptr(), A.rows() + B.rows(), A.cols());
    std::copy(A.data().begin(), A.data().end(), C.data().begin());
    std::copy(B.data().begin(), B.data().end(), C.data().begin() + A.data().size());
    return C;
}

Matrix submatrix(const Matrix& A, int r0, int r1, int c0, int c1) {
    Matrix S(A.field_ptr(), r1 - r0, c1 - c0);
    for (int i = r0; i < r1; ++i)
        for (int j = c0; j < c1; ++j) S(i - r0, j - c0) = A(i, j);
    return S;
}

Matrix embed(const Matrix& A, int n) {
    Matrix E = Matrix::identity(A.field_ptr(), n);
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) E(i, j) = A(i, j);
    return E;
}

std::vector<Elt> vec_mul(const std::vector<Elt>& v, const Matrix& A) {
    if (static_cast<int>(v.size()) != A.rows()) throw ShapeMismatch("vector length");
    const Field& F = A.field();
    std::vector<Elt> out(A.cols(), 0);
    for (int k = 0; k < A.rows(); ++k) {
        if (!v[k]) continue;
        const Elt* r = A.row(k);
        for (int j = 0; j < A.cols(); ++j)
            if (r[j]) out[j] = F.add(out[j], F.mul(v[k], r[j]));
    }
    return out;
}

Poly charpoly(const Matrix& A) {
    if (!A.square()) throw ShapeMismatch("charpoly of non-square matrix");
    const Field& F = A.field();
    const int n = A.rows();
    Matrix H = A;
    // Similarity reduction to upper Hessenberg form.
    for (int j = 0; j + 2 < n; ++j) {
        int piv = -1;
        for (int i = j + 1; i < n; ++i)
            if (H(i, j)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != j + 1) {
            std::swap_ranges(H.row(piv), H.row(piv) + n, H.row(j + 1));
            for (int r = 0; r < n; ++r) std::swap(H(r, piv), H(r, j + 1));
        }
        const Elt pinv = F.inv(H(j + 1, j));
        for (int i = j + 2; i < n; ++i) {
            if (!H(i, j)) continue;
            const Elt u = F.mul(H(i, j), pinv);
            row_axpy(F, H.row(i), H.row(j + 1), u, 0, n);
            for (int r = 0; r < n; ++r)
                if (H(r, i)) H(r, j + 1) = F.add(H(r, j + 1), F.mul(u, H(r, i)));
        }
    }
    std::vector<Poly> p(n + 1);
    p[0] = Poly{1};
    for (int k = 1; k <= n; ++k) {
        p[k] = poly::mul(F, Poly{F.neg(H(k - 1, k - 1)), 1}, p[k - 1]);
        Elt t = 1;
        for (int i = k - 1; i >= 1; --i) {
            t = F.mul(t, H(i, i - 1));
            if (!t) break;
            const Elt c = F.mul(t, H(i - 1, k - 1));
            if (c) p[k] = poly::sub(F, p[k], poly::scale(F, p[i - 1], c));
        }
    }
    return p[n];
}

Matrix companion(FieldPtr F, const Poly& P) {
    const int n = poly::deg(P);
    Matrix C(F, n, n);
    const Field& K = *F;
    const Elt inv_lead = K.inv(P.back());
    for (int i = 0; i + 1 < n; ++i) C(i, i + 1) = 1;
    for (int j = 0; j < n; ++j) C(n - 1, j) = K.neg(K.mul(P[j], inv_lead));
    return C;
}

Matrix poly_eval(const Matrix& A, const Poly& P) {
    const Field& F = A.field();
    const int n = A.rows();
    const int d = poly::deg(P);
    if (d < 0) return Matrix::zero(A.field_ptr(), n, n);
    // Paterson-Stockmeyer: powers A^0..A^k, then Horner in A^k.
    const int k = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(d + 1)))));
    std::vector<Matrix> pw(k + 1);
    pw[0] = Matrix::identity(A.field_ptr(), n);
    for (int i = 1; i <= k; ++i) pw[i] = mul(pw[i - 1], A);
    auto block = [&](int j) {
        Matrix S(A.field_ptr(), n, n);
        for (int i = 0; i < k; ++i) {
            const int idx = j * k + i;
            if (idx > d || !P[idx]) continue;
            const Elt c = P[idx];
            const auto& src = pw[i].data();
            auto& dst = S.data();
            for (std::size_t t = 0; t < dst.size(); ++t)
                if (src[t]) dst[t] = F.add(dst[t], F.mul(c, src[t]));
        }
        return S;
    };
    const int m = d / k;
    Matrix R = block(m);
    for (int j = m - 1; j >= 0; --j) R = add(mul(R, pw[k]), block(j));
    return R;
}

// ---------------------------------------------------------------------------
// Subspaces

Subspace Subspace::span(const Matrix& rows) {
    Matrix M = rows;
    auto piv = rref(M);
    Subspace S;
    S.basis_ = submatrix(M, 0, static_cast<int>(piv.size()), 0, M.cols());
    S.pivots_ = std::move(piv);
    return S;
}

Subspace Subspace::zero(FieldPtr F, int ambient) {
    Subspace S;
    S.basis_ = Matrix(std::move(F), 0, ambient);
    return S;
}

Subspace Subspace::full(FieldPtr F, int ambient) { return span(Matrix::identity(std::move(F), ambient)); }

std::optional<std::vector<Elt>> Subspace::coords(const std::vector<Elt>& v) const {
    if (static_cast<int>(v.size()) != ambient()) throw AmbientMismatch("vector length");
    const Field& F = basis_.field();
    std::vector<Elt> c(dim());
    std::vector<Elt> rest = v;
    for (int i = 0; i < dim(); ++i) {
        c[i] = rest[pivots_[i]];
        if (c[i]) row_axpy(F, rest.data(), basis_.row(i), c[i], 0, ambient());
    }
    for (Elt x : rest)
        if (x) return std::nullopt;
    return c;
}

bool Subspace::contains_vector(const std::vector<Elt>& v) const { return coords(v).has_value(); }

std::pair<Subspace, Subspace> image_and_kernel(const Matrix& A) {
    Subspace img = Subspace::span(A);
    // Left null space: reduce [A | I]; rows whose A-part vanishes span it.
    const int r = A.rows(), c = A.cols();
    Matrix aug(A.field_ptr(), r, c + r);
    for (int i = 0; i < r; ++i) {
        std::copy(A.row(i), A.row(i) + c, aug.row(i));
        aug(i, c + i) = 1;
    }
    auto piv = rref(aug);
    int first = 0;
    while (first < static_cast<int>(piv.size()) && piv[first] < c) ++first;
    Matrix ker = submatrix(aug, first, r, c, c + r);
    return {img, Subspace::span(ker)};
}

std::optional<Matrix> solve_left(const Matrix& A, const Matrix& T) {
    if (A.cols() != T.cols()) throw ShapeMismatch("solve_left: column counts differ");
    const Field& F = A.field();
    const int r = A.rows(), c = A.cols();
    // E * A = R with R in echelon form.
    Matrix aug(A.field_ptr(), r, c + r);
    for (int i = 0; i < r; ++i) {
        std::copy(A.row(i), A.row(i) + c, aug.row(i));
        aug(i, c + i) = 1;
    }
    auto piv = rref(aug);
    Matrix X(A.field_ptr(), T.rows(), r);
    for (int t = 0; t < T.rows(); ++t) {
        std::vector<Elt> res = T.row_vec(t);
        for (std::size_t i = 0; i < piv.size() && piv[i] < c; ++i) {
            const Elt k = res[piv[i]];
            if (k == 0) continue;
            for (int j = 0; j < c; ++j) res[j] = F.sub(res[j], F.mul(k, aug(int(i), j)));
            for (int j = 0; j < r; ++j) X(t, j) = F.add(X(t, j), F.mul(k, aug(int(i), c + j)));
        }
        for (Elt e : res)
            if (e != 0) return std::nullopt;
    }
    return X;
}

Subspace subspace_sum(const Subspace& U, const Subspace& W) {
    if (U.ambient() != W.ambient()) throw AmbientMismatch("sum of different ambients");
    return Subspace::span(vstack(U.basis(), W.basis()));
}

Subspace subspace_intersect(const Subspace& U, const Subspace& W) {
    if (U.ambient() != W.ambient()) throw AmbientMismatch("intersection of different ambients");
    const int d = U.ambient();
    FieldPtr F = U.basis().field_ptr() ? U.basis().field_ptr() : W.basis().field_ptr();
    // Zassenhaus: rows [u | u] and [w | 0].
    Matrix Z(F, U.dim() + W.dim(), 2 * d);
    for (int i = 0; i < U.dim(); ++i)
        for (int j = 0; j < d; ++j) Z(i, j) = Z(i, d + j) = U.basis()(i, j);
    for (int i = 0; i < W.dim(); ++i)
        for (int j = 0; j < d; ++j) Z(U.dim() + i, j) = W.basis()(i, j);
    auto piv = rref(Z);
    int first = 0;
    while (first < static_cast<int>(piv.size()) && piv[first] < d) ++first;
    return Subspace::span(submatrix(Z, first, static_cast<int>(piv.size()), d, 2 * d));
}

bool subspace_equal(const Subspace& U, const Subspace& W) {
    if (U.ambient() != W.ambient()) throw AmbientMismatch("comparison of different ambients");
    return U == W;
}

bool subspace_contains(const Subspace& U, const Subspace& W) {
    if (U.ambient() != W.ambient()) throw AmbientMismatch("containment of different ambients");
    for (int i = 0; i < W.dim(); ++i)
        if (!U.contains_vector(W.basis().row_vec(i))) return false;
    return true;
}

Matrix extend_to_basis(const Matrix& partial, const std::optional<Subspace>& preferred) {
    const int d = partial.cols();
    FieldPtr F = partial.field_ptr();
    const Field& K = *F;
    // Incremental echelon form of the rows chosen so far.
    std::vector<std::vector<Elt>> ech;
    std::vector<int> ech_piv;
    auto reduce = [&](std::vector<Elt> v) {
        for (std::size_t i = 0; i < ech.size(); ++i) {
            Elt c = v[ech_piv[i]];
            if (c) row_axpy(K, v.data(), ech[i].data(), c, 0, d);
        }
        return v;
    };
    auto try_add = [&](const std::vector<Elt>& v) {
        auto r = reduce(v);
        int p = -1;
        for (int j = 0; j < d; ++j)
            if (r[j]) {
                p = j;
                break;
            }
        if (p < 0) return false;
        row_scale(K, r.data(), K.inv(r[p]), 0, d);
        for (auto& e : ech)
            if (e[p]) row_axpy(K, e.data(), r.data(), e[p], 0, d);
        ech.push_back(std::move(r));
        ech_piv.push_back(p);
        return true;
    };
    std::vector<std::vector<Elt>> out;
    for (int i = 0; i < partial.rows(); ++i) {
        auto v = partial.row_vec(i);
        if (!try_add(v)) throw DependentInput("rows are linearly dependent");
        out.push_back(v);
    }
    if (preferred) {
        for (int i = 0; i < preferred->dim() && static_cast<int>(out.size()) < d; ++i) {
            auto v = preferred->basis().row_vec(i);
            if (try_add(v)) out.push_back(v);
        }
    }
    for (int k = 0; k < d && static_cast<int>(out.size()) < d; ++k) {
        std::vector<Elt> e(d, 0);
        e[k] = 1;
        if (try_add(e)) out.push_back(e);
    }
    return Matrix::from_rows(F, out);
}

Matrix conjugate(const Matrix& A, const Matrix& L) { return mul(mul(L, A), inverse(L)); }

Matrix restrict_to(const Matrix& A, const Subspace& W) {
    if (A.rows() != W.ambient() || !A.square()) throw ShapeMismatch("restriction shape");
    const int m = W.dim();
    Matrix R(A.field_ptr(), m, m);
    for (int i = 0; i < m; ++i) {
        auto img = vec_mul(W.basis().row_vec(i), A);
        auto c = W.coords(img);
        if (!c) throw NotInvariant("subspace is not invariant");
        for (int j = 0; j < m; ++j) R(i, j) = (*c)[j];
    }
    return R;
}

bool irreducible_on(const Matrix& A, const Subspace& W) {
    return poly::is_irreducible(A.field(), charpoly(restrict_to(A, W)));
}

}  // namespace slrec
