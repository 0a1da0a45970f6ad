#pragma once

#include <random>
#include <string>

#include "slrec/matfq.hpp"

namespace testing_helpers {

using namespace slrec;

inline Matrix digits_matrix(FieldPtr F, const std::vector<std::string>& rows) {
    std::vector<std::vector<Elt>> r;
    for (const auto& s : rows) {
        std::vector<Elt> v;
        for (char c : s) v.push_back(Elt(c - '0'));
        r.push_back(v);
    }
    return Matrix::from_rows(F, r);
}

inline Matrix direct_sum(const Matrix& A, const Matrix& B) {
    Matrix C(A.field_ptr(), A.rows() + B.rows(), A.cols() + B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) C(i, j) = A(i, j);
    for (int i = 0; i < B.rows(); ++i)
        for (int j = 0; j < B.cols(); ++j) C(A.rows() + i, A.cols() + j) = B(i, j);
    return C;
}

/// Unipotent Jordan block of size n.
inline Matrix jordan_one(FieldPtr F, int n) {
    Matrix J = Matrix::identity(F, n);
    for (int i = 0; i + 1 < n; ++i) J(i, i + 1) = 1;
    return J;
}

inline Poly random_irreducible(const Field& F, int deg, std::mt19937_64& rng) {
    while (true) {
        Poly P(std::size_t(deg) + 1);
        for (int i = 0; i < deg; ++i) P[std::size_t(i)] = Elt(rng() % F.q());
        P[std::size_t(deg)] = 1;
        if (P[0] != 0 && poly::is_irreducible(F, P)) return P;
    }
}

inline bool all_zero(const std::vector<Elt>& v) {
    for (auto x : v)
        if (x) return false;
    return true;
}

}  // namespace testing_helpers
