// Serial against OpenMP matrix kernels over a few fields and sizes.

#include <benchmark/benchmark.h>

#include <random>

#include "slrec/matfq.hpp"

using namespace slrec;

namespace {

Matrix random_matrix(FieldPtr F, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> u(0, F->q() - 1);
    Matrix A(F, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = Elt(u(rng));
    return A;
}

FieldPtr field_for(std::int64_t code) {
    switch (code) {
        case 0: return Field::make(2, 1);
        case 1: return Field::make(2, 2);
        case 2: return Field::make(5, 1);
        default: return Field::make(3, 2);
    }
}

template <Matrix (*Mul)(const Matrix&, const Matrix&)>
void BM_mul(benchmark::State& st) {
    const FieldPtr F = field_for(st.range(1));
    const int n = int(st.range(0));
    const Matrix A = random_matrix(F, n, 1), B = random_matrix(F, n, 2);
    for (auto _ : st) benchmark::DoNotOptimize(Mul(A, B));
    st.SetComplexityN(n);
}

template <std::vector<int> (*Rref)(Matrix&)>
void BM_rref(benchmark::State& st) {
    const FieldPtr F = field_for(st.range(1));
    const int n = int(st.range(0));
    const Matrix A = random_matrix(F, n, 3);
    for (auto _ : st) {
        Matrix M = A;
        benchmark::DoNotOptimize(Rref(M));
    }
    st.SetComplexityN(n);
}

void sizes(benchmark::internal::Benchmark* b) {
    for (int code : {0, 1, 2, 3})
        for (int n : {32, 100, 200}) b->Args({n, code});
}

}  // namespace

BENCHMARK_TEMPLATE(BM_mul, kernels::mul_serial)->Apply(sizes);
BENCHMARK_TEMPLATE(BM_mul, kernels::mul_omp)->Apply(sizes);
BENCHMARK_TEMPLATE(BM_rref, kernels::rref_serial)->Apply(sizes);
BENCHMARK_TEMPLATE(BM_rref, kernels::rref_omp)->Apply(sizes);

BENCHMARK_MAIN();
