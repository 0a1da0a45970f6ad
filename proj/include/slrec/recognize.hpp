#pragma once

// End-to-end recognition of SL(d,q): descent, base case, ascent, then exact
// verification of the composed program.

#include <array>
#include <string>

#include "slrec/ascent.hpp"
#include "slrec/descent.hpp"

namespace slrec {

struct Budgets {
    long long n1 = 0;  // descent
    long long n2 = 0;  // base case
    long long n3 = 0;  // ascent
};

/// 64 ceil(log2 d), 512, 64 ceil(log2 d).
Budgets default_budgets(int d);

struct RecognitionOptions {
    Budgets budgets;
    std::uint64_t seed = 1;
    Strategy strategy = Strategy::Naming;
    bool verify = true;
    /// Whole-pipeline attempts sharing the same budgets. A stage that runs
    /// out of draws ends the run.
    int attempts = 3;
};

struct StageTimes {
    double descent = 0, basecase = 0, ascent = 0, compose = 0, verify = 0;
};

struct RecognitionResult {
    bool ok = false;
    std::string failed_stage;  // "descent", "basecase", "ascent" or "verify"; empty on success
    Matrix L;
    Mslp slp;
    Budgets used;
    bool verified = false;
    StageTimes seconds;
    std::vector<int> chain_degrees;  // of the last attempt
    int attempts = 0;
    int descent_restarts = 0;
    AscentStats ascent;
};

/// Words for the standard generators of SL(d,q) in X and a base change L
/// such that the program evaluated on L X L^{-1} gives the standard
/// matrices. Requires d >= 4 and X generating SL(d,q).
RecognitionResult recognize(const std::vector<Matrix>& X, const RecognitionOptions& opts);

/// Evaluates `slp` on L x L^{-1} for x in X and compares with the standard
/// generators.
bool verify_result(const std::vector<Matrix>& X, const Matrix& L, const Mslp& slp);

enum class Disguise { Identity, Conjugate, Products };

/// Standard generators of SL(d,q), optionally conjugated by a random
/// invertible matrix; `Products` then replaces them by at most six random
/// words of length at most 20 that pass a naming check.
std::vector<Matrix> gen_instance(FieldPtr F, int d, std::uint64_t seed, Disguise disguise);

/// A uniformly random invertible d x d matrix.
Matrix random_invertible(FieldPtr F, int d, std::mt19937_64& rng);

struct BenchRow {
    int d = 0;
    std::uint64_t q = 0;
    int repeats = 0;
    int successes = 0;
    double mean_seconds = 0, median_seconds = 0;
    double mean_draws = 0;
};

/// Runs `repeats` conjugate-disguised instances per (d, q) with seeds
/// seed, seed + 1, ...; zero budgets mean defaults.
std::vector<BenchRow> bench(const std::vector<std::pair<int, std::uint64_t>>& grid, int repeats, Budgets budgets,
                            std::uint64_t seed, bool verify = true);
std::string bench_csv(const std::vector<BenchRow>& rows);

/// GF(q) from a prime power q, with the default modulus.
FieldPtr field_of_order(std::uint64_t q);

}  // namespace slrec
