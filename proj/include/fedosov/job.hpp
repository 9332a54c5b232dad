#pragma once

#include <string>
#include <vector>

#include "fedosov/scalar.hpp"
#include "fedosov/star.hpp"

namespace fedosov {

enum class OutputMode { human, machine };

struct GammaEntry {
    int i = 0;
    int j = 0;
    int k = 0;
    ScalarCoeff expr;
};

// One batch job: dimension, connection coefficients, the two factors,
// and the truncation order.
struct JobConfig {
    int n = 0;
    int hpower = 0;
    std::vector<GammaEntry> gamma;
    ScalarCoeff a;
    ScalarCoeff b;
    bool print_intermediate = false;
    OutputMode output = OutputMode::human;
};

// Reads and validates a JSON config file. Required keys: n, hpower, A, B.
// Optional: gamma, a list of {i, j, k, expr} records with 1 <= i <= j <= k
// <= 2n and no duplicate index triples. Anything else is rejected, as are
// factors that mention the reserved series variable or a function named y.
JobConfig load_config(const std::string& path);

ConnectionData connection_from(const JobConfig& cfg);

struct JobReport {
    StarResult result;
    std::string text;    // stdout payload, human or machine per config
    std::string timing;  // per-stage wall-clock summary, always collected
};

// Runs the whole pipeline. The report lists, in order: the connection
// one-form, its curvature, the corrected one-form through degree
// 2*hpower - 1, the sections of A and B, and the product by h-power.
// Only the product section appears unless print_intermediate is set.
JobReport run_job(const JobConfig& cfg);

}  // namespace fedosov
