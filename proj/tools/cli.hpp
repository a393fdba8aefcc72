#pragma once

#include <hatdeg/certifier.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hatdeg::cli {

enum ExitCode : int { ok = 0, failure = 1, usage = 2 };

struct ExperimentRow {
    std::uint64_t seed = 0;
    int n = 0;
    long m = 0;
    int max_common = 0;
    bool k23_free = true;
    int strong_degeneracy = 1;
    BigInt hg_bound;   // (2d)^d
};

struct ExperimentReport {
    int n = 0;
    double c = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    std::vector<ExperimentRow> rows;

    double free_fraction = 0;
    double markov_bound = 0;   // C^6 / n, expected number of K_{2,3} copies
    int min_d = 0, max_d = 0;
    double median_d = 0;
};

/// Trial i samples G(n, C/n) with seed + i.
auto random_experiment(int n, double c, int trials, std::uint64_t seed) -> ExperimentReport;
auto experiment_csv(const ExperimentReport & r) -> std::string;

/// Exact rational from "a", "a/b" or a decimal such as "1.25".
auto parse_rational(const std::string & text) -> Rational;

/// args excludes the program name.
auto run_command(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;

}
