// Named invariant suites run by the command-line tool.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wxray/geometry.hpp"

namespace wxray {

struct CheckResult {
    std::string suite;
    std::string name;
    double residual;
    double tolerance;
    bool pass;
};

struct VerifyConfig {
    std::vector<double> gammas{-0.5, 0.0, 0.5, 1.0, 2.0};
    std::optional<int> degree;
    std::optional<double> tolerance;
    std::vector<std::pair<double, double>> charts{{0.3, 0.9}, {-0.3, 0.9}};  // (kappa, R)
};

const std::vector<std::string>& suite_names();  // includes "all"
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyConfig& config);

/// Sample points spread over the disk, boundary included, deterministic.
std::vector<DiskPoint> sample_points(int count, unsigned long long seed);

}  // namespace wxray
