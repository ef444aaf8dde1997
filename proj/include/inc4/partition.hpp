#pragma once

// Desk-scale polynomial partitioning: degree schedule, iterated approximate
// bisection on the Veronese lift, exact classification against Z(f), and the
// crossing/cell budget reports.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "inc4/geom.hpp"
#include "inc4/multipoly.hpp"
#include "inc4/structure.hpp"

namespace inc4 {

struct PartitionPlan {
    long long m = 0, n = 0;
    bool small_regime = true;  // m <= a n^{4/3}
    int D = 1;                 // first-stage degree target
    long long r = 1;           // cell-count target, r = D^4
    int E = 1;                 // second-stage degree, E = ceil(2^{c* sqrt(log2 m)})
};

PartitionPlan choose_degree(long long m, long long n, const BoundConstants& consts = {});

struct PartitionOptions {
    double delta = 0.05;  // per-stage imbalance allowance: each side <= (1/2 + delta)|G|
    int restarts = 64;
    int iters = 500;
};

struct StageInfo {
    int degree = 0;
    int groups_in = 0;
    double max_imbalance = 0.0;  // worst per-group strict-side fraction
    bool ok = false;
};

struct PartitionResult {
    std::vector<MultiPoly> factors;  // one per stage
    MultiPoly f;                     // their product
    int degree = 0;                  // deg f = sum of stage degrees
    std::vector<StageInfo> stages;
    std::map<std::vector<int>, long long> sign_classes;  // per-stage signs of off-surface points
    long long zero_points = 0;                           // points with f = 0
    double max_class_fraction = 0.0;                     // relative to |P|
    bool balanced = true;  // every stage met the imbalance bound
};

// Iterated halving: stage j bisects all current groups with one polynomial of
// the smallest degree whose lift has enough coordinates, found by a seeded
// anchored least-squares + repair search and verified exactly. Stops once the
// group count reaches r (or groups become singletons).
PartitionResult build_partition(const std::vector<Point4>& pts, long long r, std::uint64_t seed,
                                const PartitionOptions& opts = {});

struct Classification {
    std::vector<int> p0, p_prime;  // point indices on/off Z(f)
    std::vector<int> l0, l_prime;  // line indices contained/not contained
    std::vector<int> p0_stage;     // first factor vanishing at each p0 point
    std::vector<int> l0_stage;     // first factor containing each l0 line
};

Classification classify(const Config& cfg, const std::vector<MultiPoly>& factors);

struct CrossingReport {
    std::vector<int> per_line;  // distinct real crossings of f per line
    long long total = 0;
    long long budget = 0;       // |L'| (1 + deg f)
    std::vector<int> violations;  // lines with more than deg f crossings (none expected)
};

// Every line must have a nonzero restriction (contained lines are rejected).
CrossingReport crossing_budget_report(const std::vector<Line4>& l_prime, const MultiPoly& f);

struct TwoStageReport {
    PartitionPlan plan;
    PartitionResult partition;
    long long I_total = 0, I00 = 0, I0p = 0, Ipp = 0;
    long long p0 = 0, l0 = 0;
    bool identity_ok = false;
    long long i0p_budget = 0;  // n * deg f
    bool i0p_ok = false;
    CrossingReport crossings;
    long long sign_class_count = 0;
    double warren_ratio = 0.0;  // sign classes / r
    std::vector<std::string> violations;
    std::optional<PartitionResult> second_stage;  // partition of P0 with the E schedule
};

TwoStageReport two_stage_report(const Config& cfg, const BoundConstants& consts,
                                std::uint64_t seed, bool with_second_stage = false,
                                const PartitionOptions& opts = {});

// Incidence count over index subsets of a configuration.
long long incidence_between(const std::vector<Point4>& pts, const std::vector<Line4>& lines);

}  // namespace inc4
