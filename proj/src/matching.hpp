#pragma once

#include <vector>

#include "dataset.hpp"
#include "norms.hpp"

namespace fairclust {

// Square matrix of ground distances between two equal-size point groups.
// entries[r * n + c] = distance(row point r, column point c).
struct CostMatrix {
    int n = 0;
    std::vector<double> entries;

    double at(int r, int c) const { return entries[static_cast<std::size_t>(r) * n + c]; }
};

CostMatrix build_cost_matrix(const ColoredDataset& ds, int color_a, int color_b, Exponent q);

// A perfect matching between rows and columns. perm[r] = column matched to
// row r. cost is the p-norm of the selected entries; powered_cost is the sum
// of p-th powers (== cost when p is infinite).
struct Matching {
    std::vector<int> perm;
    double cost = 0.0;
    double powered_cost = 0.0;
};

// Exact minimum under the p-norm of selected entries: Hungarian algorithm on
// p-th powers for finite p, bottleneck matching for infinite p. O(n^3).
Matching min_cost_perfect_matching(const CostMatrix& m, Exponent p);

// Minimizes the sum of selected entries (no exponent applied).
Matching hungarian_matching(const CostMatrix& m);

// Minimizes the maximum selected entry: binary search over entry values with
// an augmenting-path feasibility check per probe.
Matching bottleneck_matching(const CostMatrix& m);

// Repeatedly picks the globally cheapest unmatched (row, col) pair; ties break
// by (row, col) lexicographic order. Fast approximation, no quality guarantee.
Matching greedy_matching(const CostMatrix& m, Exponent p);

enum class EmdMode { exact, greedy };

// Earth mover's distance between two color classes of equal size: the cost of
// the optimal (or greedy) perfect matching under the (p, q) norm.
double emd(const ColoredDataset& ds, int color_a, int color_b, NormSpec norm,
           EmdMode mode = EmdMode::exact);

// All pairwise EMD values and their matchings for one dataset. Matchings are
// stored for both orientations so partner lookups never invert on the fly.
class EmdTable {
public:
    static EmdTable compute(const ColoredDataset& ds, NormSpec norm, EmdMode mode);

    int num_colors() const { return num_colors_; }
    NormSpec norm() const { return norm_; }
    EmdMode mode() const { return mode_; }

    double value(int color_a, int color_b) const;
    double powered(int color_a, int color_b) const;
    // perm[s] = position within color_b matched to position s within color_a.
    const std::vector<int>& matching(int color_a, int color_b) const;

    // (sum over j of EMD(base, j)^p)^(1/p), or max over j for infinite p.
    double aggregate(int base_color, Exponent p) const;

private:
    int index(int a, int b) const;

    int num_colors_ = 0;
    NormSpec norm_{Exponent::finite(1), Exponent::finite(1)};
    EmdMode mode_ = EmdMode::exact;
    std::vector<double> values_;
    std::vector<double> powered_;
    std::vector<std::vector<int>> perms_;
};

}  // namespace fairclust
