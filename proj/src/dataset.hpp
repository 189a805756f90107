#pragma once

#include <span>
#include <vector>

#include "norms.hpp"

namespace fairclust {

// A point set where every point carries a color (protected-group label).
// Two storage modes:
//   - coordinate mode: row-major coordinates, distances computed on demand
//   - metric mode: an explicit n x n distance matrix (validated as a metric)
class ColoredDataset {
public:
    ColoredDataset(std::vector<double> coords, int dim, std::vector<int> colors);

    static ColoredDataset from_distance_matrix(std::vector<double> distances,
                                               std::vector<int> colors);

    int num_points() const { return static_cast<int>(colors_.size()); }
    int dim() const { return dim_; }
    int num_colors() const { return num_colors_; }
    bool metric_mode() const { return metric_mode_; }

    int color(int i) const { return colors_[i]; }
    const std::vector<int>& colors() const { return colors_; }

    // Point indices of one color, ascending.
    const std::vector<int>& color_class(int c) const;

    bool balanced() const;
    // Points per color; raises unbalanced_dataset if classes differ in size.
    int per_color_count() const;
    void require_balanced() const;

    // Coordinate access (coordinate mode only).
    std::span<const double> point(int i) const;
    const std::vector<double>& coords() const;

    // Ground distance between two points. Coordinate mode uses l_q; metric
    // mode returns the matrix entry (q is ignored, the matrix is the metric).
    double distance(int i, int j, Exponent q) const;

private:
    ColoredDataset() = default;
    void index_colors();

    std::vector<double> coords_;
    std::vector<double> dist_;
    std::vector<int> colors_;
    std::vector<std::vector<int>> classes_;
    int dim_ = 0;
    int num_colors_ = 0;
    bool metric_mode_ = false;
};

// Cluster centers: either explicit coordinates (row-major) or indices of
// dataset points (medoids). Exactly one representation is populated.
struct CenterSet {
    std::vector<double> coords;
    int dim = 0;
    std::vector<int> indices;

    static CenterSet from_indices(std::vector<int> idx);
    static CenterSet from_coords(std::vector<double> c, int dim);

    bool index_mode() const { return coords.empty(); }
    int size() const {
        return index_mode() ? static_cast<int>(indices.size())
                            : static_cast<int>(coords.size()) / (dim > 0 ? dim : 1);
    }
};

// Ground distance from a point to one center.
double center_distance(const ColoredDataset& ds, int point, const CenterSet& centers, int center,
                       Exponent q);

// Index of the closest center; ties resolve to the lowest center slot.
int nearest_center(const ColoredDataset& ds, int point, const CenterSet& centers, Exponent q);

// A clustering: centers plus a per-point center slot. cost is the cascaded
// (p, q) objective of the assignment.
struct FairClustering {
    CenterSet centers;
    std::vector<int> assignment;
    NormSpec norm;
    double cost = 0.0;
};

double clustering_cost(const ColoredDataset& ds, const CenterSet& centers,
                       const std::vector<int>& assignment, NormSpec norm);

struct BalanceReport {
    bool balanced = false;
    // histogram[center][color] = point count
    std::vector<std::vector<long>> histogram;
};

// A clustering is balanced when every cluster contains the same number of
// points of every color (clusters may differ in size).
BalanceReport verify_balance(const ColoredDataset& ds, const FairClustering& clustering);

}  // namespace fairclust
