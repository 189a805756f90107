#include "dataset.hpp"

#include <cmath>
#include <string>

namespace fairclust {

namespace {
constexpr double kMetricTol = 1e-9;
}

ColoredDataset::ColoredDataset(std::vector<double> coords, int dim, std::vector<int> colors) {
    if (dim <= 0) raise(errc::invalid_argument, "dataset dimension must be positive");
    if (colors.empty()) raise(errc::invalid_argument, "dataset must contain at least one point");
    if (coords.size() != colors.size() * static_cast<std::size_t>(dim))
        raise(errc::dimension_mismatch, "coordinate buffer size does not match points * dim");
    coords_ = std::move(coords);
    colors_ = std::move(colors);
    dim_ = dim;
    metric_mode_ = false;
    index_colors();
}

ColoredDataset ColoredDataset::from_distance_matrix(std::vector<double> distances,
                                                    std::vector<int> colors) {
    std::size_t n = colors.size();
    if (n == 0) raise(errc::invalid_argument, "dataset must contain at least one point");
    if (distances.size() != n * n)
        raise(errc::dimension_mismatch, "distance matrix size does not match n*n");
    for (std::size_t i = 0; i < n; ++i) {
        if (std::fabs(distances[i * n + i]) > kMetricTol)
            raise(errc::invalid_argument,
                  "distance matrix has nonzero diagonal at row " + std::to_string(i));
        for (std::size_t j = 0; j < n; ++j) {
            double d = distances[i * n + j];
            if (d < 0.0)
                raise(errc::invalid_argument, "distance matrix has a negative entry");
            if (std::fabs(d - distances[j * n + i]) > kMetricTol)
                raise(errc::invalid_argument, "distance matrix is not symmetric at (" +
                                                  std::to_string(i) + "," + std::to_string(j) +
                                                  ")");
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (distances[i * n + j] > distances[i * n + k] + distances[k * n + j] + kMetricTol)
                    raise(errc::invalid_argument,
                          "distance matrix violates the triangle inequality at (" +
                              std::to_string(i) + "," + std::to_string(j) + "," +
                              std::to_string(k) + ")");

    ColoredDataset ds;
    ds.dist_ = std::move(distances);
    ds.colors_ = std::move(colors);
    ds.dim_ = 0;
    ds.metric_mode_ = true;
    ds.index_colors();
    return ds;
}

void ColoredDataset::index_colors() {
    int max_color = -1;
    for (int c : colors_) {
        if (c < 0) raise(errc::invalid_argument, "colors must be nonnegative");
        if (c > max_color) max_color = c;
    }
    num_colors_ = max_color + 1;
    classes_.assign(num_colors_, {});
    for (int i = 0; i < num_points(); ++i) classes_[colors_[i]].push_back(i);
    for (int c = 0; c < num_colors_; ++c)
        if (classes_[c].empty())
            raise(errc::invalid_argument,
                  "color indices must be contiguous starting at 0; color " + std::to_string(c) +
                      " has no points");
}

const std::vector<int>& ColoredDataset::color_class(int c) const {
    if (c < 0 || c >= num_colors_) raise(errc::invalid_argument, "color index out of range");
    return classes_[c];
}

bool ColoredDataset::balanced() const {
    for (int c = 1; c < num_colors_; ++c)
        if (classes_[c].size() != classes_[0].size()) return false;
    return true;
}

int ColoredDataset::per_color_count() const {
    require_balanced();
    return static_cast<int>(classes_[0].size());
}

void ColoredDataset::require_balanced() const {
    if (!balanced())
        raise(errc::unbalanced_dataset, "dataset color classes differ in size");
}

std::span<const double> ColoredDataset::point(int i) const {
    if (metric_mode_) raise(errc::unsupported, "metric-mode dataset has no coordinates");
    return std::span<const double>(coords_).subspan(static_cast<std::size_t>(i) * dim_, dim_);
}

const std::vector<double>& ColoredDataset::coords() const {
    if (metric_mode_) raise(errc::unsupported, "metric-mode dataset has no coordinates");
    return coords_;
}

double ColoredDataset::distance(int i, int j, Exponent q) const {
    if (metric_mode_) return dist_[static_cast<std::size_t>(i) * num_points() + j];
    return lq_distance(point(i), point(j), q);
}

CenterSet CenterSet::from_indices(std::vector<int> idx) {
    CenterSet cs;
    cs.indices = std::move(idx);
    return cs;
}

CenterSet CenterSet::from_coords(std::vector<double> c, int dim) {
    if (dim <= 0) raise(errc::invalid_argument, "center dimension must be positive");
    if (c.size() % dim != 0)
        raise(errc::dimension_mismatch, "center coordinate buffer size not a multiple of dim");
    CenterSet cs;
    cs.coords = std::move(c);
    cs.dim = dim;
    return cs;
}

double center_distance(const ColoredDataset& ds, int point, const CenterSet& centers, int center,
                       Exponent q) {
    if (centers.index_mode()) return ds.distance(point, centers.indices[center], q);
    if (ds.metric_mode())
        raise(errc::unsupported, "coordinate centers cannot be used with a metric-mode dataset");
    if (centers.dim != ds.dim())
        raise(errc::dimension_mismatch, "center dimension does not match dataset dimension");
    std::span<const double> c(centers.coords);
    return lq_distance(ds.point(point),
                       c.subspan(static_cast<std::size_t>(center) * centers.dim, centers.dim), q);
}

int nearest_center(const ColoredDataset& ds, int point, const CenterSet& centers, Exponent q) {
    int k = centers.size();
    if (k == 0) raise(errc::invalid_argument, "nearest_center: empty center set");
    int best = 0;
    double best_d = center_distance(ds, point, centers, 0, q);
    for (int c = 1; c < k; ++c) {
        double d = center_distance(ds, point, centers, c, q);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

double clustering_cost(const ColoredDataset& ds, const CenterSet& centers,
                       const std::vector<int>& assignment, NormSpec norm) {
    if (assignment.size() != static_cast<std::size_t>(ds.num_points()))
        raise(errc::dimension_mismatch, "assignment length does not match dataset size");
    int k = centers.size();
    CostAggregate agg(norm.p);
    for (int i = 0; i < ds.num_points(); ++i) {
        int slot = assignment[i];
        if (slot < 0 || slot >= k)
            raise(errc::invalid_argument, "assignment references center slot out of range");
        agg.add(center_distance(ds, i, centers, slot, norm.q));
    }
    return agg.value();
}

BalanceReport verify_balance(const ColoredDataset& ds, const FairClustering& clustering) {
    if (clustering.assignment.size() != static_cast<std::size_t>(ds.num_points()))
        raise(errc::dimension_mismatch, "assignment length does not match dataset size");
    int k = clustering.centers.size();
    BalanceReport report;
    report.histogram.assign(k, std::vector<long>(ds.num_colors(), 0));
    for (int i = 0; i < ds.num_points(); ++i) {
        int slot = clustering.assignment[i];
        if (slot < 0 || slot >= k)
            raise(errc::invalid_argument, "assignment references center slot out of range");
        report.histogram[slot][ds.color(i)] += 1;
    }
    report.balanced = true;
    for (int c = 0; c < k && report.balanced; ++c)
        for (int col = 1; col < ds.num_colors(); ++col)
            if (report.histogram[c][col] != report.histogram[c][0]) {
                report.balanced = false;
                break;
            }
    return report;
}

}  // namespace fairclust
