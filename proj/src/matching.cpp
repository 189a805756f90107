#include "matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace fairclust {

namespace {

// Final costs are recomputed by summing selected entries in row order so that
// identical matchings always produce bit-identical costs regardless of which
// algorithm found them.
void finalize_costs(const CostMatrix& m, Exponent p, Matching& out) {
    CostAggregate agg(p);
    for (int r = 0; r < m.n; ++r) agg.add(m.at(r, out.perm[r]));
    out.powered_cost = agg.powered();
    out.cost = agg.value();
}

// Augmenting-path search for Kuhn's algorithm restricted to entries <= limit.
bool try_augment(const CostMatrix& m, double limit, int row, std::vector<int>& col_match,
                 std::vector<char>& visited) {
    for (int c = 0; c < m.n; ++c) {
        if (visited[c] || m.at(row, c) > limit) continue;
        visited[c] = 1;
        if (col_match[c] < 0 || try_augment(m, limit, col_match[c], col_match, visited)) {
            col_match[c] = row;
            return true;
        }
    }
    return false;
}

bool feasible_at(const CostMatrix& m, double limit) {
    std::vector<int> col_match(m.n, -1);
    std::vector<char> visited(m.n, 0);
    for (int r = 0; r < m.n; ++r) {
        std::fill(visited.begin(), visited.end(), 0);
        if (!try_augment(m, limit, r, col_match, visited)) return false;
    }
    return true;
}

std::vector<int> matching_at(const CostMatrix& m, double limit) {
    std::vector<int> col_match(m.n, -1);
    std::vector<char> visited(m.n, 0);
    for (int r = 0; r < m.n; ++r) {
        std::fill(visited.begin(), visited.end(), 0);
        if (!try_augment(m, limit, r, col_match, visited))
            raise(errc::internal_error, "bottleneck matching lost feasibility");
    }
    std::vector<int> perm(m.n, -1);
    for (int c = 0; c < m.n; ++c) perm[col_match[c]] = c;
    return perm;
}

// Hungarian algorithm with row/column potentials, minimizing the sum of the
// given entries. O(n^3).
std::vector<int> hungarian_perm(int n, const std::vector<double>& a) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), kInf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            int i0 = p[j0], j1 = 0;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = a[static_cast<std::size_t>(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> perm(n, -1);
    for (int j = 1; j <= n; ++j) perm[p[j] - 1] = j - 1;
    return perm;
}

}  // namespace

CostMatrix build_cost_matrix(const ColoredDataset& ds, int color_a, int color_b, Exponent q) {
    const std::vector<int>& ca = ds.color_class(color_a);
    const std::vector<int>& cb = ds.color_class(color_b);
    if (ca.size() != cb.size())
        raise(errc::unbalanced_dataset, "color classes differ in size, no perfect matching exists");
    CostMatrix m;
    m.n = static_cast<int>(ca.size());
    m.entries.resize(static_cast<std::size_t>(m.n) * m.n);
    for (int r = 0; r < m.n; ++r)
        for (int c = 0; c < m.n; ++c)
            m.entries[static_cast<std::size_t>(r) * m.n + c] = ds.distance(ca[r], cb[c], q);
    return m;
}

Matching hungarian_matching(const CostMatrix& m) {
    if (m.n == 0) raise(errc::invalid_argument, "empty cost matrix");
    Matching out;
    out.perm = hungarian_perm(m.n, m.entries);
    finalize_costs(m, Exponent::finite(1), out);
    return out;
}

Matching bottleneck_matching(const CostMatrix& m) {
    if (m.n == 0) raise(errc::invalid_argument, "empty cost matrix");
    std::vector<double> levels(m.entries);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    int lo = 0, hi = static_cast<int>(levels.size()) - 1;
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (feasible_at(m, levels[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    Matching out;
    out.perm = matching_at(m, levels[lo]);
    finalize_costs(m, Exponent::infinity(), out);
    return out;
}

Matching min_cost_perfect_matching(const CostMatrix& m, Exponent p) {
    if (m.n == 0) raise(errc::invalid_argument, "empty cost matrix");
    if (p.is_infinite()) return bottleneck_matching(m);
    Matching out;
    if (p.value() == 1) {
        out.perm = hungarian_perm(m.n, m.entries);
    } else {
        std::vector<double> powered(m.entries.size());
        for (std::size_t i = 0; i < m.entries.size(); ++i) powered[i] = pow_exp(m.entries[i], p);
        out.perm = hungarian_perm(m.n, powered);
    }
    finalize_costs(m, p, out);
    return out;
}

Matching greedy_matching(const CostMatrix& m, Exponent p) {
    if (m.n == 0) raise(errc::invalid_argument, "empty cost matrix");
    std::vector<std::tuple<double, int, int>> order;
    order.reserve(m.entries.size());
    for (int r = 0; r < m.n; ++r)
        for (int c = 0; c < m.n; ++c) order.emplace_back(m.at(r, c), r, c);
    std::sort(order.begin(), order.end());
    Matching out;
    out.perm.assign(m.n, -1);
    std::vector<char> col_used(m.n, 0);
    int placed = 0;
    for (const auto& [cost, r, c] : order) {
        (void)cost;
        if (out.perm[r] >= 0 || col_used[c]) continue;
        out.perm[r] = c;
        col_used[c] = 1;
        if (++placed == m.n) break;
    }
    finalize_costs(m, p, out);
    return out;
}

double emd(const ColoredDataset& ds, int color_a, int color_b, NormSpec norm, EmdMode mode) {
    if (color_a == color_b) return 0.0;
    // canonical orientation: the smaller color id always provides the rows,
    // so both argument orders run the identical computation and symmetry
    // holds bitwise, not just up to rounding
    if (color_a > color_b) std::swap(color_a, color_b);
    CostMatrix m = build_cost_matrix(ds, color_a, color_b, norm.q);
    Matching match = mode == EmdMode::exact ? min_cost_perfect_matching(m, norm.p)
                                            : greedy_matching(m, norm.p);
    return match.cost;
}

EmdTable EmdTable::compute(const ColoredDataset& ds, NormSpec norm, EmdMode mode) {
    ds.require_balanced();
    EmdTable t;
    t.num_colors_ = ds.num_colors();
    t.norm_ = norm;
    t.mode_ = mode;
    int l = t.num_colors_;
    t.values_.assign(static_cast<std::size_t>(l) * l, 0.0);
    t.powered_.assign(static_cast<std::size_t>(l) * l, 0.0);
    t.perms_.assign(static_cast<std::size_t>(l) * l, {});
    for (int a = 0; a < l; ++a) {
        for (int b = a + 1; b < l; ++b) {
            CostMatrix m = build_cost_matrix(ds, a, b, norm.q);
            Matching match = mode == EmdMode::exact ? min_cost_perfect_matching(m, norm.p)
                                                    : greedy_matching(m, norm.p);
            std::size_t fwd = static_cast<std::size_t>(a) * l + b;
            std::size_t rev = static_cast<std::size_t>(b) * l + a;
            t.values_[fwd] = t.values_[rev] = match.cost;
            t.powered_[fwd] = t.powered_[rev] = match.powered_cost;
            std::vector<int> inverse(match.perm.size(), -1);
            for (std::size_t s = 0; s < match.perm.size(); ++s) inverse[match.perm[s]] = s;
            t.perms_[fwd] = std::move(match.perm);
            t.perms_[rev] = std::move(inverse);
        }
    }
    return t;
}

int EmdTable::index(int a, int b) const {
    if (a < 0 || b < 0 || a >= num_colors_ || b >= num_colors_)
        raise(errc::invalid_argument, "color index out of range");
    return a * num_colors_ + b;
}

double EmdTable::value(int color_a, int color_b) const { return values_[index(color_a, color_b)]; }

double EmdTable::powered(int color_a, int color_b) const {
    return powered_[index(color_a, color_b)];
}

const std::vector<int>& EmdTable::matching(int color_a, int color_b) const {
    if (color_a == color_b) raise(errc::invalid_argument, "no matching of a color with itself");
    const std::vector<int>& perm = perms_[index(color_a, color_b)];
    if (perm.empty()) raise(errc::internal_error, "matching table entry missing");
    return perm;
}

double EmdTable::aggregate(int base_color, Exponent p) const {
    if (base_color < 0 || base_color >= num_colors_)
        raise(errc::invalid_argument, "color index out of range");
    CostAggregate agg(p);
    for (int j = 0; j < num_colors_; ++j) {
        if (j == base_color) continue;
        agg.add_powered(powered_[index(base_color, j)]);
    }
    return agg.value();
}

}  // namespace fairclust
