#include "norms.hpp"

#include <cmath>

namespace fairclust {

double pow_exp(double x, Exponent p) {
    int e = p.value();
    if (e == 1) return x;
    if (e == 2) return x * x;
    return std::pow(x, static_cast<double>(e));
}

double root_exp(double x, Exponent p) {
    int e = p.value();
    if (e == 1) return x;
    if (e == 2) return std::sqrt(x);
    return std::pow(x, 1.0 / static_cast<double>(e));
}

double lq_distance(std::span<const double> a, std::span<const double> b, Exponent q) {
    if (a.size() != b.size())
        raise(errc::dimension_mismatch, "lq_distance: vectors of different dimension");
    if (q.is_infinite()) {
        double m = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            double d = std::fabs(a[i] - b[i]);
            if (d > m) m = d;
        }
        return m;
    }
    int e = q.value();
    if (e == 1) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
        return s;
    }
    if (e == 2) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            double d = a[i] - b[i];
            s += d * d;
        }
        return std::sqrt(s);
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::pow(std::fabs(a[i] - b[i]), static_cast<double>(e));
    return std::pow(s, 1.0 / static_cast<double>(e));
}

double cascaded_norm(std::span<const double> matrix, int rows, int cols, Exponent p, Exponent q) {
    if (rows < 0 || cols < 0 || matrix.size() != static_cast<std::size_t>(rows) * cols)
        raise(errc::dimension_mismatch, "cascaded_norm: matrix size does not match rows*cols");
    CostAggregate agg(p);
    for (int r = 0; r < rows; ++r) {
        std::span<const double> row = matrix.subspan(static_cast<std::size_t>(r) * cols, cols);
        if (q.is_infinite()) {
            double m = 0.0;
            for (double v : row) {
                double d = std::fabs(v);
                if (d > m) m = d;
            }
            agg.add(m);
        } else {
            int e = q.value();
            double s = 0.0;
            for (double v : row) s += std::pow(std::fabs(v), static_cast<double>(e));
            agg.add(std::pow(s, 1.0 / static_cast<double>(e)));
        }
    }
    return agg.value();
}

}  // namespace fairclust
