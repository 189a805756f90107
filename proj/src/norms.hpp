#pragma once

#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace fairclust {

// A positive integer exponent or infinity. Infinity is a distinct state, not a
// sentinel value, so arithmetic helpers must branch on it explicitly.
class Exponent {
public:
    static Exponent finite(int value) {
        if (value < 1) raise(errc::invalid_argument, "exponent must be >= 1");
        return Exponent(value);
    }
    static Exponent infinity() { return Exponent(0); }

    bool is_infinite() const { return raw_ == 0; }
    int value() const {
        if (is_infinite()) raise(errc::invalid_argument, "infinite exponent has no value");
        return raw_;
    }

    bool operator==(const Exponent& o) const { return raw_ == o.raw_; }
    bool operator!=(const Exponent& o) const { return raw_ != o.raw_; }

    std::string str() const { return is_infinite() ? "inf" : std::to_string(raw_); }

private:
    explicit Exponent(int raw) : raw_(raw) {}
    int raw_;
};

// The (p, q) pair defining a cascaded clustering objective: q is the per-point
// ground norm, p aggregates per-point distances across the dataset.
struct NormSpec {
    Exponent p = Exponent::finite(1);
    Exponent q = Exponent::finite(1);
};

// x^p for finite p (fast paths for 1 and 2).
double pow_exp(double x, Exponent p);

// x^(1/p) for finite p.
double root_exp(double x, Exponent p);

// l_q distance between two coordinate vectors of equal dimension.
double lq_distance(std::span<const double> a, std::span<const double> b, Exponent q);

// Aggregates per-point distances into the p-norm objective. Finite p keeps a
// running sum of p-th powers; infinite p keeps the max.
class CostAggregate {
public:
    explicit CostAggregate(Exponent p) : p_(p) {}

    void add(double dist) {
        if (p_.is_infinite()) {
            if (dist > acc_) acc_ = dist;
        } else {
            acc_ += pow_exp(dist, p_);
        }
    }

    // Contribution already raised to the p-th power (no-op transform for inf).
    void add_powered(double powered) {
        if (p_.is_infinite()) {
            if (powered > acc_) acc_ = powered;
        } else {
            acc_ += powered;
        }
    }

    // Sum of p-th powers (finite p) or the max (infinite p).
    double powered() const { return acc_; }

    // The norm value itself.
    double value() const { return p_.is_infinite() ? acc_ : root_exp(acc_, p_); }

private:
    Exponent p_;
    double acc_ = 0.0;
};

// Cascaded (p, q) norm of a row-major matrix: l_q of each row, then l_p of the
// resulting row norms.
double cascaded_norm(std::span<const double> matrix, int rows, int cols, Exponent p, Exponent q);

}  // namespace fairclust
