#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "fitscore/error.hpp"
#include "fitscore/numeric.hpp"
#include "fitscore/recurrence.hpp"

namespace fitscore {

// mantissa * 2^exponent
struct ScaledValue {
    double mantissa = 0.0;
    std::int64_t exponent = 0;

    Rational to_rational() const {
        if (mantissa == 0.0)
            return 0;
        int e = 0;
        double m = std::frexp(mantissa, &e);
        // m * 2^53 is an integer for any double in [0.5, 1).
        BigInt num(static_cast<std::int64_t>(std::ldexp(m, 53)));
        std::int64_t shift = exponent + e - 53;
        Rational r(num);
        if (shift >= 0)
            r *= Rational(BigInt(1) << static_cast<unsigned>(shift));
        else
            r /= Rational(BigInt(1) << static_cast<unsigned>(-shift));
        return r;
    }
};

// Floating-point iteration x <- xi x over a sparse copy of xi, renormalized
// by a power of two after every step. The shared exponent is tracked exactly.
class ScaledIterator {
public:
    explicit ScaledIterator(const CountMatrix &xi) : n_(xi.dim()) {
        row_start_.push_back(0);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                if (xi(i, j)) {
                    col_.push_back(j);
                    val_.push_back(static_cast<double>(xi(i, j)));
                }
            }
            row_start_.push_back(col_.size());
        }
    }

    // (xi^k v)_0 for every k in ks (ascending).
    std::vector<ScaledValue> first_coordinate(const std::vector<std::uint64_t> &v,
                                              const std::vector<std::uint64_t> &ks) const {
        if (v.size() != n_)
            throw Error("initial vector does not match the recurrence matrix");
        if (!std::is_sorted(ks.begin(), ks.end()))
            throw Error("checkpoints must be ascending");
        std::vector<double> x(v.begin(), v.end()), y(n_);
        std::int64_t exponent = 0;
        normalize(x, exponent);
        std::vector<ScaledValue> out;
        std::uint64_t step = 0;
        for (std::uint64_t k : ks) {
            for (; step < k; ++step) {
                for (std::size_t i = 0; i < n_; ++i) {
                    double s = 0.0;
                    for (std::size_t p = row_start_[i]; p < row_start_[i + 1]; ++p)
                        s += val_[p] * x[col_[p]];
                    y[i] = s;
                }
                x.swap(y);
                normalize(x, exponent);
            }
            out.push_back({x[0], exponent});
        }
        return out;
    }

private:
    static void normalize(std::vector<double> &x, std::int64_t &exponent) {
        double top = 0.0;
        for (double d : x)
            top = std::max(top, std::fabs(d));
        if (top == 0.0)
            return;
        int e = 0;
        std::frexp(top, &e);
        for (double &d : x)
            d = std::ldexp(d, -e);
        exponent += e;
    }

    std::size_t n_;
    std::vector<std::size_t> row_start_, col_;
    std::vector<double> val_;
};

} // namespace fitscore
