#pragma once

#include <cstdint>
#include <vector>

#include "fitscore/error.hpp"
#include "fitscore/numeric.hpp"
#include "fitscore/recurrence.hpp"

namespace fitscore {

class BigMatrix {
public:
    BigMatrix() = default;
    explicit BigMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

    explicit BigMatrix(const CountMatrix &m) : BigMatrix(m.dim()) {
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                (*this)(i, j) = m(i, j);
    }

    static BigMatrix identity(std::size_t dim) {
        BigMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t dim() const { return dim_; }
    BigInt &operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    const BigInt &operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }
    bool operator==(const BigMatrix &) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<BigInt> a_;
};

// Skips zero entries of the left factor; powers of recurrence matrices keep
// their zero blocks, so this roughly halves the work.
inline BigMatrix operator*(const BigMatrix &a, const BigMatrix &b) {
    if (a.dim() != b.dim())
        throw Error("matrix dimension mismatch");
    std::size_t n = a.dim();
    BigMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const BigInt &aik = a(i, k);
            if (aik == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                if (b(k, j) != 0)
                    c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

inline std::vector<BigInt> operator*(const BigMatrix &a, const std::vector<BigInt> &x) {
    if (a.dim() != x.size())
        throw Error("matrix/vector dimension mismatch");
    std::vector<BigInt> y(x.size());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t k = 0; k < a.dim(); ++k)
            if (a(i, k) != 0 && x[k] != 0)
                y[i] += a(i, k) * x[k];
    return y;
}

// Exponentiation by squaring.
inline BigMatrix mat_pow(const BigMatrix &m, std::uint64_t e) {
    BigMatrix result = BigMatrix::identity(m.dim());
    BigMatrix base = m;
    bool first = true;
    while (e) {
        if (e & 1) {
            result = first ? base : result * base;
            first = false;
        }
        e >>= 1;
        if (e)
            base = base * base;
    }
    return result;
}

// Caches m^(2^i) so that several exponents share their squarings. Applying
// m^e to a vector costs one matrix-vector product per set bit of e.
class PowerLadder {
public:
    explicit PowerLadder(BigMatrix m) { squares_.push_back(std::move(m)); }

    const BigMatrix &square(std::size_t i) {
        while (squares_.size() <= i)
            squares_.push_back(squares_.back() * squares_.back());
        return squares_[i];
    }

    std::vector<BigInt> apply(std::uint64_t e, std::vector<BigInt> x) {
        for (std::size_t i = 0; e; ++i, e >>= 1)
            if (e & 1)
                x = square(i) * x;
        return x;
    }

    std::size_t squarings() const { return squares_.size() - 1; }

private:
    std::vector<BigMatrix> squares_;
};

// Exact iteration x <- m x over the nonzero entries of m. Cheaper than the
// squaring ladder when m is large and sparse: K mat-vec products against
// log2(K) dense cubes.
class SparseBigIterator {
public:
    explicit SparseBigIterator(const CountMatrix &m) : n_(m.dim()) {
        row_start_.push_back(0);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                if (m(i, j)) {
                    col_.push_back(j);
                    val_.push_back(m(i, j));
                }
            }
            row_start_.push_back(col_.size());
        }
    }

    std::size_t nonzeros() const { return col_.size(); }

    // (m^k x)_0 for every k in ks (ascending).
    std::vector<BigInt> first_coordinate(std::vector<BigInt> x,
                                         const std::vector<std::uint64_t> &ks) const {
        if (x.size() != n_)
            throw Error("matrix/vector dimension mismatch");
        std::vector<BigInt> y(n_), out;
        std::uint64_t step = 0;
        for (std::uint64_t k : ks) {
            if (k < step)
                throw Error("checkpoints must be ascending");
            for (; step < k; ++step) {
                for (std::size_t i = 0; i < n_; ++i) {
                    BigInt &s = y[i];
                    s = 0;
                    for (std::size_t p = row_start_[i]; p < row_start_[i + 1]; ++p)
                        if (val_[p] == 1)
                            s += x[col_[p]];
                        else
                            s += x[col_[p]] * val_[p];
                }
                x.swap(y);
            }
            out.push_back(x[0]);
        }
        return out;
    }

private:
    std::size_t n_;
    std::vector<std::size_t> row_start_, col_;
    std::vector<std::uint64_t> val_;
};

inline std::vector<BigInt> to_big(const std::vector<std::uint64_t> &v) {
    return {v.begin(), v.end()};
}

} // namespace fitscore
