#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "fitscore/error.hpp"
#include "fitscore/product.hpp"

namespace fitscore {

class CountMatrix {
public:
    CountMatrix() = default;
    explicit CountMatrix(std::size_t dim) : dim_(dim), a_(dim * dim, 0) {}
    CountMatrix(std::initializer_list<std::initializer_list<std::uint64_t>> rows)
        : CountMatrix(rows.size()) {
        std::size_t i = 0;
        for (const auto &r : rows) {
            if (r.size() != dim_)
                throw Error("count matrix rows must be square");
            std::size_t j = 0;
            for (auto x : r)
                (*this)(i, j++) = x;
            ++i;
        }
    }

    std::size_t dim() const { return dim_; }
    std::uint64_t &operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    std::uint64_t operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }
    bool operator==(const CountMatrix &) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<std::uint64_t> a_;
};

struct RecurrenceSystem {
    CountMatrix xi;
    std::vector<std::uint64_t> v;
    std::vector<std::string> state_names; // state_names[i] is product state i+1

    std::size_t states() const { return state_names.size(); }
};

// D(i, j) = number of transitions j -> i.
inline CountMatrix predecessor_matrix(const ProductAutomaton &p) {
    CountMatrix d(p.size());
    for (const auto &t : p.transitions)
        ++d(t.dst, t.src);
    return d;
}

inline CountMatrix accepting_matrix(const ProductAutomaton &p, const CountMatrix &d) {
    if (d.dim() != p.size())
        throw Error("predecessor matrix does not match the product");
    CountMatrix a(d.dim());
    for (std::size_t i = 0; i < d.dim(); ++i)
        if (p.accepting[i])
            for (std::size_t j = 0; j < d.dim(); ++j)
                a(i, j) = d(i, j);
    return a;
}

// [[0, 1^T, 0^T], [0, D, A], [0, 0, D]]
inline CountMatrix recurrence_matrix(const CountMatrix &d, const CountMatrix &a) {
    if (d.dim() != a.dim())
        throw Error("D and A differ in dimension");
    std::size_t n = d.dim();
    CountMatrix xi(2 * n + 1);
    for (std::size_t j = 0; j < n; ++j)
        xi(0, 1 + j) = 1;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            xi(1 + i, 1 + j) = d(i, j);
            xi(1 + i, 1 + n + j) = a(i, j);
            xi(1 + n + i, 1 + n + j) = d(i, j);
        }
    }
    return xi;
}

// (alpha_empty, alpha_0, beta_0) with alpha_empty = 0.
inline std::vector<std::uint64_t> initial_vector(const ProductAutomaton &p) {
    std::size_t n = p.size();
    std::vector<std::uint64_t> v(2 * n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (p.initial[i]) {
            v[1 + n + i] = 1;
            v[1 + i] = p.accepting[i] ? 1 : 0;
        }
    }
    return v;
}

inline RecurrenceSystem build_recurrence(const ProductAutomaton &p) {
    CountMatrix d = predecessor_matrix(p);
    CountMatrix a = accepting_matrix(p, d);
    return {recurrence_matrix(d, a), initial_vector(p), p.names};
}

inline void dump_matrix(std::ostream &os, const CountMatrix &m) {
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j)
            os << (j ? " " : "") << m(i, j);
        os << '\n';
    }
}

inline void dump(std::ostream &os, const RecurrenceSystem &sys) {
    os << "states:\n";
    for (std::size_t i = 0; i < sys.states(); ++i)
        os << "  " << i + 1 << " " << sys.state_names[i] << '\n';
    os << "xi:\n";
    dump_matrix(os, sys.xi);
    os << "v:\n";
    for (std::size_t i = 0; i < sys.v.size(); ++i)
        os << (i ? " " : "") << sys.v[i];
    os << '\n';
}

} // namespace fitscore
