#pragma once

#include "rht/rational.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rht {

// Sparse matrix over Q. Only nonzero entries are stored.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    void set(std::size_t r, std::size_t c, const Rat& v);
    void add(std::size_t r, std::size_t c, const Rat& v);
    Rat get(std::size_t r, std::size_t c) const;
    std::size_t nnz() const { return entries_.size(); }

    const std::map<std::pair<std::size_t, std::size_t>, Rat>& entries() const { return entries_; }

    SparseMatrix transpose() const;
    SparseMatrix multiply(const SparseMatrix& rhs) const;
    bool is_zero() const { return entries_.empty(); }

    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::map<std::pair<std::size_t, std::size_t>, Rat> entries_;
};

// Rank over Q by fraction-free (Bareiss) elimination on integer-scaled rows.
std::size_t rank(const SparseMatrix& m);

// Basis of ker(m) as sparse column vectors; size() == cols - rank.
std::vector<std::map<std::size_t, Rat>> kernel_basis(const SparseMatrix& m);

// Reduced row echelon form over Q; returns pivot column of each nonzero row.
// `rows` is modified in place.
std::vector<std::size_t> rref(std::vector<std::map<std::size_t, Rat>>& rows, std::size_t cols);

// Solves m * x = b exactly; returns empty optional-like flag via bool.
bool solve(const SparseMatrix& m, const std::map<std::size_t, Rat>& b,
           std::map<std::size_t, Rat>& x);

enum class Reliability { Exact, Boundary };

struct BettiTable {
    std::map<int, std::size_t> dims;
    std::map<int, Reliability> reliability;

    std::size_t at(int deg) const {
        auto it = dims.find(deg);
        return it == dims.end() ? 0 : it->second;
    }
    bool exact_at(int deg) const {
        auto it = reliability.find(deg);
        return it != reliability.end() && it->second == Reliability::Exact;
    }
};

struct NotAComplex : std::runtime_error {
    int degree;
    explicit NotAComplex(int deg)
        : std::runtime_error("composite differential is nonzero at degree " + std::to_string(deg)),
          degree(deg) {}
};

// A degree-windowed slice of a chain complex, homological convention:
// differentials[n] : C_n -> C_{n-1}.
struct ComplexSlice {
    std::map<int, std::size_t> dims;
    std::map<int, SparseMatrix> differentials;
    int deg_min = 0;
    int deg_max = 0;
    // Set when the complex is known to vanish outside the window, so the
    // window edges are honest interior degrees.
    bool complete_below = false;
    bool complete_above = false;

    std::size_t dim(int n) const {
        auto it = dims.find(n);
        return it == dims.end() ? 0 : it->second;
    }
    const SparseMatrix* diff(int n) const {
        auto it = differentials.find(n);
        return it == differentials.end() ? nullptr : &it->second;
    }
};

// dim H_n = dim ker d_n - rank d_{n+1} for each degree in the window.
// Throws NotAComplex if d_n ∘ d_{n+1} != 0 inside the window.
// A degree is Exact only when both adjacent differentials lie in the window.
BettiTable homology_dims(const ComplexSlice& c);

}  // namespace rht
