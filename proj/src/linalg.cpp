#include "rht/linalg.hpp"

#include <algorithm>

namespace rht {

void SparseMatrix::set(std::size_t r, std::size_t c, const Rat& v) {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::set");
    if (v == 0)
        entries_.erase({r, c});
    else
        entries_[{r, c}] = v;
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Rat& v) {
    if (v == 0) return;
    if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::add");
    auto key = std::make_pair(r, c);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        entries_[key] = v;
    } else {
        it->second += v;
        if (it->second == 0) entries_.erase(it);
    }
}

Rat SparseMatrix::get(std::size_t r, std::size_t c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? Rat(0) : it->second;
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix t(cols_, rows_);
    for (const auto& [rc, v] : entries_) t.set(rc.second, rc.first, v);
    t.row_labels = col_labels;
    t.col_labels = row_labels;
    return t;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("SparseMatrix::multiply shape mismatch");
    SparseMatrix out(rows_, rhs.cols_);
    // row-major view of rhs
    std::map<std::size_t, std::map<std::size_t, Rat>> rhs_rows;
    for (const auto& [rc, v] : rhs.entries_) rhs_rows[rc.first][rc.second] = v;
    for (const auto& [rc, v] : entries_) {
        auto it = rhs_rows.find(rc.second);
        if (it == rhs_rows.end()) continue;
        for (const auto& [c2, v2] : it->second) out.add(rc.first, c2, v * v2);
    }
    return out;
}

namespace {

using IntRow = std::map<std::size_t, Int>;

// Scales each row to integers; content is irrelevant for rank and pivots.
std::vector<IntRow> integer_rows(const SparseMatrix& m) {
    std::map<std::size_t, IntRow> rows;
    std::map<std::size_t, Int> lcms;
    for (const auto& [rc, v] : m.entries()) {
        auto& l = lcms[rc.first];
        Int d = denominator(v);
        l = (l == 0) ? d : lcm(l, d);
    }
    for (const auto& [rc, v] : m.entries()) {
        const Int& l = lcms[rc.first];
        rows[rc.first][rc.second] = numerator(v) * (l / denominator(v));
    }
    std::vector<IntRow> out;
    out.reserve(rows.size());
    for (auto& [r, row] : rows) out.push_back(std::move(row));
    return out;
}

}  // namespace

std::size_t rank(const SparseMatrix& m) {
    std::vector<IntRow> rows = integer_rows(m);
    Int prev_pivot = 1;
    std::size_t rk = 0;
    std::size_t col_start = 0;
    while (!rows.empty()) {
        // smallest remaining column with a nonzero entry
        std::size_t pivot_col = m.cols();
        std::size_t pivot_row = rows.size();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].empty()) continue;
            std::size_t c = rows[i].begin()->first;
            if (c < pivot_col) {
                pivot_col = c;
                pivot_row = i;
            }
        }
        if (pivot_row == rows.size()) break;
        (void)col_start;
        IntRow pivot = std::move(rows[pivot_row]);
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(pivot_row));
        const Int p = pivot.begin()->second;
        ++rk;
        // Bareiss step: row <- (p*row - row[pivot_col]*pivot) / prev_pivot, exact.
        std::vector<IntRow> next;
        next.reserve(rows.size());
        for (auto& row : rows) {
            auto it = row.find(pivot_col);
            if (it == row.end()) {
                if (prev_pivot != 1)
                    for (auto& [c, v] : row) v = (v * p) / prev_pivot;
                else
                    for (auto& [c, v] : row) v *= p;
                if (!row.empty()) next.push_back(std::move(row));
                continue;
            }
            Int factor = it->second;
            row.erase(it);
            IntRow combined;
            for (const auto& [c, v] : row) combined[c] = v * p;
            for (const auto& [c, v] : pivot) {
                if (c == pivot_col) continue;
                auto& slot = combined[c];
                slot -= factor * v;
                if (slot == 0) combined.erase(c);
            }
            if (prev_pivot != 1)
                for (auto& [c, v] : combined) v /= prev_pivot;
            if (!combined.empty()) next.push_back(std::move(combined));
        }
        rows = std::move(next);
        prev_pivot = p;
    }
    return rk;
}

std::vector<std::size_t> rref(std::vector<std::map<std::size_t, Rat>>& rows, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t next_row = 0;
    for (std::size_t col = 0; col < cols && next_row < rows.size(); ++col) {
        std::size_t sel = rows.size();
        for (std::size_t i = next_row; i < rows.size(); ++i) {
            auto it = rows[i].find(col);
            if (it != rows[i].end() && it->second != 0) {
                sel = i;
                break;
            }
        }
        if (sel == rows.size()) continue;
        std::swap(rows[next_row], rows[sel]);
        Rat inv = Rat(1) / rows[next_row][col];
        for (auto& [c, v] : rows[next_row]) v *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == next_row) continue;
            auto it = rows[i].find(col);
            if (it == rows[i].end()) continue;
            Rat f = it->second;
            for (const auto& [c, v] : rows[next_row]) {
                auto& slot = rows[i][c];
                slot -= f * v;
                if (slot == 0) rows[i].erase(c);
            }
        }
        pivots.push_back(col);
        ++next_row;
    }
    rows.resize(pivots.size());
    return pivots;
}

std::vector<std::map<std::size_t, Rat>> kernel_basis(const SparseMatrix& m) {
    std::vector<std::map<std::size_t, Rat>> rows;
    {
        std::map<std::size_t, std::map<std::size_t, Rat>> by_row;
        for (const auto& [rc, v] : m.entries()) by_row[rc.first][rc.second] = v;
        for (auto& [r, row] : by_row) rows.push_back(std::move(row));
    }
    std::vector<std::size_t> pivots = rref(rows, m.cols());
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : pivots) is_pivot[p] = true;

    std::vector<std::map<std::size_t, Rat>> basis;
    for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        std::map<std::size_t, Rat> vec;
        vec[free_col] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            auto it = rows[i].find(free_col);
            if (it != rows[i].end()) vec[pivots[i]] = -it->second;
        }
        basis.push_back(std::move(vec));
    }
    return basis;
}

bool solve(const SparseMatrix& m, const std::map<std::size_t, Rat>& b,
           std::map<std::size_t, Rat>& x) {
    // augmented system, rhs in column m.cols()
    std::vector<std::map<std::size_t, Rat>> rows;
    {
        std::map<std::size_t, std::map<std::size_t, Rat>> by_row;
        for (const auto& [rc, v] : m.entries()) by_row[rc.first][rc.second] = v;
        for (const auto& [r, v] : b)
            if (v != 0) by_row[r][m.cols()] = v;
        for (auto& [r, row] : by_row) rows.push_back(std::move(row));
    }
    std::vector<std::size_t> pivots = rref(rows, m.cols() + 1);
    x.clear();
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == m.cols()) return false;  // inconsistent
        auto it = rows[i].find(m.cols());
        if (it != rows[i].end()) x[pivots[i]] = it->second;
    }
    return true;
}

BettiTable homology_dims(const ComplexSlice& c) {
    // validate d∘d = 0 wherever both composable differentials exist
    for (const auto& [n, dn] : c.differentials) {
        const SparseMatrix* up = c.diff(n + 1);
        if (!up) continue;
        if (dn.cols() != up->rows()) throw std::invalid_argument("ComplexSlice: shape mismatch");
        if (!dn.multiply(*up).is_zero()) throw NotAComplex(n);
    }
    BettiTable out;
    for (int n = c.deg_min; n <= c.deg_max; ++n) {
        std::size_t dim_n = c.dim(n);
        const SparseMatrix* dn = c.diff(n);
        const SparseMatrix* dn1 = c.diff(n + 1);
        std::size_t rank_out = dn ? rank(*dn) : 0;
        std::size_t rank_in = dn1 ? rank(*dn1) : 0;
        out.dims[n] = dim_n - rank_out - rank_in;
        bool below_ok = (n > c.deg_min) || c.complete_below;
        bool above_ok = (n < c.deg_max) || c.complete_above;
        out.reliability[n] =
            (below_ok && above_ok) ? Reliability::Exact : Reliability::Boundary;
    }
    return out;
}

}  // namespace rht
