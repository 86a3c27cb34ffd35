#pragma once

#include <vector>

#include "lab/fp.hpp"

namespace lab {

// Dense matrix over F_p with row-reduction utilities.  Rows and columns are
// small throughout (at most a few dozen), so plain Gaussian elimination is
// the right tool.
class FpMat {
public:
    FpMat(int p, int rows, int cols)
        : fp_(p), rows_(rows), cols_(cols),
          a_(static_cast<size_t>(rows), std::vector<int>(static_cast<size_t>(cols), 0)) {
        if (rows < 0 || cols < 0) throw InvalidInput("FpMat: negative shape");
    }

    int p() const { return fp_.p; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int at(int i, int j) const { return a_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    void set(int i, int j, long long v) {
        a_[static_cast<size_t>(i)][static_cast<size_t>(j)] = fp_.reduce(v);
    }

    // In-place reduced row echelon form; returns the pivot columns in order.
    std::vector<int> rref() {
        std::vector<int> pivots;
        int r = 0;
        for (int c = 0; c < cols_ && r < rows_; ++c) {
            int sel = -1;
            for (int i = r; i < rows_; ++i)
                if (at(i, c) != 0) { sel = i; break; }
            if (sel < 0) continue;
            std::swap(a_[static_cast<size_t>(sel)], a_[static_cast<size_t>(r)]);
            int inv = fp_.inv(at(r, c));
            for (int j = c; j < cols_; ++j) set(r, j, fp_.mul(at(r, j), inv));
            for (int i = 0; i < rows_; ++i) {
                if (i == r || at(i, c) == 0) continue;
                int f = at(i, c);
                for (int j = c; j < cols_; ++j)
                    set(i, j, fp_.sub(at(i, j), fp_.mul(f, at(r, j))));
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    int rank() const {
        FpMat m = *this;
        return static_cast<int>(m.rref().size());
    }

    // Basis of the right kernel, one vector per free column, in ascending
    // free-column order.  The vector for free column f has entry 1 at f and
    // nonzero entries otherwise only at pivot columns < f, so its top nonzero
    // index is exactly f.
    std::vector<std::vector<int>> kernel_basis() const {
        FpMat m = *this;
        std::vector<int> pivots = m.rref();
        std::vector<int> pivot_of_col(static_cast<size_t>(cols_), -1);
        for (size_t r = 0; r < pivots.size(); ++r)
            pivot_of_col[static_cast<size_t>(pivots[r])] = static_cast<int>(r);
        std::vector<std::vector<int>> basis;
        for (int f = 0; f < cols_; ++f) {
            if (pivot_of_col[static_cast<size_t>(f)] >= 0) continue;
            std::vector<int> v(static_cast<size_t>(cols_), 0);
            v[static_cast<size_t>(f)] = 1;
            for (int c = 0; c < f; ++c) {
                int r = pivot_of_col[static_cast<size_t>(c)];
                if (r >= 0) v[static_cast<size_t>(c)] = fp_.neg(m.at(r, f));
            }
            basis.push_back(std::move(v));
        }
        return basis;
    }

    std::vector<int> mul_vec(const std::vector<int>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw InvalidInput("FpMat::mul_vec: size mismatch");
        std::vector<int> out(static_cast<size_t>(rows_), 0);
        for (int i = 0; i < rows_; ++i) {
            long long acc = 0;
            for (int j = 0; j < cols_; ++j)
                acc += static_cast<long long>(at(i, j)) * v[static_cast<size_t>(j)];
            out[static_cast<size_t>(i)] = fp_.reduce(acc);
        }
        return out;
    }

private:
    Fp fp_;
    int rows_, cols_;
    std::vector<std::vector<int>> a_;
};

}  // namespace lab
