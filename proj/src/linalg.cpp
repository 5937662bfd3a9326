#include "nambu/linalg.hpp"

#include <stdexcept>

namespace nambu {

QVector SpanTracker::reduce(QVector v) const {
    if (v.size() != dim_) throw std::invalid_argument("SpanTracker: dimension mismatch");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Rational& c = v[pivots_[r]];
        if (c.is_zero()) continue;
        Rational factor = c;
        for (std::size_t j = 0; j < dim_; ++j) v[j] -= factor * rows_[r][j];
    }
    return v;
}

bool SpanTracker::insert(QVector v) {
    v = reduce(std::move(v));
    std::size_t piv = dim_;
    for (std::size_t j = 0; j < dim_; ++j) {
        if (!v[j].is_zero()) {
            piv = j;
            break;
        }
    }
    if (piv == dim_) return false;
    Rational lead = v[piv];
    for (std::size_t j = 0; j < dim_; ++j) v[j] /= lead;
    // back-substitute into existing rows to keep reduced form
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        Rational c = rows_[r][piv];
        if (c.is_zero()) continue;
        for (std::size_t j = 0; j < dim_; ++j) rows_[r][j] -= c * v[j];
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
}

bool SpanTracker::contains(const QVector& v) const {
    QVector rem = reduce(v);
    for (const auto& c : rem)
        if (!c.is_zero()) return false;
    return true;
}

std::vector<QVector> nullspace(std::vector<QVector> rows, std::size_t cols) {
    // Gauss-Jordan to reduced echelon form.
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t sel = rank;
        while (sel < rows.size() && rows[sel][col].is_zero()) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        Rational lead = rows[rank][col];
        for (std::size_t j = col; j < cols; ++j) rows[rank][j] /= lead;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank) continue;
            Rational c = rows[r][col];
            if (c.is_zero()) continue;
            for (std::size_t j = col; j < cols; ++j) rows[r][j] -= c * rows[rank][j];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;

    std::vector<QVector> basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        QVector v(cols, Rational(0));
        v[free_col] = Rational(1);
        for (std::size_t r = 0; r < rank; ++r) v[pivot_col[r]] = -rows[r][free_col];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace nambu
