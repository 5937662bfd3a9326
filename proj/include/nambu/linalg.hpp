#pragma once

#include "nambu/rational.hpp"

#include <cstddef>
#include <vector>

namespace nambu {

using QVector = std::vector<Rational>;

/// Incremental row space over the rationals: rows are kept in reduced
/// echelon form, pivot columns normalized to 1.
class SpanTracker {
public:
    explicit SpanTracker(std::size_t dim) : dim_(dim) {}

    std::size_t dimension() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }

    /// Reduces v against the current rows; returns the remainder.
    QVector reduce(QVector v) const;

    /// Adds v to the span. Returns true when v was independent.
    bool insert(QVector v);

    bool contains(const QVector& v) const;

private:
    std::size_t dim_;
    std::vector<QVector> rows_;
    std::vector<std::size_t> pivots_;  // pivot column per row
};

/// Nullspace basis of an m x n rational matrix (rows of length n).
std::vector<QVector> nullspace(std::vector<QVector> rows, std::size_t cols);

}  // namespace nambu
