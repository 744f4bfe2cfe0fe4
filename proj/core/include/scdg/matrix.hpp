#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scdg/errors.hpp"

namespace scdg {

// Dense square matrix, row-major. Cheap value type used for group adjacency
// weights, casted bit matrices and family tag matrices.
template <typename T>
class SquareMatrix {
public:
    SquareMatrix() = default;

    explicit SquareMatrix(std::size_t dim, T fill = T{}) : dim_(dim), cells_(dim * dim, fill) {}

    std::size_t dim() const noexcept { return dim_; }

    T& operator()(std::size_t row, std::size_t col) { return cells_[row * dim_ + col]; }
    const T& operator()(std::size_t row, std::size_t col) const { return cells_[row * dim_ + col]; }

    std::span<T> cells() noexcept { return cells_; }
    std::span<const T> cells() const noexcept { return cells_; }

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<T> cells_;
};

// Throws ShapeError unless both matrices have the same dimension.
template <typename A, typename B>
void require_same_dim(const SquareMatrix<A>& a, const SquareMatrix<B>& b) {
    if (a.dim() != b.dim()) {
        throw ShapeError("matrix dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
    }
}

}  // namespace scdg
