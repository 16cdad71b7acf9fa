#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lorlab {

/// Dense n x n row-major matrix.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }

  T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

  std::span<T> row(std::size_t i) noexcept { return {data_.data() + i * n_, n_}; }
  std::span<const T> row(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }

  const std::vector<T>& data() const noexcept { return data_; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

/// Relations are stored one byte per entry (0 or 1) so rows can be scanned
/// with byte-wide vector instructions.
using RelationMatrix = SquareMatrix<std::uint8_t>;
using RealMatrix = SquareMatrix<double>;

}  // namespace lorlab
