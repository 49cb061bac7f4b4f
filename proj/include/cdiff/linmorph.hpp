#pragma once

#include <vector>

#include "cdiff/morph.hpp"

namespace cdiff {

// An m x n scalar matrix: the canonical representation of a linear morphism
// R^n -> R^m. As a point of the hom object L(R^n, R^m) it is laid out
// row-major: coordinate (j-1)*n + i holds entry (row j, col i), 1-based.
class LinMorph {
 public:
  LinMorph(int rows, int cols, Flavor flavor);  // zero matrix
  static LinMorph identity(int n, Flavor flavor);
  static LinMorph from_rows(std::vector<std::vector<Scalar>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Flavor flavor() const { return flavor_; }

  const Scalar& at(int row, int col) const;  // 0-based
  void set(int row, int col, Scalar value);

  Morph to_morph() const;
  // Extracts the matrix by probing canonical basis vectors; requires a linear
  // morphism (checked; throws NotLinearError).
  static LinMorph from_morph(const Morph& f, const EqConfig& cfg = {});

  std::vector<Scalar> vec() const;  // row-major layout
  LinMorph times(const LinMorph& other) const;
  LinMorph plus(const LinMorph& other) const;
  LinMorph transposed() const;
  bool operator==(const LinMorph& other) const;

 private:
  int rows_;
  int cols_;
  Flavor flavor_;
  std::vector<Scalar> entries_;
};

// The differential combinator of the biproduct instance of linear maps:
// D[f] = f ∘ pi1, as a morphism R^{2n} -> R^m.
Morph biproduct_diff(const LinMorph& f);

}  // namespace cdiff
