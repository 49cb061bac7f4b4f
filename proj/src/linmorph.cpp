#include "cdiff/linmorph.hpp"

#include "cdiff/error.hpp"

namespace cdiff {

LinMorph::LinMorph(int rows, int cols, Flavor flavor)
    : rows_(rows), cols_(cols), flavor_(flavor) {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix shape");
  entries_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
                  Scalar::zero(flavor));
}

LinMorph LinMorph::identity(int n, Flavor flavor) {
  LinMorph m(n, n, flavor);
  for (int i = 0; i < n; ++i) m.set(i, i, Scalar::one(flavor));
  return m;
}

LinMorph LinMorph::from_rows(std::vector<std::vector<Scalar>> rows) {
  if (rows.empty()) throw DimensionError("from_rows needs at least one row");
  const int m = static_cast<int>(rows.size());
  const int n = static_cast<int>(rows.front().size());
  LinMorph out(m, n, rows.front().empty() ? Flavor::Exact
                                          : rows.front().front().flavor());
  for (int j = 0; j < m; ++j) {
    if (static_cast<int>(rows[static_cast<std::size_t>(j)].size()) != n)
      throw DimensionError("ragged matrix rows");
    for (int i = 0; i < n; ++i)
      out.set(j, i, rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
  }
  return out;
}

const Scalar& LinMorph::at(int row, int col) const {
  return entries_[static_cast<std::size_t>(row) * static_cast<std::size_t>(cols_) +
                  static_cast<std::size_t>(col)];
}

void LinMorph::set(int row, int col, Scalar value) {
  if (value.flavor() != flavor_) throw FlavorError("matrix entry flavor");
  entries_[static_cast<std::size_t>(row) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(col)] = std::move(value);
}

Morph LinMorph::to_morph() const {
  std::vector<Expr> exprs;
  exprs.reserve(static_cast<std::size_t>(rows_));
  for (int j = 0; j < rows_; ++j) {
    Expr sum = Expr::zero(flavor_);
    bool empty = true;
    for (int i = 0; i < cols_; ++i) {
      if (at(j, i).is_zero()) continue;
      Expr term = at(j, i).is_one()
                      ? Expr::var(i + 1, flavor_)
                      : Expr::mul(Expr::constant(at(j, i)),
                                  Expr::var(i + 1, flavor_));
      sum = empty ? term : Expr::add(sum, term);
      empty = false;
    }
    exprs.push_back(sum);
  }
  return Morph({cols_}, {rows_}, flavor_, std::move(exprs));
}

LinMorph LinMorph::from_morph(const Morph& f, const EqConfig& cfg) {
  if (!is_linear(f, cfg))
    throw NotLinearError("matrix extraction from a non-linear morphism");
  const int n = f.dom().dim;
  const int m = f.cod().dim;
  LinMorph out(m, n, f.flavor());
  for (int i = 0; i < n; ++i) {
    std::vector<Scalar> basis(static_cast<std::size_t>(n),
                              Scalar::zero(f.flavor()));
    basis[static_cast<std::size_t>(i)] = Scalar::one(f.flavor());
    std::vector<Scalar> column = f.eval(basis);
    for (int j = 0; j < m; ++j)
      out.set(j, i, column[static_cast<std::size_t>(j)]);
  }
  return out;
}

std::vector<Scalar> LinMorph::vec() const { return entries_; }

LinMorph LinMorph::times(const LinMorph& other) const {
  if (cols_ != other.rows_) throw DimensionError("matrix product shape");
  LinMorph out(rows_, other.cols_, flavor_);
  for (int j = 0; j < rows_; ++j)
    for (int i = 0; i < other.cols_; ++i) {
      Scalar acc = Scalar::zero(flavor_);
      for (int t = 0; t < cols_; ++t) acc = acc + at(j, t) * other.at(t, i);
      out.set(j, i, acc);
    }
  return out;
}

LinMorph LinMorph::plus(const LinMorph& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw DimensionError("matrix sum shape");
  LinMorph out(rows_, cols_, flavor_);
  for (int j = 0; j < rows_; ++j)
    for (int i = 0; i < cols_; ++i) out.set(j, i, at(j, i) + other.at(j, i));
  return out;
}

LinMorph LinMorph::transposed() const {
  LinMorph out(cols_, rows_, flavor_);
  for (int j = 0; j < rows_; ++j)
    for (int i = 0; i < cols_; ++i) out.set(i, j, at(j, i));
  return out;
}

bool LinMorph::operator==(const LinMorph& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_ || flavor_ != other.flavor_)
    return false;
  for (int j = 0; j < rows_; ++j)
    for (int i = 0; i < cols_; ++i)
      if (!(at(j, i) == other.at(j, i))) return false;
  return true;
}

Morph biproduct_diff(const LinMorph& f) {
  const int n = f.cols();
  return compose(f.to_morph(), projection(n, n, 1, f.flavor()));
}

}  // namespace cdiff
