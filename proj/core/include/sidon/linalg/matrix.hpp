#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sidon/error.hpp"
#include "sidon/ff/prime_field.hpp"
#include "sidon/ff/roots.hpp"
#include "sidon/rng.hpp"

namespace sidon::linalg {

/// Dense row-major matrix whose entries live in the field type F.
template <class F>
class FieldMatrix {
 public:
  using Elem = typename F::Elem;

  FieldMatrix() = default;
  FieldMatrix(std::size_t rows, std::size_t cols, Elem fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  FieldMatrix(std::size_t rows, std::size_t cols, std::vector<Elem> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw InputError("matrix data does not match its dimensions");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Elem& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<Elem> column(std::size_t c) const {
    std::vector<Elem> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
    return out;
  }

  const std::vector<Elem>& data() const { return data_; }

  void append_row(std::span<const Elem> values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    if (values.size() != cols_) throw InputError("appended row has the wrong length");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

/// Matrices over the prime field, the common case.
using Matrix = FieldMatrix<ff::PrimeField>;
using Vector = std::vector<ff::Coeff>;

template <class F>
FieldMatrix<F> identity(const F& f, std::size_t n) {
  FieldMatrix<F> m(n, n, f.zero());
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

template <class F>
FieldMatrix<F> transpose(const FieldMatrix<F>& m) {
  if (m.rows() == 0 || m.cols() == 0) return FieldMatrix<F>(m.cols(), m.rows(), std::vector<typename F::Elem>{});
  FieldMatrix<F> t(m.cols(), m.rows(), m(0, 0));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) t(c, r) = m(r, c);
  }
  return t;
}

template <class F>
FieldMatrix<F> multiply(const F& f, const FieldMatrix<F>& a, const FieldMatrix<F>& b) {
  if (a.cols() != b.rows()) throw InputError("matrix product dimension mismatch");
  FieldMatrix<F> out(a.rows(), b.cols(), f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const auto& x = a(i, l);
      if (f.is_zero(x)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(x, b(l, j)));
    }
  }
  return out;
}

template <class F>
std::vector<typename F::Elem> apply(const F& f, const FieldMatrix<F>& a, std::span<const typename F::Elem> v) {
  if (a.cols() != v.size()) throw InputError("matrix-vector dimension mismatch");
  std::vector<typename F::Elem> out(a.rows(), f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto acc = f.zero();
    for (std::size_t j = 0; j < a.cols(); ++j) acc = f.add(acc, f.mul(a(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

template <class F>
FieldMatrix<F> scale(const F& f, const typename F::Elem& s, const FieldMatrix<F>& m) {
  std::vector<typename F::Elem> data;
  data.reserve(m.data().size());
  for (const auto& x : m.data()) data.push_back(f.mul(s, x));
  return FieldMatrix<F>(m.rows(), m.cols(), std::move(data));
}

template <class F>
FieldMatrix<F> add(const F& f, const FieldMatrix<F>& a, const FieldMatrix<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("matrix sum dimension mismatch");
  std::vector<typename F::Elem> data;
  data.reserve(a.data().size());
  for (std::size_t i = 0; i < a.data().size(); ++i) data.push_back(f.add(a.data()[i], b.data()[i]));
  return FieldMatrix<F>(a.rows(), a.cols(), std::move(data));
}

/// Exact Gauss-Jordan elimination. Pivots are the first nonzero entry in
/// each column scan; the stored echelon form is fully reduced (pivots 1, zero
/// above and below).
template <class F>
class GaussianElimination {
 public:
  using Elem = typename F::Elem;

  GaussianElimination(const F& f, FieldMatrix<F> m) : field_(f), original_(m), reduced_(std::move(m)) {
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < reduced_.cols() && pivot_row < reduced_.rows(); ++c) {
      std::size_t r = pivot_row;
      while (r < reduced_.rows() && f.is_zero(reduced_(r, c))) ++r;
      if (r == reduced_.rows()) continue;
      if (r != pivot_row) {
        for (std::size_t j = 0; j < reduced_.cols(); ++j) std::swap(reduced_(r, j), reduced_(pivot_row, j));
      }
      const Elem inv = f.inv(reduced_(pivot_row, c));
      for (std::size_t j = c; j < reduced_.cols(); ++j) reduced_(pivot_row, j) = f.mul(inv, reduced_(pivot_row, j));
      for (std::size_t i = 0; i < reduced_.rows(); ++i) {
        if (i == pivot_row || f.is_zero(reduced_(i, c))) continue;
        const Elem factor = reduced_(i, c);
        for (std::size_t j = c; j < reduced_.cols(); ++j) {
          reduced_(i, j) = f.sub(reduced_(i, j), f.mul(factor, reduced_(pivot_row, j)));
        }
      }
      pivots_.push_back(c);
      ++pivot_row;
    }
  }

  std::size_t rank() const { return pivots_.size(); }
  std::size_t kernel_dim() const { return reduced_.cols() - rank(); }
  const std::vector<std::size_t>& pivot_columns() const { return pivots_; }
  const FieldMatrix<F>& row_echelon() const { return reduced_; }

  /// Right-kernel basis in systematic form: one vector per free column, with
  /// a 1 in that column and zeros in the other free columns.
  std::vector<std::vector<Elem>> kernel_basis() const {
    std::vector<bool> is_pivot(reduced_.cols(), false);
    for (auto c : pivots_) is_pivot[c] = true;
    std::vector<std::vector<Elem>> basis;
    for (std::size_t free = 0; free < reduced_.cols(); ++free) {
      if (is_pivot[free]) continue;
      std::vector<Elem> v(reduced_.cols(), field_.zero());
      v[free] = field_.one();
      for (std::size_t i = 0; i < pivots_.size(); ++i) v[pivots_[i]] = field_.neg(reduced_(i, free));
      basis.push_back(std::move(v));
    }
    return basis;
  }

  /// One solution of M x = rhs, or nullopt when the system is inconsistent.
  std::optional<std::vector<Elem>> solve(std::span<const Elem> rhs) const {
    if (rhs.size() != original_.rows()) throw InputError("solve: right-hand side has the wrong length");
    FieldMatrix<F> augmented(original_.rows(), original_.cols() + 1, field_.zero());
    for (std::size_t r = 0; r < original_.rows(); ++r) {
      for (std::size_t c = 0; c < original_.cols(); ++c) augmented(r, c) = original_(r, c);
      augmented(r, original_.cols()) = rhs[r];
    }
    const GaussianElimination full(field_, std::move(augmented));
    if (!full.pivots_.empty() && full.pivots_.back() == original_.cols()) return std::nullopt;
    std::vector<Elem> x(original_.cols(), field_.zero());
    for (std::size_t i = 0; i < full.pivots_.size(); ++i) x[full.pivots_[i]] = full.reduced_(i, original_.cols());
    return x;
  }

 private:
  F field_;
  FieldMatrix<F> original_;
  FieldMatrix<F> reduced_;
  std::vector<std::size_t> pivots_;
};

template <class F>
std::size_t rank(const F& f, const FieldMatrix<F>& m) {
  return GaussianElimination<F>(f, m).rank();
}

/// Matrix whose rows are the given vectors.
template <class F>
FieldMatrix<F> from_rows(const F& f, const std::vector<std::vector<typename F::Elem>>& rows, std::size_t cols) {
  FieldMatrix<F> m(0, cols, f.zero());
  for (const auto& r : rows) m.append_row(r);
  return m;
}

template <class F>
std::optional<FieldMatrix<F>> inverse(const F& f, const FieldMatrix<F>& m) {
  if (m.rows() != m.cols()) throw InputError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  FieldMatrix<F> augmented(n, 2 * n, f.zero());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) augmented(r, c) = m(r, c);
    augmented(r, n + r) = f.one();
  }
  const GaussianElimination<F> elim(f, std::move(augmented));
  if (elim.rank() < n || elim.pivot_columns()[n - 1] != n - 1) return std::nullopt;
  FieldMatrix<F> inv(n, n, f.zero());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = elim.row_echelon()(r, n + c);
  }
  return inv;
}

/// Uniformly random invertible m x m matrix (rejection sampling).
template <class F>
FieldMatrix<F> random_invertible(const F& f, std::size_t m, SplitMix64& rng) {
  if (m < 1) throw ParameterError("random_invertible: size must be >= 1");
  // Success probability per draw exceeds 0.28, so the cap is never reached
  // in practice.
  for (int trial = 0; trial < 1000; ++trial) {
    FieldMatrix<F> candidate(m, m, f.zero());
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < m; ++c) candidate(r, c) = f.random(rng);
    }
    if (rank(f, candidate) == m) return candidate;
  }
  throw InternalError("random_invertible: trial cap exceeded");
}

template <class F>
FieldMatrix<F> kronecker(const F& f, const FieldMatrix<F>& a, const FieldMatrix<F>& b) {
  FieldMatrix<F> out(a.rows() * b.rows(), a.cols() * b.cols(), f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto& x = a(i, j);
      if (f.is_zero(x)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = f.mul(x, b(k, l));
      }
    }
  }
  return out;
}

/// Number of entries of the upper triangle (diagonal included) of n x n.
inline std::size_t triangle_size(std::size_t n) { return n * (n + 1) / 2; }

/// Position of (i, j), i <= j, in the order (0,0),(0,1),...,(0,n-1),(1,1),...
inline std::size_t triangle_index(std::size_t n, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i + 1) / 2 + j;
}

/// Symmetric n x n matrix from its upper triangle listed row by row.
template <class F>
FieldMatrix<F> matricize(const F& f, std::span<const typename F::Elem> w) {
  std::size_t n = 0;
  while (triangle_size(n) < w.size()) ++n;
  if (triangle_size(n) != w.size()) throw InputError("matricize: length is not a triangular number");
  FieldMatrix<F> m(n, n, f.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      m(i, j) = w[triangle_index(n, i, j)];
      m(j, i) = m(i, j);
    }
  }
  return m;
}

/// Upper triangle of a square matrix, inverse of matricize on symmetric input.
template <class F>
std::vector<typename F::Elem> vectorize_upper(const FieldMatrix<F>& m) {
  if (m.rows() != m.cols()) throw InputError("vectorize_upper: matrix must be square");
  std::vector<typename F::Elem> w;
  w.reserve(triangle_size(m.rows()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i; j < m.cols(); ++j) w.push_back(m(i, j));
  }
  return w;
}

template <class F>
struct RankOne {
  std::vector<typename F::Elem> v;  // first nonzero entry is 1
  typename F::Elem mu;              // S = mu * v^T v
  std::optional<std::vector<typename F::Elem>> w;  // S = w^T w when mu is a square
};

/// Decomposes a symmetric rank-one matrix as mu * v^T v; nullopt when S does
/// not have that shape.
template <class F>
std::optional<RankOne<F>> rank_one_decompose(const F& f, const FieldMatrix<F>& s) {
  if (s.rows() != s.cols() || s.rows() == 0) return std::nullopt;
  const std::size_t n = s.rows();
  std::size_t lead_row = n;
  for (std::size_t r = 0; r < n && lead_row == n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (!f.is_zero(s(r, c))) {
        lead_row = r;
        break;
      }
    }
  }
  if (lead_row == n) return std::nullopt;
  std::size_t lead_col = 0;
  while (f.is_zero(s(lead_row, lead_col))) ++lead_col;
  const auto inv = f.inv(s(lead_row, lead_col));
  RankOne<F> out;
  for (std::size_t c = 0; c < n; ++c) out.v.push_back(f.mul(inv, s(lead_row, c)));
  out.mu = s(lead_col, lead_col);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (s(i, j) != f.mul(out.mu, f.mul(out.v[i], out.v[j]))) return std::nullopt;
    }
  }
  if (auto root = ff::sqrt(f, out.mu)) {
    std::vector<typename F::Elem> w;
    for (const auto& x : out.v) w.push_back(f.mul(*root, x));
    out.w = std::move(w);
  }
  return out;
}

}  // namespace sidon::linalg
