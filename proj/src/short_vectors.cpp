#include "phf/short_vectors.hpp"

#include <stdexcept>

namespace phf {

namespace {

Integer round_nearest(const Rational& q) { return floor(q + Rational(1, 2)); }

struct Gso {
  std::vector<std::vector<Rational>> mu;
  std::vector<Rational> b;
};

// Gram-Schmidt data from the Gram matrix; false when not positive definite.
bool gso(const QMatrix& g, Gso& out) {
  std::size_t n = g.rows();
  out.mu.assign(n, std::vector<Rational>(n, 0));
  out.b.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Rational s = g(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= out.mu[j][k] * out.mu[i][k] * out.b[k];
      out.mu[i][j] = s / out.b[j];
    }
    Rational s = g(i, i);
    for (std::size_t k = 0; k < i; ++k) s -= out.mu[i][k] * out.mu[i][k] * out.b[k];
    if (sgn(s) <= 0) return false;
    out.b[i] = s;
  }
  return true;
}

}  // namespace

LllResult lll_reduce(const QMatrix& gram) {
  std::size_t n = gram.rows();
  QMatrix g = gram;
  std::vector<std::vector<Integer>> t(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) t[i][i] = 1;
  Gso s;
  if (!gso(g, s)) throw std::domain_error("LLL needs a positive definite Gram matrix");
  const Rational delta(3, 4);
  std::size_t k = 1;
  while (k < n) {
    for (std::size_t jj = k; jj-- > 0;) {
      Integer q = round_nearest(s.mu[k][jj]);
      if (q == 0) continue;
      // b_k -= q b_j
      for (std::size_t c = 0; c < n; ++c) t[k][c] -= q * t[jj][c];
      Rational qq(q);
      for (std::size_t c = 0; c < n; ++c) g(k, c) -= qq * g(jj, c);
      for (std::size_t r = 0; r < n; ++r) g(r, k) -= qq * g(r, jj);
      for (std::size_t c = 0; c < jj; ++c) s.mu[k][c] -= qq * s.mu[jj][c];
      s.mu[k][jj] -= qq;
    }
    if (s.b[k] >= (delta - s.mu[k][k - 1] * s.mu[k][k - 1]) * s.b[k - 1]) {
      ++k;
      continue;
    }
    std::swap(t[k], t[k - 1]);
    for (std::size_t c = 0; c < n; ++c) std::swap(g(k, c), g(k - 1, c));
    for (std::size_t r = 0; r < n; ++r) std::swap(g(r, k), g(r, k - 1));
    gso(g, s);
    k = std::max<std::size_t>(k - 1, 1);
  }
  LllResult out{g, {}};
  for (const auto& row : t) {
    ZVec z;
    for (const auto& e : row) z.push_back(to_int64(e));
    out.transform.push_back(std::move(z));
  }
  return out;
}

ShortVectors::ShortVectors(const QMatrix& gram) : n_(gram.rows()) {
  if (gram.rows() != gram.cols()) throw std::invalid_argument("Gram matrix must be square");
  Gso s;
  if (!gso(gram, s)) {
    positive_definite_ = false;
    return;
  }
  LllResult red = lll_reduce(gram);
  q_ = red.gram.data();
  t_.reserve(n_ * n_);
  for (const auto& row : red.transform) t_.insert(t_.end(), row.begin(), row.end());
  for (std::size_t i = 0; i < n_; ++i) {
    if (sgn(q_[i * n_ + i]) <= 0) {
      positive_definite_ = false;
      return;
    }
    for (std::size_t j = i + 1; j < n_; ++j) {
      q_[j * n_ + i] = q_[i * n_ + j];
      q_[i * n_ + j] /= q_[i * n_ + i];
    }
    for (std::size_t k = i + 1; k < n_; ++k)
      for (std::size_t l = k; l < n_; ++l) q_[k * n_ + l] -= q_[k * n_ + i] * q_[i * n_ + l];
  }
}

void ShortVectors::to_original(const ZVec& v, ZVec& w) const {
  for (std::size_t j = 0; j < n_; ++j) {
    __int128 s = 0;
    for (std::size_t i = 0; i < n_; ++i)
      if (v[i]) s += static_cast<__int128>(v[i]) * t_[i * n_ + j];
    if (s > INT64_MAX || s < INT64_MIN) throw std::overflow_error("short vector coordinate overflow");
    w[j] = static_cast<std::int64_t>(s);
  }
}

std::vector<std::pair<ZVec, Rational>> ShortVectors::collect(const Rational& bound,
                                                             bool up_to_sign) const {
  std::vector<std::pair<ZVec, Rational>> out;
  for_each(bound, [&](const ZVec& v, const Rational& norm) { out.emplace_back(v, norm); },
           up_to_sign);
  return out;
}

bool is_positive_definite(const QMatrix& gram) { return ShortVectors(gram).positive_definite(); }

}  // namespace phf
