#pragma once

// Bipolar hyperdimensional computing primitives (MAP-B baseline): random
// generation, bundling, binding, permutation, similarity, and controlled
// bit-flip corruption. All operations are pure functions of their inputs.

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wavehdc/errors.hpp"
#include "wavehdc/rng.hpp"

namespace wavehdc {

// Bipolar N-vector; every component is exactly -1 or +1.
class Hypervector {
 public:
  Hypervector() = default;

  explicit Hypervector(std::vector<std::int8_t> components)
      : components_(std::move(components)) {
    if (components_.size() < 2)
      throw InvalidArgument("Hypervector: dimension must be >= 2");
    for (const auto c : components_)
      if (c != 1 && c != -1)
        throw InvalidArgument("Hypervector: components must be -1 or +1");
  }

  std::size_t dim() const { return components_.size(); }
  std::int8_t operator[](std::size_t i) const { return components_[i]; }
  std::int8_t& operator[](std::size_t i) { return components_[i]; }
  const std::vector<std::int8_t>& components() const { return components_; }

  bool operator==(const Hypervector& other) const = default;

  static Hypervector filled(std::size_t dim, std::int8_t value) {
    Hypervector h;
    h.components_.assign(dim, value);
    return h;
  }

  // Construction path for internal code that guarantees +/-1 entries.
  static Hypervector unchecked(std::vector<std::int8_t> components) {
    Hypervector h;
    h.components_ = std::move(components);
    return h;
  }

 private:
  std::vector<std::int8_t> components_;
};

// Real-valued N-vector for unbinarized bundle sums and recovered estimates.
struct DenseVector {
  std::vector<double> components;

  std::size_t dim() const { return components.size(); }
  double operator[](std::size_t i) const { return components[i]; }

  void check_finite() const {
    for (const double c : components)
      if (!std::isfinite(c)) throw InvalidArgument("DenseVector: non-finite entry");
  }
};

namespace detail {

template <typename A, typename B>
void require_same_dim(const A& a, const B& b, const char* op) {
  if (a.dim() != b.dim())
    throw DimensionMismatch(std::string(op) + ": dimensions differ (" +
                            std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()) + ")");
}

}  // namespace detail

// Deterministic for fixed (seed, dim); each component uniform on {-1, +1}.
inline Hypervector random_hypervector(std::uint64_t seed, std::size_t dim) {
  if (dim < 2) throw InvalidArgument("random_hypervector: dim must be >= 2");
  Rng rng(seed);
  std::vector<std::int8_t> c(dim);
  for (auto& v : c) v = static_cast<std::int8_t>(rng.sign_unit());
  return Hypervector::unchecked(std::move(c));
}

// Componentwise sum; exactly linear, no thresholding.
inline DenseVector bundle(std::span<const Hypervector> vectors) {
  if (vectors.empty()) throw InvalidArgument("bundle: empty input");
  const std::size_t n = vectors.front().dim();
  for (const auto& v : vectors) detail::require_same_dim(vectors.front(), v, "bundle");
  DenseVector out;
  out.components.assign(n, 0.0);
  for (const auto& v : vectors)
    for (std::size_t i = 0; i < n; ++i) out.components[i] += v[i];
  return out;
}

// Sign threshold with ties (zero sums) mapped to +1, deterministically.
inline Hypervector binarize(const DenseVector& v) {
  std::vector<std::int8_t> c(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) c[i] = v[i] >= 0.0 ? 1 : -1;
  return Hypervector::unchecked(std::move(c));
}

inline Hypervector bundle_binarized(std::span<const Hypervector> vectors) {
  return binarize(bundle(vectors));
}

// z_i = x_i * y_i. Self-inverse on bipolar inputs.
inline Hypervector bind(const Hypervector& x, const Hypervector& y) {
  detail::require_same_dim(x, y, "bind");
  std::vector<std::int8_t> c(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i)
    c[i] = static_cast<std::int8_t>(x[i] * y[i]);
  return Hypervector::unchecked(std::move(c));
}

// Cyclic shift: out[n] = x[(n - k) mod N]. Negative k allowed.
inline Hypervector permute(const Hypervector& x, std::int64_t k) {
  const auto n = static_cast<std::int64_t>(x.dim());
  std::int64_t shift = k % n;
  if (shift < 0) shift += n;
  std::vector<std::int8_t> c(x.dim());
  for (std::int64_t i = 0; i < n; ++i) c[(i + shift) % n] = x[i];
  return Hypervector::unchecked(std::move(c));
}

namespace detail {

template <typename A, typename B>
double cosine_impl(const A& a, const B& b) {
  require_same_dim(a, b, "cosine_similarity");
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double ai = a[i], bi = b[i];
    dot += ai * bi;
    na += ai * ai;
    nb += bi * bi;
  }
  if (na == 0.0 || nb == 0.0)
    throw InvalidArgument("cosine_similarity: zero-norm input");
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace detail

inline double cosine_similarity(const Hypervector& a, const Hypervector& b) {
  return detail::cosine_impl(a, b);
}
inline double cosine_similarity(const DenseVector& a, const DenseVector& b) {
  return detail::cosine_impl(a, b);
}
inline double cosine_similarity(const Hypervector& a, const DenseVector& b) {
  return detail::cosine_impl(a, b);
}
inline double cosine_similarity(const DenseVector& a, const Hypervector& b) {
  return detail::cosine_impl(a, b);
}

inline double dot(const Hypervector& a, const Hypervector& b) {
  detail::require_same_dim(a, b, "dot");
  std::int64_t d = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) d += a[i] * b[i];
  return static_cast<double>(d);
}

// 100 * (fraction of equal components). For bipolar pairs this equals
// 50 * (1 + cosine).
inline double sign_accuracy(const Hypervector& a, const Hypervector& b) {
  detail::require_same_dim(a, b, "sign_accuracy");
  std::size_t matches = 0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a[i] == b[i]) ++matches;
  return 100.0 * static_cast<double>(matches) / static_cast<double>(a.dim());
}

// Negates exactly round(p*N) distinct positions chosen uniformly without
// replacement. The exact count makes sweep fractions deterministic per draw.
inline Hypervector bit_flip(const Hypervector& x, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidArgument("bit_flip: p must be in [0, 1]");
  const std::size_t n = x.dim();
  const auto flips = static_cast<std::size_t>(
      std::llround(p * static_cast<double>(n)));
  std::vector<std::int8_t> c(x.components());
  // Partial Fisher-Yates over an index table; first `flips` entries flip.
  std::vector<std::uint32_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i);
  Rng rng(seed);
  for (std::size_t i = 0; i < flips; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
    c[idx[i]] = static_cast<std::int8_t>(-c[idx[i]]);
  }
  return Hypervector::unchecked(std::move(c));
}

}  // namespace wavehdc
