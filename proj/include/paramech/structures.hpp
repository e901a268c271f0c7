#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace paramech {

/// Canonical local basis element: F (F^2 = -I), G and H (square to +I),
/// either acting on vectors or, when `dual`, on covectors.
enum class Tag { F, G, H };

struct StructureKind {
  Tag tag = Tag::F;
  bool dual = false;

  friend bool operator==(const StructureKind&, const StructureKind&) = default;
};

inline constexpr std::array<Tag, 3> kAllTags{Tag::F, Tag::G, Tag::H};

[[nodiscard]] inline std::string to_string(Tag tag) {
  switch (tag) {
    case Tag::F: return "F";
    case Tag::G: return "G";
    case Tag::H: return "H";
  }
  return "?";
}

[[nodiscard]] inline std::string to_string(const StructureKind& k) { return to_string(k.tag) + (k.dual ? "*" : ""); }

[[nodiscard]] inline Tag parse_tag(const std::string& s) {
  if (s == "F") return Tag::F;
  if (s == "G") return Tag::G;
  if (s == "H") return Tag::H;
  throw std::invalid_argument("unknown structure '" + s + "' (expected F, G or H)");
}

/// Blocks of R^{4n}: coordinate a = block * n + i (0-based).
enum Block : int { kB0 = 0, kB1 = 1, kB2 = 2, kB3 = 3 };

/// One image rule of a structure table: the basis element of block `from`
/// is sent to `sign` times the basis element of block `to` (same i).
struct BlockRule {
  int from;
  int to;
  int sign;
};

namespace detail {

// Tangent tables: F(d/dx_i) = d/dx_{n+i}, F(d/dx_{n+i}) = -d/dx_i, ...
constexpr std::array<BlockRule, 4> kTableF{{{0, 1, +1}, {1, 0, -1}, {2, 3, +1}, {3, 2, -1}}};
constexpr std::array<BlockRule, 4> kTableG{{{0, 2, +1}, {1, 3, -1}, {2, 0, +1}, {3, 1, -1}}};
constexpr std::array<BlockRule, 4> kTableH{{{0, 3, +1}, {1, 2, +1}, {2, 1, +1}, {3, 0, +1}}};

// Cotangent tables, F*(dx_i) = dx_{n+i}, F*(dx_{n+i}) = -dx_i, ...
constexpr std::array<BlockRule, 4> kTableFDual{{{0, 1, +1}, {1, 0, -1}, {2, 3, +1}, {3, 2, -1}}};
constexpr std::array<BlockRule, 4> kTableGDual{{{0, 2, +1}, {1, 3, -1}, {2, 0, +1}, {3, 1, -1}}};
constexpr std::array<BlockRule, 4> kTableHDual{{{0, 3, +1}, {1, 2, +1}, {2, 1, +1}, {3, 0, +1}}};

}  // namespace detail

[[nodiscard]] inline const std::array<BlockRule, 4>& structure_table(const StructureKind& kind) {
  if (kind.dual) {
    switch (kind.tag) {
      case Tag::F: return detail::kTableFDual;
      case Tag::G: return detail::kTableGDual;
      case Tag::H: return detail::kTableHDual;
    }
  }
  switch (kind.tag) {
    case Tag::F: return detail::kTableF;
    case Tag::G: return detail::kTableG;
    case Tag::H: return detail::kTableH;
  }
  throw std::logic_error("structure_table: bad tag");
}

/// Exact 4n x 4n signed-permutation matrix of F, G, H or a dual. Column a
/// holds the image of the a-th basis (co)vector.
class StructureOperator {
 public:
  StructureOperator(StructureKind kind, std::size_t n, IntMatrix matrix)
      : kind_(kind), n_(n), matrix_(std::move(matrix)) {}

  [[nodiscard]] StructureKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] std::size_t dim() const noexcept { return 4 * n_; }
  [[nodiscard]] const IntMatrix& matrix() const noexcept { return matrix_; }
  [[nodiscard]] int operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }

  /// Image of basis element e_a: (row index, sign).
  [[nodiscard]] std::pair<std::size_t, int> image(std::size_t a) const {
    for (std::size_t r = 0; r < dim(); ++r)
      if (matrix_(r, a) != 0) return {r, matrix_(r, a)};
    throw std::logic_error("StructureOperator: zero column");
  }

  [[nodiscard]] bool is_signed_permutation() const {
    const std::size_t d = dim();
    if (matrix_.rows() != d || matrix_.cols() != d) return false;
    for (std::size_t r = 0; r < d; ++r) {
      int nz_row = 0;
      int nz_col = 0;
      for (std::size_t c = 0; c < d; ++c) {
        const int vr = matrix_(r, c);
        const int vc = matrix_(c, r);
        if (vr != 0 && vr != 1 && vr != -1) return false;
        nz_row += vr != 0;
        nz_col += vc != 0;
      }
      if (nz_row != 1 || nz_col != 1) return false;
    }
    return true;
  }

 private:
  StructureKind kind_;
  std::size_t n_;
  IntMatrix matrix_;
};

[[nodiscard]] inline StructureOperator build_structure(StructureKind kind, std::size_t n) {
  if (n < 1) throw std::invalid_argument("build_structure: n must be >= 1");
  IntMatrix m(4 * n, 4 * n);
  for (const BlockRule& rule : structure_table(kind))
    for (std::size_t i = 0; i < n; ++i) m(rule.to * n + i, rule.from * n + i) = rule.sign;
  return {kind, n, std::move(m)};
}

[[nodiscard]] inline StructureOperator build_structure(Tag tag, std::size_t n, bool dual = false) {
  return build_structure(StructureKind{tag, dual}, n);
}

/// Neutral metric diag(+1 x 2n, -1 x 2n).
class NeutralMetric {
 public:
  explicit NeutralMetric(std::size_t n) : n_(n) {
    if (n < 1) throw std::invalid_argument("NeutralMetric: n must be >= 1");
  }
  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] int weight(std::size_t a) const { return a < 2 * n_ ? 1 : -1; }
  [[nodiscard]] IntMatrix matrix() const {
    IntMatrix g(4 * n_, 4 * n_);
    for (std::size_t a = 0; a < 4 * n_; ++a) g(a, a) = weight(a);
    return g;
  }

 private:
  std::size_t n_;
};

struct RelationCheck {
  std::string name;
  bool holds = false;
};

using RelationReport = std::vector<RelationCheck>;

[[nodiscard]] inline bool all_hold(const RelationReport& report) {
  for (const auto& r : report)
    if (!r.holds) return false;
  return true;
}

/// Checks A^2 = -I, B^2 = C^2 = I, AB = C, BA = -C for supplied operator
/// matrices (composition (AB)(x) = A(B(x))). Exposed so perturbed operators
/// can be audited.
[[nodiscard]] inline RelationReport check_relations(const IntMatrix& f, const IntMatrix& g, const IntMatrix& h,
                                                    const std::string& suffix = "") {
  const IntMatrix id = IntMatrix::identity(f.rows());
  const std::string F = "F" + suffix;
  const std::string G = "G" + suffix;
  const std::string H = "H" + suffix;
  return {
      {F + "^2 = -I", f * f == -id},
      {G + "^2 = I", g * g == id},
      {H + "^2 = I", h * h == id},
      {F + G + " = " + H, f * g == h},
      {G + F + " = -" + H, g * f == -h},
  };
}

/// All relations of the tangent and cotangent bases for a given n.
[[nodiscard]] inline RelationReport verify_relations(std::size_t n) {
  RelationReport report;
  for (bool dual : {false, true}) {
    auto part = check_relations(build_structure(Tag::F, n, dual).matrix(), build_structure(Tag::G, n, dual).matrix(),
                                build_structure(Tag::H, n, dual).matrix(), dual ? "*" : "");
    report.insert(report.end(), part.begin(), part.end());
  }
  return report;
}

/// A^T g A = g for F, = -g for G and H.
[[nodiscard]] inline RelationCheck metric_compatibility(StructureKind kind, std::size_t n) {
  if (kind.dual) throw std::invalid_argument("metric_compatibility: tangent structures only");
  const IntMatrix a = build_structure(kind, n).matrix();
  const IntMatrix g = NeutralMetric(n).matrix();
  const IntMatrix lhs = a.transpose() * g * a;
  const bool holds = kind.tag == Tag::F ? lhs == g : lhs == -g;
  const std::string sign = kind.tag == Tag::F ? "" : "-";
  return {"g(" + to_string(kind.tag) + "X, " + to_string(kind.tag) + "Y) = " + sign + "g(X, Y)", holds};
}

/// Matrix of the fundamental 2-form: Omega[a][b] = g(A e_a, e_b) = (A^T g)[a][b].
[[nodiscard]] inline IntMatrix fundamental_form(StructureKind kind, std::size_t n) {
  if (kind.dual) throw std::invalid_argument("fundamental_form: tangent structures only");
  return build_structure(kind, n).matrix().transpose() * NeutralMetric(n).matrix();
}

}  // namespace paramech
