#pragma once

// Isotopism-invariant labels on the projective geometry of the dual codomain:
// points are labelled by the rank of the corresponding slice combination,
// lines by the ranks along the line together with the factor pattern of the
// pencil determinant. Also idealizers and idealizer fingerprints.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "galg/bimap.hpp"
#include "galg/errors.hpp"
#include "galg/gl.hpp"
#include "galg/linalg.hpp"
#include "galg/poly.hpp"

namespace galg {

/// Points and lines of PG(c-1, q) with canonical coordinates.
class ProjectiveSpace {
 public:
  ProjectiveSpace(const Field& f, std::size_t c, bool with_lines = true) : f_(f), c_(c) {
    const std::uint64_t q = f.order();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < c; ++i) {
      total *= q;
      if (total > (1ULL << 26)) throw BudgetExceeded("projective space too large to enumerate");
    }
    index_.assign(total, -1);
    for (std::uint64_t code = 1; code < total; ++code) {
      Vec v = vector_from_index(code, c, q);
      std::size_t lead = 0;
      while (v[lead] == 0) ++lead;
      if (v[lead] != 1) continue;
      index_[code] = static_cast<std::int64_t>(points_.size());
      points_.push_back(std::move(v));
    }
    if (with_lines) build_lines();
  }

  const Field& field() const noexcept { return f_; }
  std::size_t dim() const noexcept { return c_; }
  std::size_t num_points() const noexcept { return points_.size(); }
  std::size_t num_lines() const noexcept { return lines_.size(); }
  const Vec& point(std::size_t i) const { return points_[i]; }
  const Matrix& line_basis(std::size_t i) const { return lines_[i]; }
  const std::vector<std::size_t>& line_points(std::size_t i) const { return line_points_[i]; }

  /// Index of the point spanned by a nonzero vector.
  std::size_t point_index(Vec v) const {
    std::size_t lead = 0;
    while (lead < v.size() && v[lead] == 0) ++lead;
    if (lead == v.size()) throw InvalidInput("zero vector has no projective point");
    const Elem inv = f_.inv(v[lead]);
    std::uint64_t code = 0;
    for (auto& x : v) code = code * f_.order() + f_.mul(x, inv);
    return static_cast<std::size_t>(index_[code]);
  }

  std::size_t line_index(const Matrix& basis) const {
    Subspace s = Subspace::span(basis);
    if (s.dim() != 2) throw InvalidInput("not a line");
    auto it = line_lookup_.find(s.basis().data());
    if (it == line_lookup_.end()) throw InvalidInput("line not found");
    return it->second;
  }

 private:
  void build_lines() {
    const std::uint64_t q = f_.order();
    // Reduced echelon 2 x c matrices with pivots i < j.
    for (std::size_t i = 0; i < c_; ++i)
      for (std::size_t j = i + 1; j < c_; ++j) {
        std::vector<std::size_t> free1, free2;
        for (std::size_t t = i + 1; t < c_; ++t)
          if (t != j) free1.push_back(t);
        for (std::size_t t = j + 1; t < c_; ++t) free2.push_back(t);
        const std::size_t nf = free1.size() + free2.size();
        std::uint64_t count = 1;
        for (std::size_t t = 0; t < nf; ++t) count *= q;
        for (std::uint64_t code = 0; code < count; ++code) {
          Matrix m(f_, 2, c_);
          m(0, i) = 1;
          m(1, j) = 1;
          Vec digits = vector_from_index(code, nf, q);
          for (std::size_t t = 0; t < free1.size(); ++t) m(0, free1[t]) = digits[t];
          for (std::size_t t = 0; t < free2.size(); ++t) m(1, free2[t]) = digits[free1.size() + t];
          std::vector<std::size_t> pts;
          pts.push_back(point_index(m.row(0)));
          for (Elem lam = 0; lam < q; ++lam) {
            Vec v = m.row(1);
            for (std::size_t t = 0; t < c_; ++t) v[t] = f_.add(v[t], f_.mul(lam, m(0, t)));
            pts.push_back(point_index(v));
          }
          line_lookup_[m.data()] = lines_.size();
          lines_.push_back(std::move(m));
          line_points_.push_back(std::move(pts));
        }
      }
  }

  Field f_;
  std::size_t c_;
  std::vector<Vec> points_;
  std::vector<std::int64_t> index_;
  std::vector<Matrix> lines_;
  std::vector<std::vector<std::size_t>> line_points_;
  std::map<std::vector<Elem>, std::size_t> line_lookup_;
};

/// Number of points (q^e - 1)/(q - 1) and lines of PG(e-1, q).
inline std::uint64_t count_points(std::size_t e, std::uint64_t q) {
  std::uint64_t qe = 1;
  for (std::size_t i = 0; i < e; ++i) qe *= q;
  return (qe - 1) / (q - 1);
}

inline std::uint64_t count_lines(std::size_t e, std::uint64_t q) {
  // Gaussian binomial [e choose 2]_q
  if (e < 2) return 0;
  std::uint64_t qe = 1, qe1 = 1;
  for (std::size_t i = 0; i < e; ++i) qe *= q;
  qe1 = qe / q;
  return (qe - 1) * (qe1 - 1) / ((q - 1) * (q * q - 1));
}

struct LineLabel {
  std::vector<int> ranks;                      // sorted, q + 1 entries
  std::optional<std::vector<int>> det_pattern;  // absent for non-square or singular pencils
  std::optional<std::vector<Elem>> det_form;    // least form in the GL(2, q) orbit of det(x A + y B)
  bool operator==(const LineLabel& o) const {
    return ranks == o.ranks && det_pattern == o.det_pattern && det_form == o.det_form;
  }
  bool operator!=(const LineLabel& o) const { return !(*this == o); }
  bool operator<(const LineLabel& o) const {
    if (ranks != o.ranks) return ranks < o.ranks;
    if (det_pattern != o.det_pattern) return det_pattern < o.det_pattern;
    return det_form < o.det_form;
  }
};

inline std::vector<int> vertex_labels(const Bimap& u, const ProjectiveSpace& ps) {
  std::vector<int> out(ps.num_points());
  for (std::size_t i = 0; i < ps.num_points(); ++i) out[i] = static_cast<int>(rank(u.combine(ps.point(i))));
  return out;
}

inline LineLabel line_label(const Bimap& u, const ProjectiveSpace& ps, const std::vector<int>& point_labels,
                            std::size_t line, bool full_forms = true) {
  LineLabel l;
  for (auto p : ps.line_points(line)) l.ranks.push_back(point_labels[p]);
  std::sort(l.ranks.begin(), l.ranks.end());
  if (u.a() == u.b()) {
    const Matrix& b = ps.line_basis(line);
    const Matrix m0 = u.combine(b.row(0)), m1 = u.combine(b.row(1));
    l.det_pattern = pencil_pattern(m0, m1);
    if (full_forms) l.det_form = pencil_form(m0, m1);
  }
  return l;
}

inline std::vector<LineLabel> line_labels(const Bimap& u, const ProjectiveSpace& ps,
                                          const std::vector<int>& point_labels, bool full_forms = true) {
  std::vector<LineLabel> out;
  out.reserve(ps.num_lines());
  for (std::size_t i = 0; i < ps.num_lines(); ++i) out.push_back(line_label(u, ps, point_labels, i, full_forms));
  return out;
}

/// A bimap together with its labelled geometry.
struct LabeledGeometry {
  ProjectiveSpace space;
  std::vector<int> points;
  std::vector<LineLabel> lines;
  bool with_lines = true;

  LabeledGeometry(const Bimap& u, bool lines_too = true, bool full_forms = true)
      : space(u.field(), u.c(), lines_too), points(vertex_labels(u, space)), with_lines(lines_too) {
    if (lines_too) lines = line_labels(u, space, points, full_forms);
  }

  std::map<int, std::size_t> point_histogram() const {
    std::map<int, std::size_t> h;
    for (int r : points) ++h[r];
    return h;
  }
  std::map<LineLabel, std::size_t> line_histogram() const {
    std::map<LineLabel, std::size_t> h;
    for (const auto& l : lines) ++h[l];
    return h;
  }
};

struct CompatibleOptions {
  bool use_lines = true;
  bool pencil_forms = true;  // label lines by the full determinant form, not only its factor pattern
  std::uint64_t node_budget = 100000000;  // backtracking nodes
  std::uint64_t max_results = ~0ULL;
};

/// All g in GL(c, q) with label_V(x) = label_U(x g^T) for every point and
/// line x; these are the codomain maps an isotopism U -> V can have. With
/// U = V this is the label-preserving group. Found by extending g^T one row
/// at a time and checking every point and line as soon as it is determined.
inline std::vector<Matrix> compatible_codomain_maps(const LabeledGeometry& gu, const LabeledGeometry& gv,
                                                    const CompatibleOptions& opt = {}) {
  std::vector<Matrix> out;
  const ProjectiveSpace& ps = gu.space;
  const Field& f = ps.field();
  const std::size_t c = ps.dim();
  if (gu.point_histogram() != gv.point_histogram()) return out;
  const bool lines = opt.use_lines && gu.with_lines && gv.with_lines;
  if (lines && gu.line_histogram() != gv.line_histogram()) return out;
  if (c == 0) {
    out.emplace_back(f, 0, 0);
    return out;
  }
  // Points and lines grouped by the last coordinate they involve.
  std::vector<std::vector<std::size_t>> pts_at(c), lines_at(c);
  for (std::size_t i = 0; i < ps.num_points(); ++i) {
    const Vec& v = ps.point(i);
    std::size_t last = c - 1;
    while (v[last] == 0) --last;
    pts_at[last].push_back(i);
  }
  if (lines) {
    for (std::size_t i = 0; i < ps.num_lines(); ++i) {
      const Matrix& b = ps.line_basis(i);
      std::size_t last = 0;
      for (std::size_t j = 0; j < c; ++j)
        if (b(0, j) || b(1, j)) last = j;
      lines_at[last].push_back(i);
    }
  }
  Matrix h(f, c, c);  // h = g^T; x h is the image of x
  std::uint64_t nodes = 0;
  bool stop = false;
  std::vector<std::size_t> point_image(ps.num_points());
  std::function<void(std::size_t)> rec = [&](std::size_t row) {
    if (row == c) {
      out.push_back(h.transpose());
      if (out.size() >= opt.max_results) stop = true;
      return;
    }
    const std::uint64_t q = f.order();
    std::uint64_t qc = 1;
    for (std::size_t i = 0; i < c; ++i) qc *= q;
    for (std::uint64_t code = 1; code < qc && !stop; ++code) {
      if (++nodes > opt.node_budget) throw BudgetExceeded("label search budget exhausted");
      h.set_row(row, vector_from_index(code, c, q));
      bool ok = true;
      for (std::size_t pi : pts_at[row]) {
        // x h restricted to rows 0..row
        Vec img = vec_mul(ps.point(pi), h);
        if (is_zero_vec(img)) {
          ok = false;
          break;
        }
        const std::size_t target = ps.point_index(img);
        if (gu.points[target] != gv.points[pi]) {
          ok = false;
          break;
        }
        point_image[pi] = target;
      }
      if (ok && lines) {
        for (std::size_t li : lines_at[row]) {
          const std::size_t target = ps.line_index(ps.line_basis(li) * h);
          if (gu.lines[target] != gv.lines[li]) {
            ok = false;
            break;
          }
        }
      }
      if (ok) rec(row + 1);
    }
    for (std::size_t j = 0; j < c; ++j) h(row, j) = 0;
  };
  rec(0);
  return out;
}

/// Label-preserving subgroup of GL(U0) for one bimap.
inline std::vector<Matrix> label_preserving_group(const Bimap& u, const CompatibleOptions& opt = {}) {
  LabeledGeometry g(u, opt.use_lines, opt.pencil_forms);
  return compatible_codomain_maps(g, g, opt);
}

/// Left and right idealizers of a subspace S of U0.
struct Idealizers {
  Subspace lambda;  // {u2 : u2 o U1 <= S}
  Subspace rho;     // {u1 : U2 o u1 <= S}
};

inline Idealizers idealizers(const Bimap& u, const Subspace& s) {
  const Field& f = u.field();
  if (s.ambient_dim() != u.c()) throw DimensionMismatch("subspace of the codomain expected");
  // annihilator of S in the dual
  Subspace ann = right_kernel(s.basis().rows() ? s.basis() : Matrix(f, 0, u.c()));
  std::vector<Matrix> left, right;
  for (std::size_t i = 0; i < ann.dim(); ++i) {
    Matrix m = u.combine(ann.basis().row(i));
    right.push_back(m.transpose());
    left.push_back(std::move(m));
  }
  Idealizers out;
  out.lambda = left.empty() ? Subspace::full(f, u.a()) : left_kernel(Matrix::hstack(left, f, u.a()));
  out.rho = right.empty() ? Subspace::full(f, u.b()) : left_kernel(Matrix::hstack(right, f, u.b()));
  return out;
}

/// Canonical histogram of idealizer dimensions over points of PG(U0) and,
/// for rank_bound >= 2, over unordered pairs of distinct points.
inline std::map<std::vector<int>, std::uint64_t> fingerprint(const Bimap& u, int rank_bound = 2,
                                                             std::uint64_t pair_budget = 5000000) {
  const Field& f = u.field();
  ProjectiveSpace ps(f, u.c(), false);
  std::vector<Idealizers> ids;
  ids.reserve(ps.num_points());
  std::map<std::vector<int>, std::uint64_t> hist;
  for (std::size_t i = 0; i < ps.num_points(); ++i) {
    ids.push_back(idealizers(u, Subspace::span(Matrix::row_vector(f, ps.point(i)))));
    ++hist[{1, static_cast<int>(ids.back().lambda.dim()), static_cast<int>(ids.back().rho.dim())}];
  }
  if (rank_bound >= 2) {
    const std::uint64_t n = ps.num_points();
    if (n * (n - 1) / 2 > pair_budget) throw BudgetExceeded("fingerprint pair budget exceeded");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        std::array<int, 2> a{static_cast<int>(ids[i].lambda.dim()), static_cast<int>(ids[i].rho.dim())};
        std::array<int, 2> b{static_cast<int>(ids[j].lambda.dim()), static_cast<int>(ids[j].rho.dim())};
        if (b < a) std::swap(a, b);
        ++hist[{2, a[0], a[1], b[0], b[1], static_cast<int>(ids[i].lambda.intersect(ids[j].lambda).dim()),
                static_cast<int>(ids[i].rho.intersect(ids[j].rho).dim())}];
      }
  }
  return hist;
}

}  // namespace galg
