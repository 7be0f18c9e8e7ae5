#include "tvlab/torsion_coset.hpp"

#include <json.hpp>
#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tvlab {

using nlohmann::json;

namespace {

bool mat_equal(const IntMat& a, const IntMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

bool mat_less(const IntMat& a, const IntMat& b) {
  if (a.rows() != b.rows()) return a.rows() < b.rows();
  if (a.cols() != b.cols()) return a.cols() < b.cols();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
  return false;
}

RootOfUnity character_value(const IntMat& lattice, Eigen::Index row, const TorusPoint& p) {
  RootOfUnity s;
  for (Eigen::Index j = 0; j < lattice.cols(); ++j)
    s = s + p[static_cast<int>(j)].times(lattice(row, j));
  return s;
}

std::vector<RootOfUnity> character_values_of(const IntMat& lattice, const TorusPoint& p) {
  std::vector<RootOfUnity> out;
  out.reserve(static_cast<size_t>(lattice.rows()));
  for (Eigen::Index i = 0; i < lattice.rows(); ++i)
    out.push_back(character_value(lattice, i, p));
  return out;
}

}  // namespace

TorsionCoset TorsionCoset::make(int n, const IntMat& lattice_rows, const TorusPoint& shift) {
  if (n < 1) throw std::invalid_argument("TorsionCoset: ambient rank must be >= 1");
  if (shift.dim() != n) throw std::invalid_argument("TorsionCoset: shift dimension mismatch");
  if (lattice_rows.cols() != n && lattice_rows.rows() != 0)
    throw std::invalid_argument("TorsionCoset: lattice column mismatch");
  TorsionCoset c;
  c.n = n;
  c.lattice = lattice_rows.rows() == 0 ? int_zero(0, n) : hermite_normal_form(lattice_rows);
  c.shift = shift;
  return c;
}

TorsionCoset TorsionCoset::subtorus(int n, const IntMat& lattice_rows) {
  return make(n, lattice_rows, TorusPoint::identity(n));
}

TorsionCoset TorsionCoset::point(const TorusPoint& p) {
  return make(p.dim(), int_identity(p.dim()), p);
}

bool TorsionCoset::contains(const TorusPoint& p) const {
  if (p.dim() != n) return false;
  for (Eigen::Index i = 0; i < lattice.rows(); ++i)
    if (character_value(lattice, i, p) != character_value(lattice, i, shift)) return false;
  return true;
}

std::vector<RootOfUnity> TorsionCoset::character_values() const {
  return character_values_of(lattice, shift);
}

bool TorsionCoset::same_coset(const TorsionCoset& o) const {
  return n == o.n && mat_equal(lattice, o.lattice) &&
         character_values() == o.character_values();
}

bool TorsionCoset::contains_coset(const TorsionCoset& o) const {
  if (n != o.n) return false;
  // T_{L_o} subset of T_{L} iff L subset of L_o.
  for (Eigen::Index i = 0; i < lattice.rows(); ++i) {
    IntVec row(n);
    for (Eigen::Index j = 0; j < n; ++j) row(j) = lattice(i, j);
    if (!hnf_contains(o.lattice, row)) return false;
  }
  TorusPoint diff = o.shift - shift;
  for (Eigen::Index i = 0; i < lattice.rows(); ++i)
    if (!character_value(lattice, i, diff).is_one()) return false;
  return true;
}

bool TorsionCoset::is_finite() const { return lattice.rows() == n; }

Int TorsionCoset::point_count() const {
  if (!is_finite()) throw std::domain_error("TorsionCoset: infinite coset");
  Int d = 1;
  for (Eigen::Index i = 0; i < lattice.rows(); ++i) d *= lattice(i, i);
  return abs(d);
}

std::vector<TorusPoint> TorsionCoset::points(const Int& budget) const {
  if (!is_finite()) throw std::domain_error("TorsionCoset::points: infinite coset");
  if (point_count() > budget) throw std::domain_error("TorsionCoset::points: over budget");
  SmithForm s = smith_normal_form(lattice);
  std::vector<Int> diag;
  for (Eigen::Index i = 0; i < n; ++i) diag.push_back(s.d(i, i));
  std::vector<TorusPoint> out;
  std::vector<Int> idx(static_cast<size_t>(n), Int(0));
  while (true) {
    // x = V y with y_i = idx_i / d_i.
    std::vector<RootOfUnity> coords;
    coords.reserve(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      RootOfUnity c;
      for (Eigen::Index j = 0; j < n; ++j)
        c = c + RootOfUnity(s.v(i, j) * idx[static_cast<size_t>(j)], diag[static_cast<size_t>(j)]);
      coords.push_back(c);
    }
    out.push_back(TorusPoint(std::move(coords)) + shift);
    Eigen::Index pos = 0;
    while (pos < n) {
      ++idx[static_cast<size_t>(pos)];
      if (idx[static_cast<size_t>(pos)] < diag[static_cast<size_t>(pos)]) break;
      idx[static_cast<size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TorsionCoset TorsionCoset::translated(const TorusPoint& t) const {
  return make(n, lattice, shift + t);
}

std::string TorsionCoset::to_string() const {
  std::ostringstream os;
  os << "coset(n=" << n << ", lattice=[";
  for (Eigen::Index i = 0; i < lattice.rows(); ++i) {
    if (i) os << ";";
    for (Eigen::Index j = 0; j < lattice.cols(); ++j) {
      if (j) os << ",";
      os << lattice(i, j).get_str();
    }
  }
  os << "], shift=" << shift.to_string() << ")";
  return os.str();
}

TorsionCoset TorsionCoset::from_json_text(const std::string& text) {
  json j = json::parse(text);
  int n = j.at("n").get<int>();
  const auto& lat = j.at("lattice");
  IntMat rows = int_zero(static_cast<Eigen::Index>(lat.size()), n);
  for (size_t i = 0; i < lat.size(); ++i) {
    if (lat[i].size() != static_cast<size_t>(n))
      throw std::invalid_argument("coset JSON: lattice row length mismatch");
    for (size_t k = 0; k < lat[i].size(); ++k)
      rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          Int(lat[i][k].get<long>());
  }
  std::vector<RootOfUnity> shift;
  for (const auto& s : j.at("shift")) shift.push_back(RootOfUnity::parse(s.get<std::string>()));
  if (shift.size() != static_cast<size_t>(n))
    throw std::invalid_argument("coset JSON: shift length mismatch");
  return make(n, rows, TorusPoint(std::move(shift)));
}

std::string TorsionCoset::to_json_text() const {
  json j;
  j["n"] = n;
  j["lattice"] = json::array();
  for (Eigen::Index i = 0; i < lattice.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < lattice.cols(); ++k) row.push_back(to_long(lattice(i, k)));
    j["lattice"].push_back(row);
  }
  j["shift"] = json::array();
  for (const auto& s : shift.coords()) j["shift"].push_back(s.to_string());
  return j.dump();
}

// ---------------------------------------------------------------------------

TorsionSubscheme::TorsionSubscheme(std::vector<TorsionCoset> cosets) : c_(std::move(cosets)) {
  if (!c_.empty()) {
    n_ = c_[0].n;
    for (const auto& c : c_)
      if (c.n != n_) throw std::invalid_argument("TorsionSubscheme: mixed ambients");
  }
  canonicalize();
}

TorsionSubscheme TorsionSubscheme::empty(int n) {
  TorsionSubscheme z;
  z.n_ = n;
  return z;
}

TorsionSubscheme TorsionSubscheme::single(const TorsionCoset& c) {
  return TorsionSubscheme(std::vector<TorsionCoset>{c});
}

bool TorsionSubscheme::contains(const TorusPoint& p) const {
  for (const auto& c : c_)
    if (c.contains(p)) return true;
  return false;
}

bool TorsionSubscheme::contains_coset(const TorsionCoset& c) const {
  for (const auto& mine : c_)
    if (mine.contains_coset(c)) return true;
  if (c.is_finite() && c.point_count() <= 100000) {
    for (const auto& p : c.points())
      if (!contains(p)) return false;
    return true;
  }
  throw std::logic_error("TorsionSubscheme: coset containment undecided");
}

bool TorsionSubscheme::contains_subscheme(const TorsionSubscheme& o) const {
  for (const auto& c : o.c_)
    if (!contains_coset(c)) return false;
  return true;
}

bool TorsionSubscheme::set_equal(const TorsionSubscheme& o) const {
  if (c_.size() == o.c_.size()) {
    bool same = true;
    for (size_t i = 0; i < c_.size() && same; ++i) same = c_[i].same_coset(o.c_[i]);
    if (same) return true;
  }
  return contains_subscheme(o) && o.contains_subscheme(*this);
}

TorsionSubscheme TorsionSubscheme::translated(const TorusPoint& t) const {
  std::vector<TorsionCoset> v;
  v.reserve(c_.size());
  for (const auto& c : c_) v.push_back(c.translated(t));
  TorsionSubscheme z(std::move(v));
  z.n_ = n_;
  return z;
}

std::string TorsionSubscheme::to_string() const {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << " u ";
    os << c_[i].to_string();
  }
  os << "}";
  return os.str();
}

TorsionSubscheme TorsionSubscheme::from_json_text(const std::string& text) {
  json j = json::parse(text);
  std::vector<TorsionCoset> cs;
  for (const auto& c : j) cs.push_back(TorsionCoset::from_json_text(c.dump()));
  return TorsionSubscheme(std::move(cs));
}

std::string TorsionSubscheme::to_json_text() const {
  json j = json::array();
  for (const auto& c : c_) j.push_back(json::parse(c.to_json_text()));
  return j.dump();
}

namespace {

bool coset_less(const TorsionCoset& a, const TorsionCoset& b) {
  if (!mat_equal(a.lattice, b.lattice)) return mat_less(a.lattice, b.lattice);
  auto va = a.character_values(), vb = b.character_values();
  for (size_t i = 0; i < va.size(); ++i)
    if (va[i] != vb[i]) return va[i] < vb[i];
  return false;
}

std::string char_key(const std::vector<RootOfUnity>& vals) {
  std::string k;
  for (const auto& v : vals) k += v.to_string() + "|";
  return k;
}

// Lattice of integer coefficient rows c with c * (L * delta_j) integral for
// all j; returns the sublattice C*L of L annihilating the given classes.
IntMat annihilator_sublattice(const IntMat& lattice, const std::vector<TorusPoint>& deltas) {
  const Eigen::Index r = lattice.rows();
  std::vector<std::vector<Rat>> w;
  for (const auto& d : deltas) {
    std::vector<Rat> row;
    for (Eigen::Index i = 0; i < r; ++i) {
      RootOfUnity v = character_value(lattice, i, d);
      Rat q(v.num(), v.den());
      q.canonicalize();
      row.push_back(q);
    }
    w.push_back(std::move(row));
  }
  const Eigen::Index jn = static_cast<Eigen::Index>(deltas.size());
  IntMat sys = int_zero(jn, r + jn);
  for (Eigen::Index j = 0; j < jn; ++j) {
    Int den = 1;
    for (const Rat& q : w[static_cast<size_t>(j)]) den = int_lcm(den, q.get_den());
    for (Eigen::Index i = 0; i < r; ++i) {
      Rat scaled = w[static_cast<size_t>(j)][static_cast<size_t>(i)] * Rat(den);
      scaled.canonicalize();
      sys(j, i) = scaled.get_num();
    }
    sys(j, r + j) = den;
  }
  IntMat k = kernel_basis(sys);  // columns (c ; t)
  IntMat c_rows = int_zero(k.cols(), r);
  for (Eigen::Index col = 0; col < k.cols(); ++col)
    for (Eigen::Index i = 0; i < r; ++i) c_rows(col, i) = k(i, col);
  IntMat c_h = hermite_normal_form(c_rows);
  return hermite_normal_form(c_h * lattice);
}

}  // namespace

void TorsionSubscheme::canonicalize() {
  for (int round = 0; round < 32; ++round) {
    // Dedupe.
    std::vector<TorsionCoset> kept;
    for (const auto& c : c_) {
      bool dup = false;
      for (const auto& k : kept) dup = dup || k.same_coset(c);
      if (!dup) kept.push_back(c);
    }
    // Remove cosets contained in another.
    std::vector<TorsionCoset> pruned;
    for (size_t i = 0; i < kept.size(); ++i) {
      bool covered = false;
      for (size_t j = 0; j < kept.size() && !covered; ++j)
        covered = i != j && !kept[j].same_coset(kept[i]) && kept[j].contains_coset(kept[i]);
      if (!covered) pruned.push_back(kept[i]);
    }
    // Merge groups of parallel cosets that tile a coset of a larger subtorus.
    bool merged = false;
    std::vector<TorsionCoset> out;
    std::vector<bool> used(pruned.size(), false);
    for (size_t i = 0; i < pruned.size(); ++i) {
      if (used[i]) continue;
      std::vector<size_t> group{i};
      for (size_t j = i + 1; j < pruned.size(); ++j)
        if (!used[j] && mat_equal(pruned[i].lattice, pruned[j].lattice)) group.push_back(j);
      if (group.size() < 2) {
        out.push_back(pruned[i]);
        continue;
      }
      // Closure of the difference classes under addition.
      const TorusPoint& base = pruned[group[0]].shift;
      std::vector<TorusPoint> deltas;
      std::set<std::string> class_keys;
      for (size_t g : group) {
        TorusPoint d = pruned[g].shift - base;
        deltas.push_back(d);
        class_keys.insert(char_key(character_values_of(pruned[i].lattice, d)));
      }
      std::vector<TorusPoint> closure = deltas;
      std::set<std::string> closure_keys = class_keys;
      bool grew = true;
      while (grew && closure.size() <= 4096) {
        grew = false;
        size_t sz = closure.size();
        for (size_t a = 0; a < sz && !grew; ++a)
          for (size_t b = 0; b < sz && !grew; ++b) {
            TorusPoint s = closure[a] + closure[b];
            std::string key = char_key(character_values_of(pruned[i].lattice, s));
            if (!closure_keys.count(key)) {
              closure.push_back(s);
              closure_keys.insert(key);
              grew = true;
            }
          }
      }
      if (closure_keys.size() != group.size() || closure_keys != class_keys) {
        for (size_t g : group) {
          out.push_back(pruned[g]);
          used[g] = true;
        }
        continue;
      }
      IntMat bigger = annihilator_sublattice(pruned[i].lattice, deltas);
      // The merge is valid iff the index matches the class count.
      SmithForm sl = smith_normal_form(pruned[i].lattice);
      SmithForm sb = smith_normal_form(bigger);
      Int idx_l = 1, idx_b = 1;
      for (Eigen::Index t = 0; t < sl.rank(); ++t) idx_l *= sl.d(t, t);
      for (Eigen::Index t = 0; t < sb.rank(); ++t) idx_b *= sb.d(t, t);
      bool ok = sb.rank() == sl.rank() && idx_l != 0 && idx_b % idx_l == 0 &&
                idx_b / idx_l == Int(static_cast<long>(group.size()));
      if (ok) {
        TorsionCoset m = TorsionCoset::make(n_, bigger, base);
        for (size_t g : group) ok = ok && m.contains_coset(pruned[g]);
      }
      if (!ok) {
        for (size_t g : group) {
          out.push_back(pruned[g]);
          used[g] = true;
        }
        continue;
      }
      out.push_back(TorsionCoset::make(n_, bigger, base));
      for (size_t g : group) used[g] = true;
      merged = true;
    }
    bool stable = !merged && out.size() == c_.size();
    c_ = std::move(out);
    if (stable) break;
  }
  std::sort(c_.begin(), c_.end(), coset_less);
}

// ---------------------------------------------------------------------------

std::optional<TorsionCoset> coset_intersect(const TorsionCoset& a, const TorsionCoset& b) {
  if (a.n != b.n) throw std::invalid_argument("coset_intersect: ambient mismatch");
  const Eigen::Index ra = a.lattice.rows(), rb = b.lattice.rows();
  const Eigen::Index n = a.n;
  IntMat stacked = int_zero(ra + rb, n);
  std::vector<Rat> target;
  for (Eigen::Index i = 0; i < ra; ++i) {
    stacked.row(i) = a.lattice.row(i);
    RootOfUnity v = character_value(a.lattice, i, a.shift);
    Rat q(v.num(), v.den());
    q.canonicalize();
    target.push_back(q);
  }
  for (Eigen::Index i = 0; i < rb; ++i) {
    stacked.row(ra + i) = b.lattice.row(i);
    RootOfUnity v = character_value(b.lattice, i, b.shift);
    Rat q(v.num(), v.den());
    q.canonicalize();
    target.push_back(q);
  }
  SmithForm s = smith_normal_form(stacked);
  const Eigen::Index rows = ra + rb;
  const Eigen::Index rank = s.rank();
  std::vector<Rat> c(static_cast<size_t>(rows), Rat(0));
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < rows; ++j) c[static_cast<size_t>(i)] += Rat(s.u(i, j)) * target[static_cast<size_t>(j)];
    c[static_cast<size_t>(i)].canonicalize();
  }
  // Rows beyond the rank demand integral targets; otherwise no solution.
  for (Eigen::Index i = rank; i < rows; ++i)
    if (c[static_cast<size_t>(i)].get_den() != 1) return std::nullopt;
  std::vector<Rat> y(static_cast<size_t>(n), Rat(0));
  for (Eigen::Index i = 0; i < rank; ++i) {
    y[static_cast<size_t>(i)] = c[static_cast<size_t>(i)] / Rat(s.d(i, i));
    y[static_cast<size_t>(i)].canonicalize();
  }
  std::vector<RootOfUnity> coords;
  coords.reserve(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    Rat acc(0);
    for (Eigen::Index j = 0; j < n; ++j) acc += Rat(s.v(i, j)) * y[static_cast<size_t>(j)];
    acc.canonicalize();
    coords.push_back(RootOfUnity(acc.get_num(), acc.get_den()));
  }
  return TorsionCoset::make(a.n, stacked, TorusPoint(std::move(coords)));
}

TorsionSubscheme subscheme_intersect(const TorsionSubscheme& a, const TorsionSubscheme& b) {
  std::vector<TorsionCoset> out;
  for (const auto& ca : a.cosets())
    for (const auto& cb : b.cosets()) {
      auto c = coset_intersect(ca, cb);
      if (c) out.push_back(*c);
    }
  if (out.empty()) return TorsionSubscheme::empty(a.ambient());
  return TorsionSubscheme(std::move(out));
}

TorsionSubscheme subscheme_union(const TorsionSubscheme& a, const TorsionSubscheme& b) {
  std::vector<TorsionCoset> out = a.cosets();
  out.insert(out.end(), b.cosets().begin(), b.cosets().end());
  if (out.empty()) return TorsionSubscheme::empty(a.ambient());
  return TorsionSubscheme(std::move(out));
}

TorsionCoset monomial_image(const IntMat& b, const TorsionCoset& c) {
  if (b.cols() != c.n) throw std::invalid_argument("monomial_image: shape mismatch");
  const Eigen::Index m = b.rows(), r = c.lattice.rows();
  // mu in Z^m with mu B in rowspan(L): kernel of [B^T | -L^T].
  IntMat sys = int_zero(c.n, m + r);
  for (Eigen::Index i = 0; i < c.n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) sys(i, j) = b(j, i);
    for (Eigen::Index j = 0; j < r; ++j) sys(i, m + j) = -c.lattice(j, i);
  }
  IntMat k = kernel_basis(sys);
  IntMat rows = int_zero(k.cols(), m);
  for (Eigen::Index col = 0; col < k.cols(); ++col)
    for (Eigen::Index i = 0; i < m; ++i) rows(col, i) = k(i, col);
  return TorsionCoset::make(static_cast<int>(m), rows, c.shift.apply_matrix(b));
}

TorsionSubscheme monomial_image(const IntMat& b, const TorsionSubscheme& z) {
  std::vector<TorsionCoset> out;
  for (const auto& c : z.cosets()) out.push_back(monomial_image(b, c));
  if (out.empty()) return TorsionSubscheme::empty(static_cast<int>(b.rows()));
  return TorsionSubscheme(std::move(out));
}

TorsionCoset monomial_preimage(const IntMat& b, const TorsionCoset& c) {
  if (b.rows() != b.cols() || b.rows() != c.n)
    throw std::invalid_argument("monomial_preimage: isogeny matrix must be square");
  if (determinant(b) == 0)
    throw std::invalid_argument("monomial_preimage: singular monomial map");
  IntMat pre = c.lattice.rows() == 0 ? int_zero(0, c.n) : IntMat(c.lattice * b);
  std::vector<Rat> rhs;
  for (const auto& s : c.shift.coords()) {
    Rat q(s.num(), s.den());
    q.canonicalize();
    rhs.push_back(q);
  }
  std::vector<Rat> x = solve_rational(b, rhs);
  std::vector<RootOfUnity> coords;
  for (const Rat& q : x) coords.push_back(RootOfUnity(q.get_num(), q.get_den()));
  return TorsionCoset::make(c.n, pre, TorusPoint(std::move(coords)));
}

TorsionSubscheme monomial_preimage(const IntMat& b, const TorsionSubscheme& z) {
  std::vector<TorsionCoset> out;
  for (const auto& c : z.cosets()) out.push_back(monomial_preimage(b, c));
  if (out.empty()) return TorsionSubscheme::empty(z.ambient());
  return TorsionSubscheme(std::move(out));
}

TorsionSubscheme multiple_image(const Int& n_mult, const TorsionSubscheme& z) {
  if (n_mult < 1) throw std::invalid_argument("multiple_image: N must be >= 1");
  IntMat b = int_identity(z.ambient());
  for (Eigen::Index i = 0; i < b.rows(); ++i) b(i, i) = n_mult;
  return monomial_image(b, z);
}

IntMat quotient_map(const IntMat& lattice_rows) { return hermite_normal_form(lattice_rows); }

namespace {

IntMat lattice_intersection(const IntMat& a_rows, const IntMat& b_rows) {
  // {lambda : lambda = x A = y B}: kernel of [A^T | -B^T], projected through A.
  const Eigen::Index ra = a_rows.rows(), rb = b_rows.rows(), n = a_rows.cols();
  if (ra == 0 || rb == 0) return int_zero(0, n);
  IntMat sys = int_zero(n, ra + rb);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < ra; ++j) sys(i, j) = a_rows(j, i);
    for (Eigen::Index j = 0; j < rb; ++j) sys(i, ra + j) = -b_rows(j, i);
  }
  IntMat k = kernel_basis(sys);
  IntMat coeff = int_zero(k.cols(), ra);
  for (Eigen::Index col = 0; col < k.cols(); ++col)
    for (Eigen::Index j = 0; j < ra; ++j) coeff(col, j) = k(j, col);
  return hermite_normal_form(coeff * a_rows);
}

}  // namespace

TorsionSubscheme stabilizer(const TorsionSubscheme& z) {
  if (z.is_empty()) throw std::invalid_argument("stabilizer: empty subscheme");
  const int n = z.ambient();
  // Group components by lattice.
  std::vector<std::vector<TorsionCoset>> groups;
  for (const auto& c : z.cosets()) {
    bool placed = false;
    for (auto& g : groups)
      if (mat_equal(g[0].lattice, c.lattice)) {
        g.push_back(c);
        placed = true;
        break;
      }
    if (!placed) groups.push_back({c});
  }
  std::optional<TorsionSubscheme> result;
  for (const auto& g : groups) {
    std::set<std::string> classes;
    for (const auto& c : g) classes.insert(char_key(c.character_values()));
    std::vector<TorsionCoset> valid;
    for (const auto& cand : g) {
      TorusPoint delta = cand.shift - g[0].shift;
      bool perm = true;
      for (const auto& c : g) {
        TorusPoint moved = c.shift + delta;
        perm = perm && classes.count(char_key(character_values_of(c.lattice, moved))) > 0;
      }
      if (perm) valid.push_back(TorsionCoset::make(n, g[0].lattice, delta));
    }
    TorsionSubscheme st(valid);
    result = result ? subscheme_intersect(*result, st) : st;
  }
  // Internal check: the translation set must be a group.
  const auto& comps = result->cosets();
  for (const auto& a : comps) {
    if (!result->contains_coset(TorsionCoset::make(n, a.lattice, -a.shift)))
      throw std::logic_error("stabilizer: set not closed under inversion");
    for (const auto& b : comps) {
      IntMat sum_lattice = lattice_intersection(a.lattice, b.lattice);
      if (!result->contains_coset(TorsionCoset::make(n, sum_lattice, a.shift + b.shift)))
        throw std::logic_error("stabilizer: set not closed under addition");
    }
  }
  return *result;
}

CompanionData CompanionData::make(const IntPolynomial& f, int n) {
  if (!f.is_monic() || f.degree() < 1)
    throw std::invalid_argument("CompanionData: F must be monic of degree >= 1");
  const long d = f.degree();
  CompanionData out;
  out.f = f;
  out.companion = int_zero(d, d);
  for (long i = 0; i + 1 < d; ++i) out.companion(i, i + 1) = 1;
  for (long j = 0; j < d; ++j) out.companion(d - 1, j) = -f.coeff(j);
  out.ambient = kronecker(out.companion, int_identity(n));
  return out;
}

IntPolynomial characteristic_polynomial(const IntMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("characteristic_polynomial: not square");
  const Eigen::Index n = m.rows();
  // Faddeev-LeVerrier: p(T) = T^n - c_1 T^(n-1) - ... - c_n.
  std::vector<Int> cs;
  IntMat mk = m;
  for (Eigen::Index k = 1; k <= n; ++k) {
    Int tr = 0;
    for (Eigen::Index i = 0; i < n; ++i) tr += mk(i, i);
    if (tr % k != 0) throw std::logic_error("characteristic_polynomial: inexact division");
    Int ck = tr / k;
    cs.push_back(ck);
    if (k < n) {
      IntMat adj = mk;
      for (Eigen::Index i = 0; i < n; ++i) adj(i, i) -= ck;
      mk = m * adj;
    }
  }
  std::vector<Int> coeffs(static_cast<size_t>(n) + 1, Int(0));
  coeffs[static_cast<size_t>(n)] = 1;
  for (Eigen::Index k = 1; k <= n; ++k)
    coeffs[static_cast<size_t>(n - k)] = -cs[static_cast<size_t>(k - 1)];
  return IntPolynomial(std::move(coeffs));
}

TorsionSubscheme cartesian_power(const TorsionSubscheme& x, int d) {
  if (x.is_empty()) throw std::invalid_argument("cartesian_power: empty subscheme");
  const int n = x.ambient();
  std::vector<TorsionCoset> comps;
  std::vector<size_t> idx(static_cast<size_t>(d), 0);
  const size_t t = x.cosets().size();
  while (true) {
    // Block-diagonal lattice, concatenated shift.
    std::vector<RootOfUnity> shift;
    Eigen::Index total_rows = 0;
    for (int b = 0; b < d; ++b) total_rows += x.cosets()[idx[static_cast<size_t>(b)]].lattice.rows();
    IntMat lat = int_zero(total_rows, n * d);
    Eigen::Index row_base = 0;
    for (int b = 0; b < d; ++b) {
      const TorsionCoset& c = x.cosets()[idx[static_cast<size_t>(b)]];
      for (Eigen::Index i = 0; i < c.lattice.rows(); ++i)
        for (Eigen::Index j = 0; j < n; ++j) lat(row_base + i, b * n + j) = c.lattice(i, j);
      row_base += c.lattice.rows();
      for (const auto& s : c.shift.coords()) shift.push_back(s);
    }
    comps.push_back(TorsionCoset::make(n * d, lat, TorusPoint(std::move(shift))));
    int pos = 0;
    while (pos < d) {
      if (++idx[static_cast<size_t>(pos)] < t) break;
      idx[static_cast<size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == d) break;
  }
  return TorsionSubscheme(std::move(comps));
}

TorsionSubscheme invariant_core(const TorsionSubscheme& s, const IntMat& m,
                                int* preimage_steps, int* image_steps) {
  const int kMaxChain = 200;
  TorsionSubscheme w = s;
  int steps = 0;
  while (!w.is_empty()) {
    if (++steps > kMaxChain)
      throw std::logic_error("invariant_core: preimage chain failed to stabilize");
    TorsionSubscheme next = subscheme_intersect(s, monomial_preimage(m, w));
    if (next.set_equal(w)) break;
    w = next;
  }
  if (preimage_steps) *preimage_steps = steps;

  steps = 0;
  while (!w.is_empty()) {
    if (++steps > kMaxChain)
      throw std::logic_error("invariant_core: image chain failed to stabilize");
    TorsionSubscheme next = monomial_image(m, w);
    if (next.set_equal(w)) break;
    w = next;
  }
  if (image_steps) *image_steps = steps;
  return w;
}

TorsionCoreResult torsion_core(const TorsionSubscheme& x, const IntPolynomial& f) {
  if (x.is_empty()) throw std::invalid_argument("torsion_core: X must be nonempty");
  if (!f.is_monic() || f.degree() < 1)
    throw std::invalid_argument("torsion_core: F must be monic of degree >= 1");
  if (f.coeff(0) == 0)
    throw std::invalid_argument("torsion_core: F(0) must be nonzero (isogeny condition)");
  const int d = static_cast<int>(f.degree());
  CompanionData cd = CompanionData::make(f, x.ambient());
  TorsionCoreResult res;
  res.x_power = cartesian_power(x, d);
  res.z = invariant_core(res.x_power, cd.ambient, &res.preimage_chain_length,
                         &res.image_chain_length);
  if (!monomial_image(cd.ambient, res.z).set_equal(res.z))
    throw std::logic_error("torsion_core: M(Z) = Z postcondition failed");
  if (!res.x_power.contains_subscheme(res.z))
    throw std::logic_error("torsion_core: Z is not contained in X^d");
  return res;
}

}  // namespace tvlab
