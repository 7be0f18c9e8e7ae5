#include "tvlab/subvariety.hpp"

#include <json.hpp>
#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "tvlab/enumeration.hpp"

namespace tvlab {

using nlohmann::json;

void Subvariety::validate() const {
  if (n < 1) throw std::invalid_argument("Subvariety: ambient dimension must be >= 1");
  if (generators.empty()) throw std::invalid_argument("Subvariety: no generators");
  for (const auto& g : generators) {
    if (g.empty()) throw std::invalid_argument("Subvariety: empty generator");
    for (const auto& t : g)
      if (t.exps.size() != n)
        throw std::invalid_argument("Subvariety: exponent vector of wrong length");
  }
}

Subvariety Subvariety::from_json_text(const std::string& text) {
  json j = json::parse(text);
  Subvariety x;
  x.n = j.at("n").get<int>();
  for (const auto& gen : j.at("generators")) {
    LaurentGenerator g;
    for (const auto& term : gen) {
      LaurentTerm t;
      const auto& exps = term.at("exps");
      t.exps = IntVec(exps.size());
      for (size_t i = 0; i < exps.size(); ++i) t.exps(static_cast<Eigen::Index>(i)) = Int(exps[i].get<long>());
      const auto& coeff = term.at("coeff");
      t.scale = coeff.contains("scale") ? Int(coeff.at("scale").get<long>()) : Int(1);
      if (coeff.contains("root")) t.root = RootOfUnity::parse(coeff.at("root").get<std::string>());
      g.push_back(std::move(t));
    }
    x.generators.push_back(std::move(g));
  }
  x.validate();
  return x;
}

std::string Subvariety::to_json_text() const {
  json j;
  j["n"] = n;
  j["generators"] = json::array();
  for (const auto& g : generators) {
    json gen = json::array();
    for (const auto& t : g) {
      json term;
      term["exps"] = json::array();
      for (Eigen::Index i = 0; i < t.exps.size(); ++i)
        term["exps"].push_back(to_long(t.exps(i)));
      term["coeff"] = json::object();
      term["coeff"]["scale"] = to_long(t.scale);
      if (!t.root.is_one()) term["coeff"]["root"] = t.root.to_string();
      gen.push_back(term);
    }
    j["generators"].push_back(gen);
  }
  return j.dump();
}

const Rat& DistanceValue::valuation() const {
  if (kind_ != Kind::Valuation)
    throw std::domain_error("DistanceValue: no finite valuation");
  return val_;
}

bool DistanceValue::operator==(const DistanceValue& o) const {
  if (kind_ != o.kind_) return false;
  return kind_ != Kind::Valuation || val_ == o.val_;
}

std::string DistanceValue::to_string() const {
  switch (kind_) {
    case Kind::Member:
      return "member";
    case Kind::BelowPrecision:
      return "below_precision";
    default:
      return "p^-(" + val_.get_num().get_str() + "/" + val_.get_den().get_str() + ")";
  }
}

DistanceValue DistanceValue::combine_intersection(const DistanceValue& a,
                                                  const DistanceValue& b) {
  if (a.kind_ == Kind::Member) return b;
  if (b.kind_ == Kind::Member) return a;
  if (a.kind_ == Kind::BelowPrecision) return b;
  if (b.kind_ == Kind::BelowPrecision) return a;
  return a.val_ <= b.val_ ? a : b;
}

namespace {

RootOfUnity term_exponent(const LaurentTerm& t, const TorusPoint& p) {
  RootOfUnity s = t.root;
  for (Eigen::Index i = 0; i < t.exps.size(); ++i)
    s = s + p[static_cast<int>(i)].times(t.exps(i));
  return s;
}

}  // namespace

CyclotomicInt evaluate_exact(const LaurentGenerator& g, const TorusPoint& p) {
  Int level = 1;
  std::vector<RootOfUnity> exps;
  exps.reserve(g.size());
  for (const auto& t : g) {
    exps.push_back(term_exponent(t, p));
    level = int_lcm(level, exps.back().order());
  }
  CyclotomicInt acc(to_long(level));
  for (size_t i = 0; i < g.size(); ++i)
    acc = acc + CyclotomicInt::from_root(to_long(level), exps[i]) * g[i].scale;
  return acc;
}

namespace {

TowerElement evaluate_tower(const LaurentGenerator& g, const TorusPoint& p,
                            const TowerHandle& tower) {
  TowerElement acc = TowerElement::zero(tower);
  for (const auto& t : g) {
    TowerElement term = embed_root(tower, term_exponent(t, p));
    if (t.scale != 1) term = term * TowerElement::from_integer(tower, t.scale);
    acc = acc + term;
  }
  return acc;
}

}  // namespace

DistanceValue distance(const TorusPoint& p, const Subvariety& x, const TowerHandle& tower) {
  x.validate();
  if (p.dim() != x.n) throw std::invalid_argument("distance: dimension mismatch");
  bool all_zero = true;
  std::vector<bool> exact_zero(x.generators.size());
  for (size_t i = 0; i < x.generators.size(); ++i) {
    exact_zero[i] = evaluate_exact(x.generators[i], p).is_zero();
    all_zero = all_zero && exact_zero[i];
  }
  if (all_zero) return DistanceValue::member();
  bool any_finite = false;
  Rat best;
  bool saw_below = false;
  for (size_t i = 0; i < x.generators.size(); ++i) {
    if (exact_zero[i]) continue;  // contributes |0| = 0, never the max
    ValuationResult v = valuation(evaluate_tower(x.generators[i], p, tower));
    if (!v.is_finite()) {
      saw_below = true;
      continue;
    }
    if (!any_finite || v.value() < best) {
      best = v.value();
      any_finite = true;
    }
  }
  if (!any_finite) {
    if (saw_below) return DistanceValue::below_precision();
    throw std::logic_error("distance: inconsistent evaluation state");
  }
  return DistanceValue::from_valuation(best);
}

Subvariety intersect(const Subvariety& x, const Subvariety& y) {
  if (x.n != y.n) throw std::invalid_argument("intersect: ambient mismatch");
  Subvariety out = x;
  out.generators.insert(out.generators.end(), y.generators.begin(), y.generators.end());
  return out;
}

Subvariety translate(const Subvariety& x, const TorusPoint& q) {
  if (q.dim() != x.n) throw std::invalid_argument("translate: dimension mismatch");
  Subvariety out = x;
  for (auto& g : out.generators)
    for (auto& t : g) {
      RootOfUnity twist;
      for (Eigen::Index i = 0; i < t.exps.size(); ++i)
        twist = twist + q[static_cast<int>(i)].times(t.exps(i));
      t.root = t.root - twist;
    }
  return out;
}

Subvariety pullback(const IntMat& b, const Subvariety& y) {
  if (b.rows() != y.n) throw std::invalid_argument("pullback: matrix rows must match ambient");
  Subvariety out;
  out.n = static_cast<int>(b.cols());
  out.generators = y.generators;
  for (auto& g : out.generators)
    for (auto& t : g) {
      IntVec nexps(b.cols());
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        Int acc = 0;
        for (Eigen::Index i = 0; i < b.rows(); ++i) acc += t.exps(i) * b(i, j);
        nexps(j) = acc;
      }
      t.exps = nexps;
    }
  return out;
}

Subvariety galois_twist(const GaloisElement& g, const Subvariety& x) {
  Subvariety out = x;
  for (auto& gen : out.generators)
    for (auto& t : gen) t.root = g.act(t.root);
  return out;
}

LawCheck distance_intersection_law(const TorusPoint& p, const Subvariety& x,
                                   const Subvariety& y, const TowerHandle& tower) {
  DistanceValue dx = distance(p, x, tower);
  DistanceValue dy = distance(p, y, tower);
  return {distance(p, intersect(x, y), tower), DistanceValue::combine_intersection(dx, dy)};
}

LawCheck pullback_distance(const IntMat& b, const Subvariety& y, const TorusPoint& p,
                           const TowerHandle& tower) {
  return {distance(p, pullback(b, y), tower), distance(p.apply_matrix(b), y, tower)};
}

LawCheck galois_distance_invariance(const GaloisElement& sigma, const TorusPoint& p,
                                    const Subvariety& x, const TowerHandle& tower) {
  for (const auto& g : x.generators)
    for (const auto& t : g)
      if (!t.root.is_one())
        throw std::invalid_argument(
            "galois_distance_invariance: X must have rational coefficients");
  return {distance(sigma.act(p), x, tower), distance(p, x, tower)};
}

LawCheck translation_law(const TorusPoint& p, const TorusPoint& q, const Subvariety& x,
                         const TowerHandle& tower) {
  return {distance(p - q, x, tower), distance(p, translate(x, q), tower)};
}

std::optional<Rat> root_unity_valuation(const RootOfUnity& s, const Int& p) {
  if (s.is_one()) return std::nullopt;
  Int tame;
  unsigned long k = p_valuation(s.order(), p, &tame);
  if (tame != 1) return Rat(0);
  Rat v(Int(1), euler_phi(int_pow(p, k)));
  v.canonicalize();
  return v;
}

DistanceValue distance_to_identity(const TorusPoint& p, const Int& prime) {
  bool any = false;
  Rat best;
  for (const auto& s : p.coords()) {
    std::optional<Rat> v = root_unity_valuation(s, prime);
    if (!v) continue;  // coordinate equals 1 exactly
    if (!any || *v < best) {
      best = *v;
      any = true;
    }
  }
  if (!any) return DistanceValue::member();
  return DistanceValue::from_valuation(best);
}

namespace {

// Pairwise scan specialized to G_m with small orders: the difference of two
// reduced fractions and its valuation fit comfortably in machine words, so
// the quadratic pair loop stays exact without big-integer traffic.
MattuckGapReport mattuck_gap_line(const Int& p, const Int& bound) {
  MattuckGapReport rep;
  rep.p = p;
  rep.n = 1;
  rep.bound = bound;
  const long pl = to_long(p);
  std::vector<std::pair<long, long>> fracs;  // (num, den), reduced
  for (long m = 1; m <= to_long(bound); ++m)
    for (long c = 0; c < m; ++c)
      if (std::gcd(c, m) == 1) fracs.emplace_back(c, m);
  rep.points = fracs.size();
  // Valuations take the form 1/phi(p^k); key the histogram by phi, with 0
  // standing for valuation 0 (tame difference).
  std::map<long, size_t> hist;
  long best_phi = -1;  // -1: none yet; 0: valuation 0; else phi(p^k)
  size_t best_i = 0, best_j = 0;
  const size_t count = fracs.size();
  for (size_t i = 0; i < count; ++i) {
    const auto [n1, d1] = fracs[i];
    for (size_t j = i + 1; j < count; ++j) {
      const auto [n2, d2] = fracs[j];
      long m = d1 / std::gcd(d1, d2) * d2;
      long num = (n1 * (m / d1) - n2 * (m / d2)) % m;
      if (num < 0) num += m;
      long den = m / std::gcd(num, m);
      long phi = 0;  // sentinel: tame part nontrivial, valuation 0
      long tame = den, pk = 1;
      while (tame % pl == 0) {
        tame /= pl;
        pk *= pl;
      }
      if (tame == 1) phi = pk / pl * (pl - 1);  // phi(p^k), den = p^k > 1
      ++rep.pairs;
      ++hist[phi];
      if (phi > 0) ++rep.kernel_pairs;
      bool improves = best_phi < 0 || (phi > 0 && (best_phi == 0 || phi < best_phi));
      if (improves) {
        best_phi = phi;
        best_i = i;
        best_j = j;
      }
    }
  }
  if (best_phi < 0) throw std::invalid_argument("mattuck_gap: no pairs under the bound");
  auto to_point = [](const std::pair<long, long>& f) {
    return TorusPoint(std::vector<RootOfUnity>{RootOfUnity(f.first, f.second)});
  };
  rep.witness_a = to_point(fracs[best_i]);
  rep.witness_b = to_point(fracs[best_j]);
  Rat best = best_phi == 0 ? Rat(0) : Rat(Int(1), Int(best_phi));
  best.canonicalize();
  rep.min_distance = DistanceValue::from_valuation(best);
  for (const auto& [phi, cnt] : hist) {
    Rat v = phi == 0 ? Rat(0) : Rat(Int(1), Int(phi));
    v.canonicalize();
    rep.valuation_histogram.emplace_back(v, cnt);
  }
  std::sort(rep.valuation_histogram.begin(), rep.valuation_histogram.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return rep;
}

}  // namespace

MattuckGapReport mattuck_gap(const Int& p, int n, const Int& bound) {
  if (bound < 2) throw std::invalid_argument("mattuck_gap: bound must be >= 2");
  if (n == 1 && bound <= 2000) return mattuck_gap_line(p, bound);
  MattuckGapReport rep;
  rep.p = p;
  rep.n = n;
  rep.bound = bound;
  std::vector<TorusPoint> pts = torsion_points(n, bound, {});
  rep.points = pts.size();
  std::map<Rat, size_t> hist;
  bool any = false;
  Rat best(-1);
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) {
      DistanceValue d = distance_to_identity(pts[i] - pts[j], p);
      const Rat& v = d.valuation();  // pairs are distinct, so never Member
      ++rep.pairs;
      ++hist[v];
      if (v > 0) ++rep.kernel_pairs;
      if (!any || v > best) {
        best = v;
        rep.witness_a = pts[i];
        rep.witness_b = pts[j];
        any = true;
      }
    }
  if (!any) throw std::invalid_argument("mattuck_gap: no pairs under the bound");
  rep.min_distance = DistanceValue::from_valuation(best);
  rep.valuation_histogram.assign(hist.begin(), hist.end());
  return rep;
}

}  // namespace tvlab
