#include "tvlab/enumeration.hpp"

#include <stdexcept>

namespace tvlab {

TorsionFilter parse_torsion_filter(const std::string& name) {
  if (name == "all") return TorsionFilter::All;
  if (name == "unramified" || name == "tame") return TorsionFilter::Tame;
  if (name == "p-primary") return TorsionFilter::PPrimary;
  if (name == "mixed") return TorsionFilter::Mixed;
  throw std::invalid_argument("unknown torsion filter: " + name);
}

std::vector<RootOfUnity> roots_up_to_order(const Int& bound) {
  std::vector<RootOfUnity> out;
  for (Int m = 1; m <= bound; ++m)
    for (Int c = 0; c < m; ++c)
      if (int_gcd(c, m) == 1) out.emplace_back(c, m);
  return out;
}

namespace {

bool order_admissible(const Int& order, const EnumOptions& o) {
  Int tame = order;
  unsigned long k = 0;
  if (o.p > 1) k = p_valuation(order, o.p, &tame);
  if (o.max_p_level >= 0 && Int(k) > o.max_p_level) return false;
  if (o.max_tame_order >= 0 && o.p > 1 && tame > o.max_tame_order) return false;
  switch (o.filter) {
    case TorsionFilter::All:
      return true;
    case TorsionFilter::Tame:
      return k == 0;
    case TorsionFilter::PPrimary:
      return tame == 1;
    case TorsionFilter::Mixed:
      return k > 0 && tame > 1;
  }
  return true;
}

void recurse(int n, const Int& bound, const EnumOptions& opts,
             const std::vector<RootOfUnity>& roots, std::vector<RootOfUnity>& acc,
             const Int& lcm_so_far, const std::function<void(const TorusPoint&)>& fn) {
  if (static_cast<int>(acc.size()) == n) {
    if (order_admissible(lcm_so_far, opts)) fn(TorusPoint(acc));
    return;
  }
  for (const auto& r : roots) {
    Int l = int_lcm(lcm_so_far, r.order());
    if (l > bound) continue;
    acc.push_back(r);
    recurse(n, bound, opts, roots, acc, l, fn);
    acc.pop_back();
  }
}

}  // namespace

void for_each_torsion_point(int n, const Int& bound, const EnumOptions& opts,
                            const std::function<void(const TorusPoint&)>& fn) {
  if (n < 1 || bound < 1) throw std::invalid_argument("for_each_torsion_point: bad arguments");
  if ((opts.filter != TorsionFilter::All || opts.max_p_level >= 0 ||
       opts.max_tame_order >= 0) &&
      opts.p <= 1)
    throw std::invalid_argument("for_each_torsion_point: filter requires a prime");
  std::vector<RootOfUnity> roots = roots_up_to_order(bound);
  std::vector<RootOfUnity> acc;
  recurse(n, bound, opts, roots, acc, 1, fn);
}

std::vector<TorusPoint> torsion_points(int n, const Int& bound, const EnumOptions& opts) {
  std::vector<TorusPoint> out;
  for_each_torsion_point(n, bound, opts, [&](const TorusPoint& pt) { out.push_back(pt); });
  return out;
}

}  // namespace tvlab
