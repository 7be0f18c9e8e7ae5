#include "tvlab/scan.hpp"

#include <json.hpp>
#include <algorithm>
#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tvlab/enumeration.hpp"

namespace tvlab {

using nlohmann::json;

TowerHandle TowerCache::get(const Int& p, const Int& m_prime, int k) {
  std::string key = p.get_str() + "|" + m_prime.get_str() + "|" + std::to_string(k);
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  TowerHandle h = tower_make(p, m_prime, k, precision_);
  cache_.emplace(key, h);
  return h;
}

TowerHandle tower_for_level(TowerCache& cache, const Int& p, const Int& level) {
  Int tame;
  unsigned long k = p_valuation(level, p, &tame);
  return cache.get(p, tame, static_cast<int>(k));
}

namespace {

Int variety_coeff_level(const Subvariety& x) {
  Int l = 1;
  for (const auto& g : x.generators)
    for (const auto& t : g) l = int_lcm(l, t.root.order());
  return l;
}

std::string distance_kind(const DistanceValue& d) {
  switch (d.kind()) {
    case DistanceValue::Kind::Member:
      return "member";
    case DistanceValue::Kind::BelowPrecision:
      return "below_precision";
    default:
      return "val";
  }
}

// Strictly closer than the current best (distance p^-v decreasing in v;
// below-precision sits below every finite distance).
bool closer(const DistanceValue& cand, const std::optional<DistanceValue>& best) {
  if (!best) return true;
  bool cb = cand.kind() == DistanceValue::Kind::BelowPrecision;
  bool bb = best->kind() == DistanceValue::Kind::BelowPrecision;
  if (cb) return !bb;
  if (bb) return false;
  return cand.valuation() > best->valuation();
}

struct ScanChunk {
  std::vector<ScanRow> rows;
  std::vector<TorusPoint> members;
  size_t below_precision = 0;
  std::optional<DistanceValue> min_nonmember;
  TorusPoint witness;
  size_t embeddings = 1;
};

ScanChunk scan_points(const Subvariety& x, const ScanOptions& opts, TowerCache& cache,
                      const std::vector<TorusPoint>& pts, size_t begin, size_t end) {
  ScanChunk chunk;
  Int coeff_level = variety_coeff_level(x);
  for (size_t idx = begin; idx < end; ++idx) {
    const TorusPoint& pt = pts[idx];
    Int order = pt.order();
    Int level = int_lcm(order, coeff_level);
    TowerHandle tower = tower_for_level(cache, opts.p, level);
    DistanceValue d = distance(pt, x, tower);
    if (!d.is_member() && opts.all_embeddings) {
      Int tame;
      unsigned long k = p_valuation(level, opts.p, &tame);
      auto group = local_galois_group(opts.p, static_cast<int>(k), tame);
      chunk.embeddings = std::max(chunk.embeddings, group.size());
      for (const auto& sigma : group) {
        DistanceValue twisted = distance(sigma.act(pt), galois_twist(sigma, x), tower);
        // Smaller valuation = larger distance; keep the most conservative.
        if (!twisted.is_member() &&
            (d.kind() == DistanceValue::Kind::BelowPrecision ||
             (twisted.kind() == DistanceValue::Kind::Valuation &&
              twisted.valuation() < d.valuation())))
          d = twisted;
      }
    }
    chunk.rows.push_back({pt, order, d});
    if (d.is_member()) {
      chunk.members.push_back(pt);
    } else {
      if (d.kind() == DistanceValue::Kind::BelowPrecision) ++chunk.below_precision;
      if (closer(d, chunk.min_nonmember)) {
        chunk.min_nonmember = d;
        chunk.witness = pt;
      }
    }
  }
  return chunk;
}

// Workers scan disjoint point ranges; chunks are merged in range order, so
// the report (including the witness, which is the first point attaining the
// minimum) does not depend on the worker count.
ScanReport scan_once(const Subvariety& x, const ScanOptions& opts, TowerCache& cache) {
  x.validate();
  ScanReport rep;
  rep.opts = opts;
  rep.ambient = x.n;
  EnumOptions eo;
  eo.p = opts.p;
  eo.max_p_level = opts.max_p_level;
  eo.max_tame_order = opts.max_tame_order;
  std::vector<TorusPoint> pts = torsion_points(x.n, opts.bound, eo);

  int workers = opts.workers > 0
                    ? opts.workers
                    : std::max(1, std::min(8, static_cast<int>(std::thread::hardware_concurrency())));
  int by_size = static_cast<int>(std::max<size_t>(pts.size() / 64, 1));
  workers = std::min(workers, by_size);
  std::vector<ScanChunk> chunks;
  if (workers <= 1) {
    chunks.push_back(scan_points(x, opts, cache, pts, 0, pts.size()));
  } else {
    std::vector<std::future<ScanChunk>> futures;
    size_t per = (pts.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      size_t begin = std::min(pts.size(), w * per);
      size_t end = std::min(pts.size(), begin + per);
      futures.push_back(std::async(std::launch::async, [&, begin, end] {
        return scan_points(x, opts, cache, pts, begin, end);
      }));
    }
    for (auto& f : futures) chunks.push_back(f.get());
  }

  for (const auto& chunk : chunks) {
    for (const auto& row : chunk.rows) {
      rep.rows.push_back(row);
      ++rep.scanned;
      ++rep.histogram[row.order][row.d.kind() == DistanceValue::Kind::Valuation
                                     ? row.d.valuation().get_num().get_str() + "/" +
                                           row.d.valuation().get_den().get_str()
                                     : distance_kind(row.d)];
    }
    rep.members.insert(rep.members.end(), chunk.members.begin(), chunk.members.end());
    rep.below_precision_count += chunk.below_precision;
    rep.embeddings = std::max(rep.embeddings, chunk.embeddings);
    if (chunk.min_nonmember && closer(*chunk.min_nonmember, rep.min_nonmember)) {
      rep.min_nonmember = chunk.min_nonmember;
      rep.witness = chunk.witness;
    }
  }
  return rep;
}

}  // namespace

ScanReport scan_gap(const Subvariety& x, const ScanOptions& opts) {
  if (opts.bound < 1) throw std::invalid_argument("scan_gap: bound must be >= 1");
  TowerCache cache(opts.precision);
  ScanReport rep = scan_once(x, opts, cache);
  if (opts.check_stability && opts.bound >= 2) {
    ScanOptions half = opts;
    half.bound = opts.bound / 2;
    half.check_stability = false;
    ScanReport hrep = scan_once(x, half, cache);
    if (hrep.min_nonmember) rep.half_bound_min = hrep.min_nonmember;
    rep.stable = rep.min_nonmember && hrep.min_nonmember &&
                 *rep.min_nonmember == *hrep.min_nonmember;
  }
  return rep;
}

std::string ScanReport::to_csv() const {
  std::ostringstream os;
  os << "order,point,distance_kind,val_num,val_den\n";
  for (const auto& row : rows) {
    os << row.order.get_str() << ",\"" << row.point.to_string() << "\","
       << distance_kind(row.d) << ",";
    if (row.d.kind() == DistanceValue::Kind::Valuation)
      os << row.d.valuation().get_num().get_str() << ","
         << row.d.valuation().get_den().get_str();
    else
      os << ",";
    os << "\n";
  }
  return os.str();
}

std::string ScanReport::to_json() const {
  json j;
  j["prime"] = opts.p.get_str();
  j["bound"] = opts.bound.get_str();
  j["precision"] = opts.precision;
  j["ambient"] = ambient;
  j["scanned"] = scanned;
  j["rows"] = rows.size();
  j["members"] = json::array();
  for (const auto& m : members) j["members"].push_back(m.to_string());
  j["member_count"] = members.size();
  j["below_precision"] = below_precision_count;
  j["embeddings"] = embeddings;
  if (min_nonmember) {
    j["min_nonmember"] = json::object();
    j["min_nonmember"]["kind"] = distance_kind(*min_nonmember);
    if (min_nonmember->kind() == DistanceValue::Kind::Valuation) {
      j["min_nonmember"]["val_num"] = min_nonmember->valuation().get_num().get_str();
      j["min_nonmember"]["val_den"] = min_nonmember->valuation().get_den().get_str();
    }
    j["min_nonmember"]["witness"] = witness.to_string();
  }
  if (half_bound_min) {
    j["stability"] = json::object();
    j["stability"]["half_bound_kind"] = distance_kind(*half_bound_min);
    if (half_bound_min->kind() == DistanceValue::Kind::Valuation) {
      j["stability"]["half_val_num"] = half_bound_min->valuation().get_num().get_str();
      j["stability"]["half_val_den"] = half_bound_min->valuation().get_den().get_str();
    }
    j["stability"]["stable"] = stable;
  }
  j["histogram"] = json::object();
  for (const auto& [order, hist] : histogram) {
    json h = json::object();
    for (const auto& [key, count] : hist) h[key] = count;
    j["histogram"][order.get_str()] = h;
  }
  return j.dump(2);
}

std::vector<HabeggerRow> habegger_table(const Int& p, int n_max, int precision) {
  if (!is_prime(p) || p == 2) throw std::invalid_argument("habegger_table: p must be an odd prime");
  if (n_max < 1 || n_max > 8) throw std::invalid_argument("habegger_table: n_max out of range");
  std::vector<HabeggerRow> out;
  TowerHandle tower = tower_make(p, 1, 0, precision);
  for (int n = 1; n <= n_max; ++n) {
    HabeggerRow row;
    row.n = n;
    row.exponent = (p - 1) * int_pow(p, static_cast<unsigned long>(n - 1));
    // Exact integer route.
    Int value = int_pow(Int(2), static_cast<unsigned long>(to_long(row.exponent))) - 1;
    row.v_integer = Int(p_valuation(value, p));
    // Tower route at working precision.
    Int reduced = mod_pow(2, row.exponent, tower->pN) - 1;
    TowerElement z = TowerElement::from_integer(tower, reduced);
    ValuationResult v = valuation(z);
    if (!v.is_finite()) throw std::logic_error("habegger_table: value vanished at precision");
    if (v.value().get_den() != 1) throw std::logic_error("habegger_table: non-integral valuation");
    row.v_tower = v.value().get_num();
    row.ok = row.v_integer == row.v_tower && row.v_integer >= n;
    out.push_back(row);
  }
  return out;
}

}  // namespace tvlab
