#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tvlab/local_field.hpp"
#include "tvlab/subvariety.hpp"

namespace tvlab {

/// Shared tower store keyed by (p, m', k); specs are immutable so handing
/// out shared handles across threads is safe.
class TowerCache {
 public:
  explicit TowerCache(int precision) : precision_(precision) {}
  TowerHandle get(const Int& p, const Int& m_prime, int k);
  int precision() const { return precision_; }

 private:
  int precision_;
  std::map<std::string, TowerHandle> cache_;
  std::mutex mu_;
};

/// Tower that accommodates a point of the given order (level = order joined
/// with the coefficient levels of the variety).
TowerHandle tower_for_level(TowerCache& cache, const Int& p, const Int& level);

struct ScanOptions {
  Int p;
  Int bound;
  int precision = 40;
  Int max_p_level = -1;
  Int max_tame_order = -1;
  bool all_embeddings = false;
  bool check_stability = true;  // rerun at bound/2 and compare minima
  int workers = 0;              // 0: pick from hardware_concurrency
};

struct ScanRow {
  TorusPoint point;
  Int order;
  DistanceValue d;
};

struct ScanReport {
  ScanOptions opts;
  int ambient = 0;
  size_t scanned = 0;
  std::vector<TorusPoint> members;
  size_t below_precision_count = 0;
  std::optional<DistanceValue> min_nonmember;
  TorusPoint witness;
  // order -> (distance string -> count)
  std::map<Int, std::map<std::string, size_t>> histogram;
  std::vector<ScanRow> rows;
  std::optional<DistanceValue> half_bound_min;
  bool stable = false;
  size_t embeddings = 1;

  std::string to_csv() const;
  std::string to_json() const;
};

/// Exhaustive membership partition and distance scan over the torsion points
/// of order <= bound. Membership is symbolic; distances use the fixed
/// embedding (or the minimum over all embeddings when requested).
ScanReport scan_gap(const Subvariety& x, const ScanOptions& opts);

/// v_p(2^((p-1) p^(n-1)) - 1) computed by exact integer arithmetic and
/// independently inside the unramified tower; both must be >= n.
struct HabeggerRow {
  int n;
  Int exponent;
  Int v_integer;
  Int v_tower;
  bool ok;
};
std::vector<HabeggerRow> habegger_table(const Int& p, int n_max, int precision);

}  // namespace tvlab
