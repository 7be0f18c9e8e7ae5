#pragma once

#include <functional>
#include <vector>

#include "tvlab/root_of_unity.hpp"

namespace tvlab {

enum class TorsionFilter { All, Tame, PPrimary, Mixed };

TorsionFilter parse_torsion_filter(const std::string& name);

/// All reduced fractions c/m with m <= bound, sorted by (m, c); starts 0/1.
std::vector<RootOfUnity> roots_up_to_order(const Int& bound);

struct EnumOptions {
  Int p = 0;             // needed for Tame / PPrimary / Mixed and the caps
  TorsionFilter filter = TorsionFilter::All;
  Int max_p_level = -1;     // cap on k in order = p^k * m' (-1: no cap)
  Int max_tame_order = -1;  // cap on m' (-1: no cap)
};

/// Visits every torsion point of G_m^n of order <= bound exactly once, in a
/// fixed deterministic order. Filters classify by the order of the point:
/// Tame = prime-to-p order, PPrimary = p-power order, Mixed = both parts.
void for_each_torsion_point(int n, const Int& bound, const EnumOptions& opts,
                            const std::function<void(const TorusPoint&)>& fn);

std::vector<TorusPoint> torsion_points(int n, const Int& bound, const EnumOptions& opts);

}  // namespace tvlab
