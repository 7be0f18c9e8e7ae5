#pragma once

#include "tvlab/cyclotomic.hpp"
#include "tvlab/finite_field.hpp"

namespace tvlab {

/// Independent valuation route used only for cross-checks: the valuation of
/// a nonzero z in Z[zeta_m] at the prime selected by the embedding is the
/// largest n with z in P^n, where P = (p, zeta_{p^k} - 1, H(zeta_{m'})) and
/// H is the minimal polynomial of the chosen residue generator. Powers of P
/// are built as integer lattices on the power basis of Z[zeta_m] and
/// membership is a Hermite-form solve - no tower arithmetic is involved.
/// Returns the valuation in v_p units (the P-exponent divided by e).
Rat ideal_power_valuation(const CyclotomicInt& z, const Int& p,
                          const FqElem& residue_generator, long max_pi_power = 256);

}  // namespace tvlab
