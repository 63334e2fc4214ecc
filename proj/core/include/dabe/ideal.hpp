#pragma once

// Secure two-party computation modeled as a trusted functionality: parties
// hand over named private scalars, designated parties receive the prescribed
// outputs, and nothing else is revealed or logged.

#include <cstdint>
#include <map>
#include <string>

#include "dabe/group.hpp"
#include "dabe/transcript.hpp"

namespace dabe {

enum class IdealKind {
  HURI,     // KGC{alpha}, AA{r, beta}          -> KGC{x = (alpha + r) beta}
  HURII,    // Ai{alpha}, CA{gamma, beta}       -> Ai{x = (alpha_i + gamma_i) beta}
  WANG,     // KA{alpha1, beta}, CSP{alpha2}    -> CSP{x = (alpha1 + alpha2) beta}
  LIN1,     // CS{alpha}, KA{q, tau}            -> CS{x = (alpha / q + tau) / q}
  LIN2,     // CS{r1, pi1}, KA{r2, pi2}         -> DU{CPK3 = (r1 + r2) / (pi1 pi2)}, CS{y}, KA{y},
            //                                     y = (r1 + r2) pi1 pi2
  SECURED,  // KGC{alpha1, beta}, AA{alpha2, r} -> KGC{x = (alpha1 + alpha2 + r) / beta}
};

struct IdealSpec {
  IdealKind kind;
  /// Authority number for HURII.
  std::uint32_t index = 0;

  /// "HURI", "HURII_2", ...
  std::string name() const;
};

using PartyScalars = std::map<PartyId, std::map<std::string, Scalar>>;

/// Throws MissingInput when a required input is absent, DivisionByZero when a
/// divisor is zero.
PartyScalars ideal_two_party(const IdealSpec& spec, const PartyScalars& inputs);

}  // namespace dabe
