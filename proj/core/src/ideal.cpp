#include "dabe/ideal.hpp"

namespace dabe {

std::string IdealSpec::name() const {
  switch (kind) {
    case IdealKind::HURI: return "HURI";
    case IdealKind::HURII: return "HURII_" + std::to_string(index);
    case IdealKind::WANG: return "WANG";
    case IdealKind::LIN1: return "LIN1";
    case IdealKind::LIN2: return "LIN2";
    case IdealKind::SECURED: return "SECURED";
  }
  return "?";
}

namespace {

const Scalar& input(const PartyScalars& inputs, const PartyId& party, const std::string& name) {
  auto p = inputs.find(party);
  if (p != inputs.end()) {
    auto v = p->second.find(name);
    if (v != p->second.end()) return v->second;
  }
  throw Error(Errc::MissingInput, "ideal functionality lacks input '" + name + "' from " + party.label());
}

Scalar invert(const Scalar& s, const char* what) {
  if (s.is_zero()) throw Error(Errc::DivisionByZero, std::string("ideal functionality divisor ") + what + " is zero");
  return s.inv();
}

}  // namespace

PartyScalars ideal_two_party(const IdealSpec& spec, const PartyScalars& in) {
  switch (spec.kind) {
    case IdealKind::HURI: {
      const Scalar x = (input(in, kKGC, "alpha") + input(in, kAA, "r")) * input(in, kAA, "beta");
      return {{kKGC, {{"x", x}}}};
    }
    case IdealKind::HURII: {
      const PartyId ai = authority(spec.index);
      const Scalar x = (input(in, ai, "alpha") + input(in, kCA, "gamma")) * input(in, kCA, "beta");
      return {{ai, {{"x", x}}}};
    }
    case IdealKind::WANG: {
      const Scalar x = (input(in, kKA, "alpha1") + input(in, kCSP, "alpha2")) * input(in, kKA, "beta");
      return {{kCSP, {{"x", x}}}};
    }
    case IdealKind::LIN1: {
      const Scalar q_inv = invert(input(in, kKA, "q"), "q");
      const Scalar x = (input(in, kCS, "alpha") * q_inv + input(in, kKA, "tau")) * q_inv;
      return {{kCS, {{"x", x}}}};
    }
    case IdealKind::LIN2: {
      const Scalar sum = input(in, kCS, "r1") + input(in, kKA, "r2");
      const Scalar prod = input(in, kCS, "pi1") * input(in, kKA, "pi2");
      const Scalar cpk3 = sum * invert(prod, "pi1*pi2");
      const Scalar y = sum * prod;
      return {{kDU, {{"CPK3", cpk3}}}, {kCS, {{"y", y}}}, {kKA, {{"y", y}}}};
    }
    case IdealKind::SECURED: {
      const Scalar x = (input(in, kKGC, "alpha1") + input(in, kAA, "alpha2") + input(in, kAA, "r")) *
                       invert(input(in, kKGC, "beta"), "beta");
      return {{kKGC, {{"x", x}}}};
    }
  }
  throw Error(Errc::MissingInput, "unknown ideal functionality");
}

}  // namespace dabe
