#pragma once

#include <map>
#include <string>
#include <vector>

#include "kgb/pc_group.hpp"

namespace kgb {

using Params = std::map<std::string, long long>;

struct CatalogEntry {
  std::string name;
  std::vector<std::string> params;
  std::string range;        // human-readable admissible parameter range
  std::string description;  // defining relations
};

/// Every family the catalog can build.
const std::vector<CatalogEntry>& catalog_entries();

/// Builds the named family at the given parameters. Throws
/// Error(kUnknownGroup) for unknown names and Error(kParameterOutOfRange)
/// when parameters fall outside the family's range.
///
/// Families: C(p,n), D(n), Q(n), SD(n), M(p,n), G1(p,m), H(p,m,r), G7(p,m),
/// G11odd, G2(m), G3(m), G4(m), G5(m), G11(m), G12(m), G13(m), G14(m),
/// G15(m), G16(m), G17(m), G18(m), G22(m), G23(m), G24(m), G25(m),
/// miech(p,m1,m2,m3,R,r,S,s).
PcPresentation catalog(const std::string& name, const Params& params = {});

/// Parses a group spec: a catalog name (parameters from `params`), a short
/// name such as "C4", "D8", "Q8", "SD16", "M16", or an 'x'-separated direct
/// product of short names such as "Q8xC2".
PcPresentation parse_group_spec(const std::string& spec, const Params& params = {});

}  // namespace kgb
