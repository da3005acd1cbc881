#pragma once

#include "halo/halo_ring.hpp"
#include "halo/isometry.hpp"
#include "halo/lattice.hpp"
#include "halo/tensor.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace halo {

using Json = nlohmann::ordered_json;

// Rationals serialize as "num/den" strings; PowerValue as
// {"base": "r", "exp": "t"} or {"lo": "a", "hi": "b"}.
Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);

Json power_to_json(const PowerValue& v);
// Accepts "num/den" strings, {"base","exp"} and {"lo","hi"} objects.
PowerValue power_from_json(const Json& j);

Json matrix_to_json(const RatMatrix& m);
RatMatrix matrix_from_json(const Json& j);

std::vector<Rat> vector_from_json(const Json& j);
Json vector_to_json(const std::vector<Rat>& v);

// {"ring":"Z","norm":"arch","power":"2","flavor":"short","p":"1/2"}
// plus "prime" for p-adic norms and "C"/"D" for the Lipschitz flavor.
HaloDescriptor halo_from_json(const Json& j);
Json halo_to_json(const HaloDescriptor& h);

// Built-in named configs: "Z", "Z^2", "Z0", "Q", "Qp:<prime>".
HaloDescriptor halo_from_name(const std::string& name);

// {"base": {halo...}, "rank": 2, "q": "2"}
NormedLattice lattice_from_json(const Json& j);

Json bounds_to_json(const BoundsInfo& b);
Json membership_to_json(const MembershipCertificate& c);
Json tree_to_json(const TreeDecomposition& t, const std::vector<PowerValue>& leaf_norms);
Json pair_to_json(const MatrixPair& p);
MatrixPair pair_from_json(const Json& j);

}  // namespace halo
