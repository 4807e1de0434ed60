#pragma once

#include "wigmaj/cli/json.hpp"
#include "wigmaj/majorization.hpp"
#include "wigmaj/proof_suite.hpp"

namespace wigmaj::cli {

inline constexpr const char* kProofSchemaVersion = "1.0";

nlohmann::ordered_json to_json(const ProofReport& report);
nlohmann::ordered_json to_json(const MajorizationVerdict& verdict);

}  // namespace wigmaj::cli
