#pragma once

#include <string>

#include "json.hpp"
#include "splitkit/splitting.hpp"

namespace splitkit {

using Json = nlohmann::json;

// Presentation files: {generators, strategy, relators?, table?, kb?,
// subgroups?}. Unknown keys are rejected.
GroupPtr load_presentation(const Json& j);
GroupPtr load_presentation_file(const std::string& path);

// Subgroup spec relative to a loaded presentation:
// {membership: trivial | cyclic-powers | finite-enumeration,
//  generator? , elements?}
SubgroupPtr load_subgroup(GroupPtr g, const Json& j);

// Splitting files: {kind: amalgam|hnn|slope, group?, ...,
//  conjugate-by?, automorphism?}. Slope splittings imply the standard
// punctured-torus group.
SplittingPtr load_splitting(const Json& j);
SplittingPtr load_splitting_file(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace splitkit
